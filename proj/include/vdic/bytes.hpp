/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vdic {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string to_string(BytesView b) {
  return std::string(b.begin(), b.end());
}

std::string to_hex(BytesView data);

/// Strict decoder: lowercase hex only, even length. Throws Errc::malformed.
Bytes from_hex(std::string_view hex);

std::string to_base64(BytesView data);

/// Strict decoder: standard alphabet, padded, canonical encoding only
/// (re-encoding the result must reproduce the input). Throws Errc::malformed.
Bytes from_base64(std::string_view b64);

std::string to_base64url(BytesView data);

/// Strict decoder: URL-safe alphabet, unpadded, canonical encoding only.
Bytes from_base64url(std::string_view b64);

std::string to_base58(BytesView data);

/// Strict decoder: Bitcoin alphabet. Throws Errc::malformed on foreign chars.
Bytes from_base58(std::string_view b58);

}  // namespace vdic
