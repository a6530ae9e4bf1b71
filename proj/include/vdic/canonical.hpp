/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <json.hpp>

#include "vdic/bytes.hpp"

namespace vdic {

using Json = nlohmann::json;

/// Canonical JSON: UTF-8, object keys sorted by code point, no insignificant
/// whitespace. Numbers must be integers; binary payloads travel as base64
/// strings. Throws Errc::invalid_argument on floating-point numbers and
/// Errc::malformed on non-serializable values.
Bytes canonicalize(const Json& value);

std::string canonicalize_to_string(const Json& value);

/// Strict parse used for everything signed. Throws Errc::malformed.
Json parse_json(BytesView bytes);
Json parse_json(std::string_view text);

}  // namespace vdic
