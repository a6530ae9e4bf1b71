/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>

#include "vdic/bytes.hpp"
#include "vdic/canonical.hpp"
#include "vdic/crypto.hpp"

// Independent reference implementations used only to cross-check the
// library: OpenSSL for Ed25519 and SHA-256, GMP for base58, and a from-
// scratch canonical JSON writer. None of them share code with vdic_core.
namespace vdic::testing {

Key32 oracle_ed25519_public(const Key32& seed);
Signature oracle_ed25519_sign(const Key32& seed, BytesView message);
Key32 oracle_sha256(BytesView data);

std::string oracle_base58(BytesView data);

std::string oracle_canonical_json(const Json& value);

}  // namespace vdic::testing
