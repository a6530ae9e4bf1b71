/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <optional>

#include "vdic/bytes.hpp"

namespace vdic {

using Key32 = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

/// Ed25519 signing pair plus an X25519 agreement pair. The agreement pair is
/// derived from a domain-separated hash of the seed, not converted from the
/// signing key, so both public keys are published side by side.
struct KeyPair {
  Key32 signing_secret{};    // 32-byte Ed25519 seed
  Key32 signing_public{};
  Key32 agreement_secret{};  // X25519
  Key32 agreement_public{};
};

/// Deterministic for a fixed seed; fresh randomness otherwise.
/// Throws Errc::invalid_argument unless the seed is absent or 32 bytes.
KeyPair generate_keypair(std::optional<BytesView> seed = std::nullopt);

Signature sign(BytesView message, const KeyPair& kp);
Signature sign(BytesView message, const Key32& signing_seed);

bool verify(BytesView message, const Signature& sig, const Key32& signing_public);

Key32 sha256(BytesView data);

Bytes random_bytes(std::size_t n);

struct SealedBox {
  Key32 ephemeral_public{};
  std::array<std::uint8_t, 24> nonce{};
  Bytes ciphertext;  // authenticated
};

/// Ephemeral-static X25519 agreement followed by authenticated symmetric
/// encryption of the plaintext.
SealedBox box_seal(BytesView plaintext, const Key32& recipient_agreement_public);

/// Throws Errc::decryption_failure when the recipient key does not match or
/// the ciphertext was altered. Never yields partial plaintext.
Bytes box_open(const SealedBox& box, const Key32& recipient_agreement_secret);

}  // namespace vdic
