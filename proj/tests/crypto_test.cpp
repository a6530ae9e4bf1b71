/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/crypto.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "vdic/errors.hpp"

using namespace vdic;

namespace {

Key32 key_of(const std::string& hex) {
  Bytes raw = from_hex(hex);
  Key32 key{};
  std::copy(raw.begin(), raw.end(), key.begin());
  return key;
}

}  // namespace

TEST(Keypair, DeterministicForFixedSeed) {
  Key32 zero{};
  KeyPair a = generate_keypair(BytesView(zero.data(), zero.size()));
  KeyPair b = generate_keypair(BytesView(zero.data(), zero.size()));
  EXPECT_EQ(a.signing_public, b.signing_public);
  EXPECT_EQ(a.agreement_public, b.agreement_public);
  EXPECT_NE(a.signing_public, a.agreement_public);
}

TEST(Keypair, FreshWithoutSeed) {
  KeyPair a = generate_keypair();
  KeyPair b = generate_keypair();
  EXPECT_NE(a.signing_public, b.signing_public);
}

TEST(Keypair, RejectsMalformedSeed) {
  Bytes short_seed(31, 0);
  EXPECT_THROW(generate_keypair(BytesView(short_seed)), Error);
}

TEST(Keypair, PublicKeyMatchesReferenceImplementation) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 32; ++i) {
    Key32 seed{};
    for (auto& byte : seed) byte = static_cast<std::uint8_t>(rng());
    KeyPair kp = generate_keypair(BytesView(seed.data(), seed.size()));
    EXPECT_EQ(kp.signing_public, testing::oracle_ed25519_public(seed));
  }
}

// RFC 8032 test vector 1.
TEST(Signing, PublishedVector) {
  Key32 seed = key_of(
      "9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60");
  KeyPair kp = generate_keypair(BytesView(seed.data(), seed.size()));
  EXPECT_EQ(to_hex(BytesView(kp.signing_public.data(), kp.signing_public.size())),
            "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a");
  Signature sig = sign(Bytes{}, kp);
  EXPECT_EQ(to_hex(BytesView(sig.data(), sig.size())),
            "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e06522490155"
            "5fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe24655141438e7a100b");
  EXPECT_TRUE(verify(Bytes{}, sig, kp.signing_public));
}

TEST(Signing, MatchesReferenceImplementation) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 16; ++i) {
    Key32 seed{};
    for (auto& byte : seed) byte = static_cast<std::uint8_t>(rng());
    Bytes message(1 + rng() % 200);
    for (auto& b : message) b = static_cast<std::uint8_t>(rng());
    KeyPair kp = generate_keypair(BytesView(seed.data(), seed.size()));
    // Ed25519 is deterministic, so both implementations must agree byte
    // for byte.
    EXPECT_EQ(sign(message, kp), testing::oracle_ed25519_sign(seed, message));
  }
}

TEST(Signing, RejectsTamperedMessage) {
  KeyPair kp = generate_keypair();
  Bytes message = to_bytes("payload");
  Signature sig = sign(message, kp);
  message[0] ^= 1;
  EXPECT_FALSE(verify(message, sig, kp.signing_public));
}

TEST(Sha256, MatchesReferenceImplementation) {
  EXPECT_EQ(to_hex(BytesView(sha256(Bytes{}).data(), 32)),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  std::mt19937_64 rng(17);
  Bytes data(1024);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  EXPECT_EQ(sha256(data), testing::oracle_sha256(data));
}

TEST(Box, SealOpenRoundTrip) {
  KeyPair recipient = generate_keypair();
  Bytes plain = to_bytes("cluster configuration goes here");
  SealedBox box = box_seal(plain, recipient.agreement_public);
  EXPECT_EQ(box_open(box, recipient.agreement_secret), plain);
}

TEST(Box, WrongRecipientFails) {
  KeyPair recipient = generate_keypair();
  KeyPair other = generate_keypair();
  SealedBox box = box_seal(to_bytes("secret"), recipient.agreement_public);
  EXPECT_THROW(box_open(box, other.agreement_secret), Error);
}

TEST(Box, AnyBitFlipFails) {
  KeyPair recipient = generate_keypair();
  Bytes plain = to_bytes("0123456789abcdef0123456789abcdef");
  std::mt19937_64 rng(19);
  for (int i = 0; i < 50; ++i) {
    SealedBox box = box_seal(plain, recipient.agreement_public);
    size_t pos = rng() % box.ciphertext.size();
    box.ciphertext[pos] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    EXPECT_THROW(box_open(box, recipient.agreement_secret), Error);
  }
}
