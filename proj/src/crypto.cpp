/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/crypto.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>

#include "vdic/errors.hpp"

namespace vdic {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) {
      throw Error(Errc::io_error, "libsodium initialization failed");
    }
  });
}

constexpr char kAgreementDomain[] = "vdic:x25519-seed:v1";

}  // namespace

KeyPair generate_keypair(std::optional<BytesView> seed) {
  ensure_sodium();
  Key32 signing_seed{};
  if (seed) {
    if (seed->size() != signing_seed.size()) {
      throw Error(Errc::invalid_argument, "keypair seed must be exactly 32 bytes");
    }
    std::memcpy(signing_seed.data(), seed->data(), signing_seed.size());
  } else {
    randombytes_buf(signing_seed.data(), signing_seed.size());
  }

  KeyPair kp;
  kp.signing_secret = signing_seed;
  std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> expanded{};
  crypto_sign_seed_keypair(kp.signing_public.data(), expanded.data(),
                           signing_seed.data());

  // Independent agreement pair: hash the seed under a fixed domain tag
  // instead of converting the Edwards key.
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(
      &st, reinterpret_cast<const unsigned char*>(kAgreementDomain),
      sizeof(kAgreementDomain) - 1);
  crypto_hash_sha256_update(&st, signing_seed.data(), signing_seed.size());
  Key32 agreement_seed{};
  crypto_hash_sha256_final(&st, agreement_seed.data());
  crypto_box_seed_keypair(kp.agreement_public.data(), kp.agreement_secret.data(),
                          agreement_seed.data());
  return kp;
}

Signature sign(BytesView message, const Key32& signing_seed) {
  ensure_sodium();
  Key32 pub{};
  std::array<std::uint8_t, crypto_sign_SECRETKEYBYTES> expanded{};
  crypto_sign_seed_keypair(pub.data(), expanded.data(), signing_seed.data());
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       expanded.data());
  return sig;
}

Signature sign(BytesView message, const KeyPair& kp) {
  return sign(message, kp.signing_secret);
}

bool verify(BytesView message, const Signature& sig, const Key32& signing_public) {
  ensure_sodium();
  return crypto_sign_verify_detached(sig.data(), message.data(), message.size(),
                                     signing_public.data()) == 0;
}

Key32 sha256(BytesView data) {
  ensure_sodium();
  Key32 digest{};
  crypto_hash_sha256(digest.data(), data.data(), data.size());
  return digest;
}

Bytes random_bytes(std::size_t n) {
  ensure_sodium();
  Bytes out(n);
  if (n > 0) {
    randombytes_buf(out.data(), n);
  }
  return out;
}

SealedBox box_seal(BytesView plaintext, const Key32& recipient_agreement_public) {
  ensure_sodium();
  SealedBox box;
  Key32 ephemeral_secret{};
  crypto_box_keypair(box.ephemeral_public.data(), ephemeral_secret.data());
  randombytes_buf(box.nonce.data(), box.nonce.size());
  box.ciphertext.resize(plaintext.size() + crypto_box_MACBYTES);
  if (crypto_box_easy(box.ciphertext.data(), plaintext.data(), plaintext.size(),
                      box.nonce.data(), recipient_agreement_public.data(),
                      ephemeral_secret.data()) != 0) {
    throw Error(Errc::invalid_argument, "box encryption failed");
  }
  sodium_memzero(ephemeral_secret.data(), ephemeral_secret.size());
  return box;
}

Bytes box_open(const SealedBox& box, const Key32& recipient_agreement_secret) {
  ensure_sodium();
  if (box.ciphertext.size() < crypto_box_MACBYTES) {
    throw Error(Errc::decryption_failure, "ciphertext shorter than its tag");
  }
  Bytes plain(box.ciphertext.size() - crypto_box_MACBYTES);
  if (crypto_box_open_easy(plain.data(), box.ciphertext.data(),
                           box.ciphertext.size(), box.nonce.data(),
                           box.ephemeral_public.data(),
                           recipient_agreement_secret.data()) != 0) {
    throw Error(Errc::decryption_failure,
                "authenticated decryption failed (wrong recipient or altered data)");
  }
  return plain;
}

}  // namespace vdic
