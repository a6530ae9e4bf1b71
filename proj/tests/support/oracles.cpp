/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "oracles.hpp"

#include <gmp.h>
#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace vdic::testing {

namespace {

using EvpKeyPtr = std::unique_ptr<EVP_PKEY, decltype(&EVP_PKEY_free)>;
using EvpCtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

EvpKeyPtr load_private(const Key32& seed) {
  EVP_PKEY* key = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr,
                                               seed.data(), seed.size());
  if (key == nullptr) {
    throw std::runtime_error("openssl refused the ed25519 seed");
  }
  return EvpKeyPtr(key, EVP_PKEY_free);
}

}  // namespace

Key32 oracle_ed25519_public(const Key32& seed) {
  EvpKeyPtr key = load_private(seed);
  Key32 pub{};
  size_t len = pub.size();
  if (EVP_PKEY_get_raw_public_key(key.get(), pub.data(), &len) != 1 ||
      len != pub.size()) {
    throw std::runtime_error("openssl could not derive the public key");
  }
  return pub;
}

Signature oracle_ed25519_sign(const Key32& seed, BytesView message) {
  EvpKeyPtr key = load_private(seed);
  EvpCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1) {
    throw std::runtime_error("openssl sign init failed");
  }
  Signature sig{};
  size_t len = sig.size();
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(),
                     message.size()) != 1 ||
      len != sig.size()) {
    throw std::runtime_error("openssl signing failed");
  }
  return sig;
}

Key32 oracle_sha256(BytesView data) {
  Key32 digest{};
  unsigned int len = digest.size();
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != digest.size()) {
    throw std::runtime_error("openssl sha256 failed");
  }
  return digest;
}

std::string oracle_base58(BytesView data) {
  static const char* alphabet =
      "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
  size_t zeros = 0;
  while (zeros < data.size() && data[zeros] == 0) ++zeros;

  std::string out(zeros, '1');
  if (zeros == data.size()) {
    return out;
  }
  mpz_t n;
  mpz_init(n);
  mpz_import(n, data.size() - zeros, 1, 1, 1, 0, data.data() + zeros);
  std::string digits;
  while (mpz_sgn(n) > 0) {
    unsigned long rem = mpz_fdiv_q_ui(n, n, 58);
    digits.push_back(alphabet[rem]);
  }
  mpz_clear(n);
  out.append(digits.rbegin(), digits.rend());
  return out;
}

namespace {

void write_escaped(const std::string& s, std::string& out) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void write_value(const Json& value, std::string& out) {
  if (value.is_object()) {
    std::vector<std::string> keys;
    for (const auto& [key, unused] : value.items()) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    out.push_back('{');
    for (size_t i = 0; i < keys.size(); ++i) {
      if (i > 0) out.push_back(',');
      write_escaped(keys[i], out);
      out.push_back(':');
      write_value(value.at(keys[i]), out);
    }
    out.push_back('}');
  } else if (value.is_array()) {
    out.push_back('[');
    for (size_t i = 0; i < value.size(); ++i) {
      if (i > 0) out.push_back(',');
      write_value(value.at(i), out);
    }
    out.push_back(']');
  } else if (value.is_string()) {
    write_escaped(value.get<std::string>(), out);
  } else if (value.is_boolean()) {
    out += value.get<bool>() ? "true" : "false";
  } else if (value.is_null()) {
    out += "null";
  } else if (value.is_number_unsigned()) {
    out += std::to_string(value.get<std::uint64_t>());
  } else if (value.is_number_integer()) {
    out += std::to_string(value.get<std::int64_t>());
  } else {
    throw std::runtime_error("oracle cannot serialize this value type");
  }
}

}  // namespace

std::string oracle_canonical_json(const Json& value) {
  std::string out;
  write_value(value, out);
  return out;
}

}  // namespace vdic::testing
