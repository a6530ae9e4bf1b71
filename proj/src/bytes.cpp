/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/bytes.hpp"

#include <sodium.h>

#include <algorithm>
#include <array>

#include "vdic/errors.hpp"

namespace vdic {

namespace {

constexpr char kBase58Alphabet[] =
    "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

std::array<int8_t, 256> base58_reverse_table() {
  std::array<int8_t, 256> table{};
  table.fill(-1);
  for (int i = 0; i < 58; ++i) {
    table[static_cast<unsigned char>(kBase58Alphabet[i])] =
        static_cast<int8_t>(i);
  }
  return table;
}

}  // namespace

std::string to_hex(BytesView data) {
  std::string out(data.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
  out.resize(data.size() * 2);
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw Error(Errc::malformed, "hex string has odd length");
  }
  for (char c : hex) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) {
      throw Error(Errc::malformed, "hex string contains non-lowercase-hex character");
    }
  }
  Bytes out(hex.size() / 2);
  size_t bin_len = 0;
  if (sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr,
                     &bin_len, nullptr) != 0 ||
      bin_len != out.size()) {
    throw Error(Errc::malformed, "invalid hex string");
  }
  return out;
}

namespace {

std::string b64_encode(BytesView data, int variant) {
  std::string out(sodium_base64_encoded_len(data.size(), variant), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(), variant);
  out.resize(std::char_traits<char>::length(out.c_str()));
  return out;
}

Bytes b64_decode(std::string_view b64, int variant, const char* label) {
  Bytes out(b64.size() + 3);
  size_t bin_len = 0;
  if (sodium_base642bin(out.data(), out.size(), b64.data(), b64.size(),
                        nullptr, &bin_len, nullptr, variant) != 0) {
    throw Error(Errc::malformed, std::string("invalid ") + label + " string");
  }
  out.resize(bin_len);
  // Non-canonical encodings (stray padding bits, wrong padding) must not
  // alias a canonical one.
  if (b64_encode(out, variant) != b64) {
    throw Error(Errc::malformed,
                std::string("non-canonical ") + label + " encoding");
  }
  return out;
}

}  // namespace

std::string to_base64(BytesView data) {
  return b64_encode(data, sodium_base64_VARIANT_ORIGINAL);
}

Bytes from_base64(std::string_view b64) {
  return b64_decode(b64, sodium_base64_VARIANT_ORIGINAL, "base64");
}

std::string to_base64url(BytesView data) {
  return b64_encode(data, sodium_base64_VARIANT_URLSAFE_NO_PADDING);
}

Bytes from_base64url(std::string_view b64) {
  return b64_decode(b64, sodium_base64_VARIANT_URLSAFE_NO_PADDING, "base64url");
}

std::string to_base58(BytesView data) {
  size_t zeros = 0;
  while (zeros < data.size() && data[zeros] == 0) {
    ++zeros;
  }
  // Each output digit carries log(58)/log(256) ~ 0.733 bytes.
  std::vector<uint8_t> digits((data.size() - zeros) * 138 / 100 + 1, 0);
  size_t length = 0;
  for (size_t i = zeros; i < data.size(); ++i) {
    int carry = data[i];
    size_t j = 0;
    for (auto it = digits.rbegin();
         it != digits.rend() && (carry != 0 || j < length); ++it, ++j) {
      carry += 256 * (*it);
      *it = static_cast<uint8_t>(carry % 58);
      carry /= 58;
    }
    length = j;
  }
  std::string out(zeros, '1');
  auto first = digits.begin() + static_cast<ptrdiff_t>(digits.size() - length);
  first = std::find_if(first, digits.end(), [](uint8_t d) { return d != 0; });
  for (auto it = first; it != digits.end(); ++it) {
    out.push_back(kBase58Alphabet[*it]);
  }
  return out;
}

Bytes from_base58(std::string_view b58) {
  static const auto table = base58_reverse_table();
  size_t zeros = 0;
  while (zeros < b58.size() && b58[zeros] == '1') {
    ++zeros;
  }
  std::vector<uint8_t> bytes((b58.size() - zeros) * 733 / 1000 + 1, 0);
  size_t length = 0;
  for (size_t i = zeros; i < b58.size(); ++i) {
    int carry = table[static_cast<unsigned char>(b58[i])];
    if (carry < 0) {
      throw Error(Errc::malformed, "invalid base58 character");
    }
    size_t j = 0;
    for (auto it = bytes.rbegin();
         it != bytes.rend() && (carry != 0 || j < length); ++it, ++j) {
      carry += 58 * (*it);
      *it = static_cast<uint8_t>(carry % 256);
      carry /= 256;
    }
    length = j;
  }
  Bytes out(zeros, 0);
  auto first = bytes.begin() + static_cast<ptrdiff_t>(bytes.size() - length);
  first = std::find_if(first, bytes.end(), [](uint8_t b) { return b != 0; });
  out.insert(out.end(), first, bytes.end());
  return out;
}

}  // namespace vdic
