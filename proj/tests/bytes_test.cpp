/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/bytes.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "vdic/errors.hpp"

using namespace vdic;

TEST(Hex, RoundTrip) {
  Bytes data{0x00, 0x01, 0xab, 0xff};
  EXPECT_EQ(to_hex(data), "0001abff");
  EXPECT_EQ(from_hex("0001abff"), data);
}

TEST(Hex, RejectsUppercaseAndOddLength) {
  EXPECT_THROW(from_hex("AB"), Error);
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

TEST(Base64, RoundTripPadded) {
  Bytes data = to_bytes("any carnal pleasure.");
  std::string encoded = to_base64(data);
  EXPECT_EQ(encoded, "YW55IGNhcm5hbCBwbGVhc3VyZS4=");
  EXPECT_EQ(from_base64(encoded), data);
}

TEST(Base64, RejectsNonCanonicalEncodings) {
  // "YQ==" decodes to "a"; flipping the low bits of the second character
  // yields an alias that strict decoding must refuse.
  EXPECT_EQ(from_base64("YQ=="), to_bytes("a"));
  EXPECT_THROW(from_base64("YR=="), Error);
  EXPECT_THROW(from_base64("YQ="), Error);
  EXPECT_THROW(from_base64("Y Q=="), Error);
}

TEST(Base64Url, RoundTripUnpadded) {
  Bytes data{0xfb, 0xef, 0xbe};
  std::string encoded = to_base64url(data);
  EXPECT_EQ(encoded, "----");  // 62 maps to '-' in the URL-safe alphabet
  EXPECT_EQ(from_base64url(encoded), data);
  EXPECT_THROW(from_base64url(encoded + "="), Error);
  EXPECT_THROW(from_base64url("++++"), Error);
}

// Published reference vectors for the Bitcoin base58 alphabet.
TEST(Base58, ReferenceVectors) {
  const std::pair<const char*, const char*> vectors[] = {
      {"", ""},
      {"61", "2g"},
      {"626262", "a3gV"},
      {"636363", "aPEr"},
      {"73696d706c792061206c6f6e6720737472696e67", "2cFupjhnEsSn59qHXstmK2ffpLv2"},
      {"00eb15231dfceb60925886b67d065299925915aeb172c06647",
       "1NS17iag9jJgTHD1VXjvLCEnZuQ3rJDE9L"},
      {"516b6fcd0f", "ABnLTmg"},
      {"bf4f89001e670274dd", "3SEo3LWLoPntC"},
      {"572e4794", "3EFU7m"},
      {"ecac89cad93923c02321", "EJDM8drfXA6uyA"},
      {"10c8511e", "Rt5zm"},
      {"00000000000000000000", "1111111111"},
  };
  for (const auto& [hex, expected] : vectors) {
    Bytes raw = from_hex(hex);
    EXPECT_EQ(to_base58(raw), expected) << hex;
    EXPECT_EQ(from_base58(expected), raw) << expected;
  }
}

TEST(Base58, MatchesBignumOracleOnRandomBuffers) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Bytes data(rng() % 64);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    if (i % 5 == 0 && !data.empty()) data[0] = 0;  // exercise leading zeros
    std::string encoded = to_base58(data);
    EXPECT_EQ(encoded, testing::oracle_base58(data));
    EXPECT_EQ(from_base58(encoded), data);
  }
}

TEST(Base58, RejectsForeignCharacters) {
  EXPECT_THROW(from_base58("0OIl"), Error);
  EXPECT_THROW(from_base58("ab!c"), Error);
}
