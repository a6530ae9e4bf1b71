/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/canonical.hpp"

#include "vdic/errors.hpp"

namespace vdic {

namespace {

void check_canonicalizable(const Json& value) {
  switch (value.type()) {
    case Json::value_t::number_float:
      throw Error(Errc::invalid_argument,
                  "canonical JSON forbids non-integer numbers");
    case Json::value_t::binary:
      throw Error(Errc::invalid_argument,
                  "canonical JSON carries binary data as base64 strings");
    case Json::value_t::discarded:
      throw Error(Errc::malformed, "cannot canonicalize a discarded value");
    case Json::value_t::array:
    case Json::value_t::object:
      for (const auto& item : value) {
        check_canonicalizable(item);
      }
      break;
    default:
      break;
  }
}

}  // namespace

std::string canonicalize_to_string(const Json& value) {
  check_canonicalizable(value);
  // nlohmann's object storage is an ordered std::map over UTF-8 keys, so a
  // plain dump is already sorted by code point and whitespace-free.
  return value.dump();
}

Bytes canonicalize(const Json& value) {
  return to_bytes(canonicalize_to_string(value));
}

Json parse_json(std::string_view text) {
  Json parsed = Json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    throw Error(Errc::malformed, "invalid JSON");
  }
  return parsed;
}

Json parse_json(BytesView bytes) {
  return parse_json(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                     bytes.size()));
}

}  // namespace vdic
