/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <initializer_list>
#include <string>

#include "vdic/canonical.hpp"
#include "vdic/crypto.hpp"
#include "vdic/errors.hpp"

namespace vdic::detail {

/// Strict object reader: every required key present, nothing unknown.
/// Anything signed goes through this, so renamed or injected fields are
/// rejected instead of silently ignored.
inline void require_keys(const Json& j, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional,
                         const char* what) {
  if (!j.is_object()) {
    throw Error(Errc::malformed, std::string(what) + " is not a JSON object");
  }
  for (const char* key : required) {
    if (!j.contains(key)) {
      throw Error(Errc::malformed,
                  std::string(what) + " missing required field '" + key + "'");
    }
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) {
      throw Error(Errc::malformed,
                  std::string(what) + " has unknown field '" + key + "'");
    }
  }
}

inline std::string get_string(const Json& j, const char* key, const char* what) {
  if (!j.at(key).is_string()) {
    throw Error(Errc::malformed,
                std::string(what) + " field '" + key + "' is not a string");
  }
  return j.at(key).get<std::string>();
}

inline Key32 key_from_base58(const std::string& b58, const char* what) {
  Bytes raw = from_base58(b58);
  if (raw.size() != 32) {
    throw Error(Errc::malformed, std::string(what) + " is not a 32-byte key");
  }
  Key32 key{};
  std::copy(raw.begin(), raw.end(), key.begin());
  return key;
}

inline Signature signature_from_base64(const std::string& b64) {
  Bytes raw = from_base64(b64);
  if (raw.size() != 64) {
    throw Error(Errc::malformed, "signature is not 64 bytes");
  }
  Signature sig{};
  std::copy(raw.begin(), raw.end(), sig.begin());
  return sig;
}

}  // namespace vdic::detail
