/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace vdic {

enum class Errc {
  invalid_argument,
  not_found,
  stale_version,
  unauthorized,
  duplicate,
  secret_mismatch,
  read_only_follower,
  decryption_failure,
  malformed,
  conflict,
  io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Error surfaced by the gateway, carrying the HTTP status it maps to.
class GatewayError : public Error {
 public:
  GatewayError(int http_status, const std::string& reason,
               const std::string& what)
      : Error(Errc::unauthorized, what),
        http_status_(http_status),
        reason_(reason) {}

  int http_status() const { return http_status_; }
  const std::string& reason() const { return reason_; }

 private:
  int http_status_;
  std::string reason_;
};

}  // namespace vdic
