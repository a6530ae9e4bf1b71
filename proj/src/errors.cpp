/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/errors.hpp"

namespace vdic {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::not_found: return "not_found";
    case Errc::stale_version: return "stale_version";
    case Errc::unauthorized: return "unauthorized";
    case Errc::duplicate: return "duplicate";
    case Errc::secret_mismatch: return "secret_mismatch";
    case Errc::read_only_follower: return "read_only_follower";
    case Errc::decryption_failure: return "decryption_failure";
    case Errc::malformed: return "malformed";
    case Errc::conflict: return "conflict";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace vdic
