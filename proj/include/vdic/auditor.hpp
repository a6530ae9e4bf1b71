/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "vdic/credentials.hpp"
#include "vdic/registry.hpp"

namespace vdic {

enum class Motive {
  data_availability,
  support_dapp,
  support_users,
  dapp_data_source,
  unknown,
};

const char* motive_name(Motive m);

/// Exact match on the "motive" claim against the four canonical tokens;
/// anything else is unknown.
Motive classify_motive(const std::map<std::string, std::string>& claims);

struct OperatorAudit {
  Did did;
  bool resolvable = false;
  std::vector<std::pair<std::string, VerificationResult>> linked_presentations;
  bool identity_verified = false;
  Motive motive = Motive::unknown;
  bool motive_verified = false;
  std::string motive_claim;  // verbatim claim text, canonical or not
  std::vector<Did> issuer_dids;
  std::vector<std::string> failures;

  bool fully_verified() const { return identity_verified && motive_verified; }
  Json to_json() const;
};

struct AuditReport {
  Did vdic;
  Did leader;
  std::int64_t registry_version = 0;
  std::vector<OperatorAudit> operators;
  std::int64_t dapp_count = 0;
  std::int64_t decentralization_level = 0;
  bool public_mode = false;
  std::string generated_at;  // RFC 3339

  Json to_json() const;
};

/// Pure function of public state: the ledger and the presentation store.
/// Requires no credentials. `generated_at_s` stamps the report.
AuditReport audit(const LedgerStore& ledger, const PresentationStore& store,
                  const Did& vdic, std::int64_t generated_at_s);

enum class ReportFormat { json, text };

Bytes render_report(const AuditReport& report, ReportFormat format);

}  // namespace vdic
