/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/auditor.hpp"

#include <algorithm>
#include <sstream>

namespace vdic {

const char* motive_name(Motive m) {
  switch (m) {
    case Motive::data_availability: return "data_availability";
    case Motive::support_dapp: return "support_dapp";
    case Motive::support_users: return "support_users";
    case Motive::dapp_data_source: return "dapp_data_source";
    case Motive::unknown: return "unknown";
  }
  return "unknown";
}

Motive classify_motive(const std::map<std::string, std::string>& claims) {
  auto it = claims.find("motive");
  if (it == claims.end()) {
    return Motive::unknown;
  }
  const std::string& value = it->second;
  if (value == "data_availability") return Motive::data_availability;
  if (value == "support_dapp") return Motive::support_dapp;
  if (value == "support_users") return Motive::support_users;
  if (value == "dapp_data_source") return Motive::dapp_data_source;
  return Motive::unknown;
}

Json OperatorAudit::to_json() const {
  Json linked = Json::array();
  for (const auto& [location, result] : linked_presentations) {
    Json fails = Json::array();
    for (const auto& [check, detail] : result.failures) {
      fails.push_back(Json{{"check", check}, {"detail", detail}});
    }
    linked.push_back(Json{{"location", location},
                          {"valid", result.valid()},
                          {"failures", std::move(fails)}});
  }
  Json issuers = Json::array();
  for (const auto& d : issuer_dids) issuers.push_back(d.str());
  return Json{{"did", did.str()},
              {"resolvable", resolvable},
              {"linked_presentations", std::move(linked)},
              {"identity_verified", identity_verified},
              {"motive", motive_name(motive)},
              {"motive_verified", motive_verified},
              {"motive_claim", motive_claim},
              {"issuers", std::move(issuers)},
              {"failures", failures}};
}

Json AuditReport::to_json() const {
  Json ops = Json::array();
  for (const auto& op : operators) ops.push_back(op.to_json());
  return Json{{"vdic", vdic.str()},
              {"leader", leader.str()},
              {"registry_version", registry_version},
              {"operators", std::move(ops)},
              {"dapp_count", dapp_count},
              {"decentralization_level", decentralization_level},
              {"public_mode", public_mode},
              {"operator_counts", "attested, not observed"},
              {"generated_at", generated_at}};
}

namespace {

OperatorAudit audit_operator(const LedgerStore& ledger, const PresentationStore& store,
                             const Did& operator_did) {
  OperatorAudit out;
  out.did = operator_did;
  out.resolvable = ledger.contains(operator_did);
  if (!out.resolvable) {
    out.failures.push_back("DID not resolvable: " + operator_did.str());
    return out;
  }

  std::vector<LinkedPresentation> linked =
      fetch_linked_presentations(operator_did, ledger, store);
  if (linked.empty()) {
    out.failures.push_back("no linked verifiable presentations");
  }
  std::vector<Did> issuers;
  for (const auto& item : linked) {
    out.linked_presentations.emplace_back(item.location, item.result);
    if (!item.result.valid()) {
      for (const auto& [check, detail] : item.result.failures) {
        out.failures.push_back(item.location + ": " + check + ": " + detail);
      }
      continue;
    }
    for (const auto& cred : item.presentation->credentials) {
      if (cred.has_type(kIdentityCredentialType)) {
        out.identity_verified = true;
        issuers.push_back(cred.issuer);
      }
      if (cred.has_type(kMotiveCredentialType) && cred.claim("motive")) {
        out.motive_verified = true;
        out.motive = classify_motive(cred.claims);
        out.motive_claim = *cred.claim("motive");
        issuers.push_back(cred.issuer);
      }
    }
  }
  // Issuer identities are surfaced for human judgment, not allow-listed.
  std::sort(issuers.begin(), issuers.end());
  issuers.erase(std::unique(issuers.begin(), issuers.end()), issuers.end());
  out.issuer_dids = std::move(issuers);
  return out;
}

}  // namespace

AuditReport audit(const LedgerStore& ledger, const PresentationStore& store,
                  const Did& vdic, std::int64_t generated_at_s) {
  TrustedActorRegistry registry = read_registry(ledger, vdic);
  AuditReport report;
  report.vdic = vdic;
  report.leader = registry.leader;
  report.registry_version = registry.version;
  report.dapp_count = static_cast<std::int64_t>(registry.dapps.size());
  report.generated_at = format_rfc3339(generated_at_s);

  DidDocument doc = ledger.resolve(vdic);
  report.public_mode =
      doc.find_service(vdic.str() + "#public_config") != nullptr;

  for (const auto& operator_did : registry.node_operators) {
    report.operators.push_back(audit_operator(ledger, store, operator_did));
  }
  report.decentralization_level = static_cast<std::int64_t>(
      std::count_if(report.operators.begin(), report.operators.end(),
                    [](const OperatorAudit& op) { return op.fully_verified(); }));
  return report;
}

Bytes render_report(const AuditReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    return canonicalize(report.to_json());
  }
  std::ostringstream out;
  out << "vdic audit report\n";
  out << "vdic: " << report.vdic.str() << "\n";
  out << "leader: " << report.leader.str() << "\n";
  out << "registry version: " << report.registry_version << "\n";
  out << "public mode: " << (report.public_mode ? "true" : "false") << "\n";
  out << "generated at: " << report.generated_at << "\n";
  out << "dapps listed: " << report.dapp_count << "\n";
  out << "operators listed: " << report.operators.size() << "\n";
  out << "decentralization level: " << report.decentralization_level << "\n";
  out << "note: operator counts are attested, not observed\n";
  for (const auto& op : report.operators) {
    out << "operator " << op.did.str() << "\n";
    out << "  resolvable: " << (op.resolvable ? "yes" : "no") << "\n";
    out << "  identity verified: " << (op.identity_verified ? "yes" : "no") << "\n";
    out << "  motive: " << motive_name(op.motive)
        << (op.motive_verified ? " (verified)" : " (unverified)");
    if (!op.motive_claim.empty() && op.motive == Motive::unknown) {
      out << " claim: \"" << op.motive_claim << "\"";
    }
    out << "\n";
    if (!op.issuer_dids.empty()) {
      out << "  issuers:";
      for (const auto& issuer : op.issuer_dids) out << " " << issuer.str();
      out << "\n";
    }
    for (const auto& failure : op.failures) {
      out << "  failure " << failure << "\n";
    }
  }
  return to_bytes(out.str());
}

}  // namespace vdic
