/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/registry.hpp"

#include <algorithm>

#include "vdic/errors.hpp"

namespace vdic {

namespace {

// Listing shape: both registry lists ride as "LinkedDomains" service
// entries holding bare DIDs.
constexpr char kRegistryEntryType[] = "LinkedDomains";

std::string entry_id(const Did& vdic, ActorRole role) {
  return vdic.str() + (role == ActorRole::node_operator ? "#node_operators" : "#dapps");
}

std::vector<Did> parse_actor_list(const ServiceEntry& entry) {
  std::vector<Did> out;
  for (const auto& value : entry.service_endpoint) {
    out.push_back(Did::parse(value));
  }
  return out;
}

ServiceEntry* find_registry_entry(DidDocument& doc, const Did& vdic, ActorRole role) {
  std::string id = entry_id(vdic, role);
  for (auto& entry : doc.service) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

DidDocument resolve_vdic_checked(const LedgerStore& ledger, const Did& vdic) {
  DidDocument doc = ledger.resolve(vdic);
  for (ActorRole role : {ActorRole::node_operator, ActorRole::dapp}) {
    const ServiceEntry* entry = doc.find_service(entry_id(vdic, role));
    if (entry == nullptr || entry->type != kRegistryEntryType) {
      throw Error(Errc::malformed,
                  "VDIC document has no trusted actor registry entry for " +
                      std::string(actor_role_name(role)));
    }
  }
  return doc;
}

}  // namespace

const char* actor_role_name(ActorRole role) {
  return role == ActorRole::node_operator ? "node_operator" : "dapp";
}

bool TrustedActorRegistry::lists(const Did& actor, ActorRole role) const {
  const auto& list = role == ActorRole::node_operator ? node_operators : dapps;
  return std::find(list.begin(), list.end(), actor) != list.end();
}

Json TrustedActorRegistry::to_json() const {
  Json ops = Json::array();
  for (const auto& d : node_operators) ops.push_back(d.str());
  Json dapp_list = Json::array();
  for (const auto& d : dapps) dapp_list.push_back(d.str());
  return Json{{"vdic", vdic.str()},
              {"node_operators", std::move(ops)},
              {"dapps", std::move(dapp_list)},
              {"version", version}};
}

DidDocument init_registry(LedgerStore& ledger, const KeyPair& leader_kp,
                          const Did& leader, const KeyPair& vdic_kp,
                          const Did& vdic, std::int64_t now_s) {
  if (!ledger.contains(leader)) {
    throw Error(Errc::not_found, "leader document not published: " + leader.str());
  }
  DidDocument doc = create_did_document(vdic, {leader}, vdic_kp, now_s);
  doc.service.push_back({entry_id(vdic, ActorRole::node_operator),
                         kRegistryEntryType, {}});
  doc.service.push_back({entry_id(vdic, ActorRole::dapp), kRegistryEntryType, {}});
  sign_document(doc, leader_kp, leader.str() + "#key-1", format_rfc3339(now_s));
  ledger.publish(doc);
  return doc;
}

namespace {

std::int64_t republish_registry(LedgerStore& ledger, const KeyPair& leader_kp,
                                const Did& vdic, const Did& actor, ActorRole role,
                                std::int64_t now_s, bool add) {
  DidDocument doc = resolve_vdic_checked(ledger, vdic);
  Did caller = did_from_keypair(leader_kp);
  bool is_controller =
      std::find(doc.controller.begin(), doc.controller.end(), caller) !=
      doc.controller.end();
  if (!is_controller) {
    throw Error(Errc::unauthorized,
                "registry updates require a controller key of " + vdic.str());
  }
  if (add && !ledger.contains(actor)) {
    throw Error(Errc::not_found, "actor document not published: " + actor.str());
  }

  ServiceEntry* entry = find_registry_entry(doc, vdic, role);
  auto& endpoints = entry->service_endpoint;
  auto it = std::find(endpoints.begin(), endpoints.end(), actor.str());
  if (add) {
    if (it != endpoints.end()) {
      throw Error(Errc::duplicate,
                  actor.str() + " already listed as " + actor_role_name(role));
    }
    endpoints.push_back(actor.str());
  } else {
    if (it == endpoints.end()) {
      throw Error(Errc::not_found,
                  actor.str() + " is not listed as " + actor_role_name(role));
    }
    endpoints.erase(it);
  }

  doc.version += 1;
  sign_document(doc, leader_kp, caller.str() + "#key-1", format_rfc3339(now_s));
  return ledger.publish(doc);
}

}  // namespace

std::int64_t registry_add(LedgerStore& ledger, const KeyPair& leader_kp,
                          const Did& vdic, const Did& actor, ActorRole role,
                          std::int64_t now_s) {
  return republish_registry(ledger, leader_kp, vdic, actor, role, now_s, true);
}

std::int64_t registry_remove(LedgerStore& ledger, const KeyPair& leader_kp,
                             const Did& vdic, const Did& actor, ActorRole role,
                             std::int64_t now_s) {
  return republish_registry(ledger, leader_kp, vdic, actor, role, now_s, false);
}

TrustedActorRegistry read_registry(const LedgerStore& ledger, const Did& vdic) {
  DidDocument doc = resolve_vdic_checked(ledger, vdic);
  TrustedActorRegistry registry;
  registry.vdic = vdic;
  if (doc.controller.empty()) {
    throw Error(Errc::malformed, "VDIC document has no controller");
  }
  registry.leader = doc.controller.front();
  registry.node_operators =
      parse_actor_list(*doc.find_service(entry_id(vdic, ActorRole::node_operator)));
  registry.dapps = parse_actor_list(*doc.find_service(entry_id(vdic, ActorRole::dapp)));
  registry.version = doc.version;

  for (const auto* list : {&registry.node_operators, &registry.dapps}) {
    std::vector<Did> sorted = *list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::malformed, "trusted actor registry lists a DID twice");
    }
  }
  return registry;
}

bool is_authorized(const LedgerStore& ledger, const Did& vdic, const Did& actor,
                   ActorRole role) {
  try {
    return read_registry(ledger, vdic).lists(actor, role);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace vdic
