/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/lifecycle.hpp"

#include <algorithm>

#include "detail/json_util.hpp"

namespace vdic {

Json EncryptedConfig::to_json() const {
  return Json{{"recipient", recipient.str()},
              {"ephemeral_public",
               to_base64(BytesView(ephemeral_public.data(), ephemeral_public.size()))},
              {"nonce", to_base64(BytesView(nonce.data(), nonce.size()))},
              {"ciphertext", to_base64(ciphertext)},
              {"sender_signature", sender_signature}};
}

EncryptedConfig EncryptedConfig::from_json(const Json& j) {
  detail::require_keys(
      j, {"recipient", "ephemeral_public", "nonce", "ciphertext", "sender_signature"},
      {}, "encrypted config");
  EncryptedConfig enc;
  enc.recipient = Did::parse(detail::get_string(j, "recipient", "encrypted config"));
  Bytes eph = from_base64(detail::get_string(j, "ephemeral_public", "encrypted config"));
  Bytes nonce = from_base64(detail::get_string(j, "nonce", "encrypted config"));
  if (eph.size() != enc.ephemeral_public.size() || nonce.size() != enc.nonce.size()) {
    throw Error(Errc::malformed, "encrypted config key or nonce has wrong length");
  }
  std::copy(eph.begin(), eph.end(), enc.ephemeral_public.begin());
  std::copy(nonce.begin(), nonce.end(), enc.nonce.begin());
  enc.ciphertext = from_base64(detail::get_string(j, "ciphertext", "encrypted config"));
  enc.sender_signature = detail::get_string(j, "sender_signature", "encrypted config");
  return enc;
}

namespace {

Bytes envelope_payload(const EncryptedConfig& enc) {
  Bytes payload = to_bytes(enc.recipient.str());
  payload.insert(payload.end(), enc.ephemeral_public.begin(),
                 enc.ephemeral_public.end());
  payload.insert(payload.end(), enc.nonce.begin(), enc.nonce.end());
  payload.insert(payload.end(), enc.ciphertext.begin(), enc.ciphertext.end());
  return payload;
}

Key32 agreement_key_of(const LedgerStore& ledger, const Did& did) {
  DidDocument doc = ledger.resolve(did);
  std::optional<Key32> key = doc.agreement_key();
  if (!key) {
    throw Error(Errc::not_found,
                "no agreement key in the DID document of " + did.str());
  }
  return *key;
}

std::string public_config_entry_id(const Did& vdic) {
  return vdic.str() + "#public_config";
}

}  // namespace

VdicContext create_vdic(LedgerStore& ledger, PresentationStore& store,
                        const KeyPair& leader_kp, const std::string& name,
                        std::shared_ptr<Clock> clock, CreateVdicOptions options) {
  Did leader = did_from_keypair(leader_kp);
  if (!ledger.contains(leader)) {
    throw Error(Errc::not_found,
                "leader document must be published before creating a VDIC");
  }
  std::int64_t now = clock->unix_seconds();

  KeyPair vdic_kp = options.vdic_kp ? *options.vdic_kp : generate_keypair();
  Did vdic = did_from_keypair(vdic_kp);
  init_registry(ledger, leader_kp, leader, vdic_kp, vdic, now);

  std::string peer =
      options.leader_peer.empty() ? "cluster://" + name + "/leader" : options.leader_peer;
  ClusterConfig config = make_cluster_config(name, peer, now);
  ClusterHandle cluster = ClusterHandle::create(
      config, leader, clock, options.latency_seed, options.leader_latency);

  VdicContext ctx;
  ctx.vdic = vdic;
  ctx.leader = leader;
  ctx.vdic_kp = vdic_kp;
  ctx.cluster = std::move(cluster);
  ctx.gateway_config = options.gateway;
  ctx.ledger = &ledger;
  ctx.store = &store;
  ctx.clock = std::move(clock);
  return ctx;
}

Gateway make_gateway(VdicContext& ctx) {
  return Gateway(ctx.gateway_config, ctx.vdic, ctx.vdic_kp, *ctx.ledger, ctx.cluster,
                 ctx.clock);
}

EncryptedConfig encrypt_config(const ClusterConfig& config, const Did& recipient,
                               const Key32& recipient_agreement_public,
                               const KeyPair& leader_kp) {
  EncryptedConfig enc;
  enc.recipient = recipient;
  SealedBox box = box_seal(config.serialize(), recipient_agreement_public);
  enc.ephemeral_public = box.ephemeral_public;
  enc.nonce = box.nonce;
  enc.ciphertext = std::move(box.ciphertext);
  Signature sig = sign(envelope_payload(enc), leader_kp);
  enc.sender_signature = to_base64(BytesView(sig.data(), sig.size()));
  return enc;
}

ClusterConfig decrypt_config(const EncryptedConfig& enc, const KeyPair& recipient_kp,
                             const LedgerStore& ledger, const Did& leader) {
  if (enc.recipient != did_from_keypair(recipient_kp)) {
    throw Error(Errc::unauthorized,
                "envelope is addressed to " + enc.recipient.str());
  }
  DidDocument leader_doc = ledger.resolve(leader);
  Signature sig = detail::signature_from_base64(enc.sender_signature);
  if (!verify(envelope_payload(enc), sig, leader_doc.authentication_key())) {
    throw Error(Errc::unauthorized, "envelope sender signature does not verify");
  }
  SealedBox box{enc.ephemeral_public, enc.nonce, enc.ciphertext};
  Bytes plain = box_open(box, recipient_kp.agreement_secret);
  return ClusterConfig::from_json(parse_json(plain));
}

namespace {

struct VettingOutcome {
  bool identity_ok = false;
  bool motive_ok = false;
  std::vector<std::string> reasons;
};

VettingOutcome vet_linked_presentations(const VdicContext& ctx, const Did& applicant) {
  VettingOutcome outcome;
  if (!ctx.ledger->contains(applicant)) {
    outcome.reasons.push_back("applicant DID is not resolvable: " + applicant.str());
    return outcome;
  }
  std::vector<LinkedPresentation> linked =
      fetch_linked_presentations(applicant, *ctx.ledger, *ctx.store);
  if (linked.empty()) {
    outcome.reasons.push_back("missing linked verifiable presentations");
    return outcome;
  }
  for (const auto& item : linked) {
    if (!item.result.valid()) {
      for (const auto& [check, detail] : item.result.failures) {
        outcome.reasons.push_back(item.location + ": " + check + ": " + detail);
      }
      continue;
    }
    for (const auto& cred : item.presentation->credentials) {
      if (cred.has_type(kIdentityCredentialType)) {
        outcome.identity_ok = true;
      }
      if (cred.has_type(kMotiveCredentialType) && cred.claim("motive")) {
        outcome.motive_ok = true;
      }
    }
  }
  if (!outcome.identity_ok) {
    outcome.reasons.push_back("no verifiable linked identity credential");
  }
  if (!outcome.motive_ok) {
    outcome.reasons.push_back("no verifiable linked motive credential");
  }
  return outcome;
}

}  // namespace

AdmissionDecision process_operator_application(VdicContext& ctx,
                                               const KeyPair& leader_kp,
                                               const Did& applicant) {
  AdmissionDecision decision;
  VettingOutcome vetting = vet_linked_presentations(ctx, applicant);
  if (!vetting.identity_ok || !vetting.motive_ok) {
    decision.reasons = std::move(vetting.reasons);
    return decision;
  }

  std::int64_t now = ctx.clock->unix_seconds();
  // Seal first: it has no observable side effects, so a failure here leaves
  // the registry untouched.
  Key32 agreement = agreement_key_of(*ctx.ledger, applicant);
  EncryptedConfig enc =
      encrypt_config(ctx.cluster.config(), applicant, agreement, leader_kp);
  registry_add(*ctx.ledger, leader_kp, ctx.vdic, applicant, ActorRole::node_operator,
               now);
  decision.credential = issue_credential(
      leader_kp, ctx.leader, applicant, {kNodeOperatorCredentialType},
      {{"vdic", ctx.vdic.str()}, {"role", "node_operator"}}, now);
  decision.encrypted_config = std::move(enc);
  decision.accepted = true;
  return decision;
}

AdmissionDecision process_dapp_application(VdicContext& ctx, const KeyPair& leader_kp,
                                           const Did& applicant,
                                           const std::string& scope) {
  if (scope != "read" && scope != "readwrite") {
    throw Error(Errc::invalid_argument, "scope must be 'read' or 'readwrite'");
  }
  AdmissionDecision decision;
  VettingOutcome vetting = vet_linked_presentations(ctx, applicant);
  if (!vetting.identity_ok || !vetting.motive_ok) {
    decision.reasons = std::move(vetting.reasons);
    return decision;
  }
  std::int64_t now = ctx.clock->unix_seconds();
  registry_add(*ctx.ledger, leader_kp, ctx.vdic, applicant, ActorRole::dapp, now);
  decision.credential =
      issue_credential(leader_kp, ctx.leader, applicant, {kAccessCredentialType},
                       {{"vdic", ctx.vdic.str()}, {"scope", scope}}, now);
  decision.accepted = true;
  return decision;
}

std::string onboard_operator_node(VdicContext& ctx, const KeyPair& operator_kp,
                                  const EncryptedConfig& enc,
                                  const std::string& node_id, LatencyModel latency) {
  ClusterConfig config = decrypt_config(enc, operator_kp, *ctx.ledger, ctx.leader);
  Did operator_did = did_from_keypair(operator_kp);
  // The secret alone cannot express revocation between rotations, so
  // private-mode joins also require a current registry listing.
  if (!ctx.public_mode &&
      !is_authorized(*ctx.ledger, ctx.vdic, operator_did, ActorRole::node_operator)) {
    throw Error(Errc::unauthorized,
                operator_did.str() + " is not listed as a node operator");
  }
  return ctx.cluster.join_follower(config, operator_did, node_id, latency);
}

RotationResult remove_operator(VdicContext& ctx, const KeyPair& leader_kp,
                               const Did& operator_did) {
  std::int64_t now = ctx.clock->unix_seconds();
  registry_remove(*ctx.ledger, leader_kp, ctx.vdic, operator_did,
                  ActorRole::node_operator, now);

  for (const auto& node : ctx.cluster.nodes()) {
    if (node.operator_did == operator_did && node.role == NodeRole::follower) {
      ctx.cluster.remove_node(node.node_id);
    }
  }

  RotationResult result;
  result.new_config = ctx.cluster.rotate_secret(random_bytes(32));
  TrustedActorRegistry registry = read_registry(*ctx.ledger, ctx.vdic);
  for (const auto& remaining : registry.node_operators) {
    Key32 agreement = agreement_key_of(*ctx.ledger, remaining);
    result.envelopes.push_back(
        encrypt_config(result.new_config, remaining, agreement, leader_kp));
  }
  return result;
}

void remove_dapp(VdicContext& ctx, const KeyPair& leader_kp, const Did& dapp) {
  registry_remove(*ctx.ledger, leader_kp, ctx.vdic, dapp, ActorRole::dapp,
                  ctx.clock->unix_seconds());
}

std::string publish_config(VdicContext& ctx, const KeyPair& leader_kp) {
  Bytes config_bytes = ctx.cluster.config().serialize();
  Key32 digest = sha256(config_bytes);
  std::string location =
      "pubcfg://" + to_hex(BytesView(digest.data(), digest.size()));
  ctx.store->put_at(location, config_bytes);

  DidDocument doc = ctx.ledger->resolve(ctx.vdic);
  std::string entry_id = public_config_entry_id(ctx.vdic);
  bool updated = false;
  for (auto& entry : doc.service) {
    if (entry.id == entry_id) {
      entry.service_endpoint = {location};
      updated = true;
    }
  }
  if (!updated) {
    doc.service.push_back({entry_id, kPublicConfigServiceType, {location}});
  }
  doc.version += 1;
  sign_document(doc, leader_kp, ctx.leader.str() + "#key-1",
                format_rfc3339(ctx.clock->unix_seconds()));
  ctx.ledger->publish(doc);
  ctx.public_mode = true;
  return location;
}

std::string join_public_follower(VdicContext& ctx, const Did& operator_did,
                                 const std::string& node_id, LatencyModel latency) {
  DidDocument doc = ctx.ledger->resolve(ctx.vdic);
  const ServiceEntry* entry = doc.find_service(public_config_entry_id(ctx.vdic));
  if (entry == nullptr || entry->service_endpoint.empty()) {
    throw Error(Errc::unauthorized, "VDIC has not published its configuration");
  }
  std::optional<Bytes> bytes = ctx.store->get(entry->service_endpoint.front());
  if (!bytes) {
    throw Error(Errc::not_found, "published configuration is missing from the store");
  }
  ClusterConfig config = ClusterConfig::from_json(parse_json(*bytes));
  return ctx.cluster.join_follower(config, operator_did, node_id, latency);
}

}  // namespace vdic
