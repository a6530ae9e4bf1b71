/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vdic/cluster.hpp"
#include "vdic/credentials.hpp"
#include "vdic/gateway.hpp"
#include "vdic/registry.hpp"

namespace vdic {

/// Cluster config sealed to one operator: ephemeral-static encryption under
/// the recipient's agreement key, plus a leader signature over
/// recipient || ephemeral_public || nonce || ciphertext.
struct EncryptedConfig {
  Did recipient;
  Key32 ephemeral_public{};
  std::array<std::uint8_t, 24> nonce{};
  Bytes ciphertext;
  std::string sender_signature;  // base64

  Json to_json() const;
  static EncryptedConfig from_json(const Json& j);
};

struct AdmissionDecision {
  bool accepted = false;
  std::vector<std::string> reasons;
  std::optional<Credential> credential;
  std::optional<EncryptedConfig> encrypted_config;  // operators only
};

/// Leader-side state for one VDIC. The leader keypair itself is passed into
/// each operation rather than stored here.
struct VdicContext {
  Did vdic;
  Did leader;
  KeyPair vdic_kp;
  ClusterHandle cluster;
  GatewayConfig gateway_config;
  LedgerStore* ledger = nullptr;
  PresentationStore* store = nullptr;
  bool public_mode = false;
  std::shared_ptr<Clock> clock;
};

struct CreateVdicOptions {
  GatewayConfig gateway;
  std::optional<KeyPair> vdic_kp;  // fresh random pair unless supplied
  std::string leader_peer;         // derived from the name when empty
  std::uint64_t latency_seed = 0;
  LatencyModel leader_latency;
};

/// Publishes a VDIC DID with an empty registry and stands up a one-node
/// cluster under a fresh membership secret. The leader document must
/// already be on the ledger.
VdicContext create_vdic(LedgerStore& ledger, PresentationStore& store,
                        const KeyPair& leader_kp, const std::string& name,
                        std::shared_ptr<Clock> clock, CreateVdicOptions options = {});

Gateway make_gateway(VdicContext& ctx);

EncryptedConfig encrypt_config(const ClusterConfig& config, const Did& recipient,
                               const Key32& recipient_agreement_public,
                               const KeyPair& leader_kp);

/// Verifies the leader's signature against the ledger, then opens the box.
ClusterConfig decrypt_config(const EncryptedConfig& enc, const KeyPair& recipient_kp,
                             const LedgerStore& ledger, const Did& leader);

/// Admission applies the linked-presentation vetting: the applicant's DID
/// document must link at least one verifiable presentation with a valid
/// identity credential and one with a valid motive credential. Acceptance
/// lists the applicant, issues the operator credential, and seals the
/// current cluster config to them. Rejection changes no state.
AdmissionDecision process_operator_application(VdicContext& ctx,
                                               const KeyPair& leader_kp,
                                               const Did& applicant);

/// Same vetting; acceptance lists the DApp and issues an access credential
/// with the requested scope ("read" or "readwrite").
AdmissionDecision process_dapp_application(VdicContext& ctx, const KeyPair& leader_kp,
                                           const Did& applicant,
                                           const std::string& scope);

/// Decrypts the envelope and joins the cluster as a follower. In private
/// mode the operator must be listed in the registry; the shared secret
/// alone does not admit.
std::string onboard_operator_node(VdicContext& ctx, const KeyPair& operator_kp,
                                  const EncryptedConfig& enc,
                                  const std::string& node_id, LatencyModel latency);

struct RotationResult {
  ClusterConfig new_config;
  std::vector<EncryptedConfig> envelopes;  // one per remaining operator
};

/// Delists the operator, evicts its nodes, rotates the membership secret,
/// and seals the new config to every remaining operator.
RotationResult remove_operator(VdicContext& ctx, const KeyPair& leader_kp,
                               const Did& operator_did);

void remove_dapp(VdicContext& ctx, const KeyPair& leader_kp, const Did& dapp);

inline constexpr char kPublicConfigServiceType[] = "VdicPublicConfiguration";

/// Stores the plaintext cluster config publicly and points a service entry
/// of the VDIC document at it; afterwards anyone may join as a follower.
/// Returns the public location.
std::string publish_config(VdicContext& ctx, const KeyPair& leader_kp);

/// Follower join for public VDICs: fetches the published config from the
/// store and joins without a registry listing.
std::string join_public_follower(VdicContext& ctx, const Did& operator_did,
                                 const std::string& node_id, LatencyModel latency);

}  // namespace vdic
