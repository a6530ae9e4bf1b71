/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "vdic/identity.hpp"

namespace vdic {

enum class ActorRole { node_operator, dapp };

const char* actor_role_name(ActorRole role);

/// Leader-controlled lists embedded in the VDIC DID document's service
/// section. Membership in the role list *is* the authorization status;
/// delisting is revocation.
struct TrustedActorRegistry {
  Did vdic;
  Did leader;
  std::vector<Did> node_operators;
  std::vector<Did> dapps;
  std::int64_t version = 0;

  bool lists(const Did& actor, ActorRole role) const;
  Json to_json() const;
};

/// Publishes the VDIC document (controller = leader) with both registry
/// service entries present and empty. Returns the published document.
DidDocument init_registry(LedgerStore& ledger, const KeyPair& leader_kp,
                          const Did& leader, const KeyPair& vdic_kp,
                          const Did& vdic, std::int64_t now_s);

/// Appends `actor` to the role's list. Rejects duplicates, unresolvable
/// actors, and non-controller keys. Returns the new document version.
std::int64_t registry_add(LedgerStore& ledger, const KeyPair& leader_kp,
                          const Did& vdic, const Did& actor, ActorRole role,
                          std::int64_t now_s);

/// Delists `actor`. Returns the new document version.
std::int64_t registry_remove(LedgerStore& ledger, const KeyPair& leader_kp,
                             const Did& vdic, const Did& actor, ActorRole role,
                             std::int64_t now_s);

TrustedActorRegistry read_registry(const LedgerStore& ledger, const Did& vdic);

/// False for unknown VDICs and unlisted actors; never throws.
bool is_authorized(const LedgerStore& ledger, const Did& vdic, const Did& actor,
                   ActorRole role);

}  // namespace vdic
