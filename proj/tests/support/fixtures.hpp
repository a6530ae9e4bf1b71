/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <random>

#include "vdic/credentials.hpp"
#include "vdic/identity.hpp"

namespace vdic::testing {

struct Actor {
  KeyPair kp;
  Did did;
};

inline Key32 seed_from(std::mt19937_64& rng) {
  Key32 seed{};
  for (auto& byte : seed) byte = static_cast<std::uint8_t>(rng());
  return seed;
}

inline KeyPair seeded_keypair(std::mt19937_64& rng) {
  Key32 seed = seed_from(rng);
  return generate_keypair(BytesView(seed.data(), seed.size()));
}

/// Generates a keypair and publishes a self-controlled v1 document.
inline Actor publish_actor(LedgerStore& ledger, std::mt19937_64& rng,
                           std::int64_t now_s) {
  Actor actor;
  actor.kp = seeded_keypair(rng);
  actor.did = did_from_keypair(actor.kp);
  ledger.publish(create_did_document(actor.did, {actor.did}, actor.kp, now_s));
  return actor;
}

/// Issues identity and motive credentials from `issuer`, wraps both in one
/// presentation, and links it from the applicant's DID document.
inline std::string link_identity_and_motive(LedgerStore& ledger,
                                            PresentationStore& store,
                                            const Actor& applicant,
                                            const Actor& issuer,
                                            const std::string& motive,
                                            std::int64_t now_s) {
  Credential identity = issue_credential(
      issuer.kp, issuer.did, applicant.did, {kIdentityCredentialType},
      {{"name", "operator " + applicant.did.str().substr(9, 6)}}, now_s);
  Credential motive_cred =
      issue_credential(issuer.kp, issuer.did, applicant.did, {kMotiveCredentialType},
                       {{"motive", motive}}, now_s);
  Presentation vp = create_presentation(applicant.kp, applicant.did,
                                        {identity, motive_cred}, "", now_s);
  DidDocument doc = ledger.resolve(applicant.did);
  return link_presentation(store, ledger, applicant.kp, doc, vp, now_s).location;
}

}  // namespace vdic::testing
