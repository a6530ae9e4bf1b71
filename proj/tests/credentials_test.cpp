/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/credentials.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "vdic/errors.hpp"

using namespace vdic;
using vdic::testing::Actor;
using vdic::testing::publish_actor;

namespace {

struct CredFixture {
  LedgerStore ledger;
  std::mt19937_64 rng{47};
  Actor issuer;
  Actor holder;

  CredFixture() {
    issuer = publish_actor(ledger, rng, 0);
    holder = publish_actor(ledger, rng, 0);
  }
};

}  // namespace

TEST(Credentials, IssueAndVerifyOperatorCredential) {
  CredFixture fx;
  Credential cred = issue_credential(
      fx.issuer.kp, fx.issuer.did, fx.holder.did, {kNodeOperatorCredentialType},
      {{"vdic", "did:vdic:" + std::string(32, '1')}, {"role", "node_operator"}}, 100);
  EXPECT_TRUE(cred.has_type(kCredentialBaseType));
  EXPECT_TRUE(cred.has_type(kNodeOperatorCredentialType));
  EXPECT_TRUE(verify_credential(cred, fx.ledger).valid());
}

TEST(Credentials, AccessCredentialScopeClaim) {
  CredFixture fx;
  Credential cred =
      issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                       {kAccessCredentialType}, {{"scope", "readwrite"}}, 100);
  EXPECT_EQ(cred.claim("scope"), std::optional<std::string>("readwrite"));
  EXPECT_TRUE(verify_credential(cred, fx.ledger).valid());
}

TEST(Credentials, TamperedClaimFailsSignature) {
  CredFixture fx;
  Credential cred = issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                                     {kIdentityCredentialType},
                                     {{"name", "alpha"}}, 100);
  cred.claims["name"] = "alphb";
  VerificationResult result = verify_credential(cred, fx.ledger);
  ASSERT_FALSE(result.valid());
  EXPECT_EQ(result.failures[0].first, "signature");
}

TEST(Credentials, UnpublishedIssuerFailsResolution) {
  CredFixture fx;
  KeyPair ghost_kp = generate_keypair();
  Did ghost = did_from_keypair(ghost_kp);
  Credential cred = issue_credential(ghost_kp, ghost, fx.holder.did,
                                     {kIdentityCredentialType}, {}, 100);
  VerificationResult result = verify_credential(cred, fx.ledger);
  ASSERT_FALSE(result.valid());
  EXPECT_EQ(result.failures[0].first, "issuer-resolution");
}

TEST(Credentials, SwappedSignatureFailsVerification) {
  CredFixture fx;
  Credential a = issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                                  {kIdentityCredentialType}, {{"n", "1"}}, 100);
  Credential b = issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                                  {kIdentityCredentialType}, {{"n", "2"}}, 100);
  a.proof->signature = b.proof->signature;
  VerificationResult result = verify_credential(a, fx.ledger);
  ASSERT_FALSE(result.valid());
  EXPECT_EQ(result.failures[0].first, "signature");
}

TEST(Presentations, CreateAndVerifyWithNonce) {
  CredFixture fx;
  Credential cred = issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                                     {kIdentityCredentialType}, {}, 100);
  Presentation vp =
      create_presentation(fx.holder.kp, fx.holder.did, {cred}, "nonce-1", 200);
  EXPECT_TRUE(verify_presentation(vp, fx.ledger, std::nullopt).valid());
  EXPECT_TRUE(verify_presentation(vp, fx.ledger, std::string("nonce-1")).valid());
}

TEST(Presentations, StaleNonceFails) {
  CredFixture fx;
  Presentation vp = create_presentation(fx.holder.kp, fx.holder.did, {}, "old", 200);
  VerificationResult result =
      verify_presentation(vp, fx.ledger, std::string("fresh"));
  ASSERT_FALSE(result.valid());
  EXPECT_EQ(result.failures[0].first, "holder-binding");
}

TEST(Presentations, ForeignSubjectRejectedAtCreation) {
  CredFixture fx;
  Credential cred = issue_credential(fx.issuer.kp, fx.issuer.did, fx.issuer.did,
                                     {kIdentityCredentialType}, {}, 100);
  EXPECT_THROW(create_presentation(fx.holder.kp, fx.holder.did, {cred}, "", 200),
               Error);
}

TEST(Presentations, CarriesIdentityAndMotiveTogether) {
  CredFixture fx;
  Credential identity = issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                                         {kIdentityCredentialType}, {}, 100);
  Credential motive =
      issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                       {kMotiveCredentialType}, {{"motive", "data_availability"}}, 100);
  Presentation vp = create_presentation(fx.holder.kp, fx.holder.did,
                                        {identity, motive}, "", 200);
  EXPECT_EQ(vp.credentials.size(), 2u);
  EXPECT_TRUE(verify_presentation(vp, fx.ledger).valid());
  for (const auto& cred : vp.credentials) {
    EXPECT_TRUE(verify_credential(cred, fx.ledger).valid());
  }
}

TEST(Presentations, EmbeddedUnpublishedIssuerSurfaces) {
  CredFixture fx;
  KeyPair ghost_kp = generate_keypair();
  Did ghost = did_from_keypair(ghost_kp);
  Credential cred = issue_credential(ghost_kp, ghost, fx.holder.did,
                                     {kIdentityCredentialType}, {}, 100);
  Presentation vp = create_presentation(fx.holder.kp, fx.holder.did, {cred}, "", 200);
  VerificationResult result = verify_presentation(vp, fx.ledger);
  ASSERT_FALSE(result.valid());
  bool has_issuer_failure = false;
  for (const auto& [check, detail] : result.failures) {
    has_issuer_failure = has_issuer_failure || check == "issuer-resolution";
  }
  EXPECT_TRUE(has_issuer_failure);
}

TEST(Presentations, SignVerifyRoundTripProperty) {
  LedgerStore ledger;
  std::mt19937_64 rng(53);
  for (int i = 0; i < 25; ++i) {
    Actor issuer = publish_actor(ledger, rng, 0);
    Actor holder = publish_actor(ledger, rng, 0);
    std::map<std::string, std::string> claims;
    int n = static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
      claims["k" + std::to_string(rng() % 100)] = "v" + std::to_string(rng());
    }
    Credential cred =
        issue_credential(issuer.kp, issuer.did, holder.did,
                         {kIdentityCredentialType}, claims, 100 + i);
    Presentation vp = create_presentation(holder.kp, holder.did, {cred},
                                          std::to_string(rng()), 200 + i);
    EXPECT_TRUE(verify_credential(cred, ledger).valid());
    EXPECT_TRUE(verify_presentation(vp, ledger, vp.nonce).valid());
  }
}

TEST(Presentations, SingleByteMutationNeverVerifies) {
  CredFixture fx;
  Credential cred = issue_credential(fx.issuer.kp, fx.issuer.did, fx.holder.did,
                                     {kIdentityCredentialType},
                                     {{"name", "mutation target"}}, 100);
  Bytes serialized = canonicalize(cred.to_json());
  std::mt19937_64 rng(59);
  int mutated_accepts = 0;
  for (int i = 0; i < 300; ++i) {
    Bytes copy = serialized;
    size_t pos = rng() % copy.size();
    std::uint8_t delta = static_cast<std::uint8_t>(1 + rng() % 255);
    copy[pos] ^= delta;
    try {
      Credential parsed = Credential::from_json(parse_json(copy));
      if (canonicalize(parsed.to_json()) != serialized &&
          verify_credential(parsed, fx.ledger).valid()) {
        ++mutated_accepts;
      }
    } catch (const Error&) {
      // rejected at parse: fine
    } catch (const Json::exception&) {
    }
  }
  EXPECT_EQ(mutated_accepts, 0);
}

TEST(PresentationStore, LinkAndFetchRoundTrip) {
  LedgerStore ledger;
  PresentationStore store;
  std::mt19937_64 rng(61);
  Actor issuer = publish_actor(ledger, rng, 0);
  Actor holder = publish_actor(ledger, rng, 0);
  Credential cred = issue_credential(issuer.kp, issuer.did, holder.did,
                                     {kIdentityCredentialType}, {}, 100);
  Presentation vp = create_presentation(holder.kp, holder.did, {cred}, "", 200);

  DidDocument doc = ledger.resolve(holder.did);
  auto [location, version] = link_presentation(store, ledger, holder.kp, doc, vp, 300);
  EXPECT_EQ(version, 2);

  auto fetched = fetch_linked_presentations(holder.did, ledger, store);
  ASSERT_EQ(fetched.size(), 1u);
  EXPECT_EQ(fetched[0].location, location);
  EXPECT_TRUE(fetched[0].result.valid());
  EXPECT_EQ(fetched[0].presentation->serialize(), vp.serialize());
  EXPECT_EQ(*store.get(location), vp.serialize());
}

TEST(PresentationStore, TwoLinksTwoDistinctLocations) {
  LedgerStore ledger;
  PresentationStore store;
  std::mt19937_64 rng(67);
  Actor holder = publish_actor(ledger, rng, 0);
  Presentation vp1 = create_presentation(holder.kp, holder.did, {}, "a", 100);
  Presentation vp2 = create_presentation(holder.kp, holder.did, {}, "b", 100);

  auto r1 = link_presentation(store, ledger, holder.kp, ledger.resolve(holder.did),
                              vp1, 100);
  auto r2 = link_presentation(store, ledger, holder.kp, ledger.resolve(holder.did),
                              vp2, 100);
  EXPECT_NE(r1.location, r2.location);
  EXPECT_EQ(fetch_linked_presentations(holder.did, ledger, store).size(), 2u);
}

TEST(PresentationStore, DanglingLocationReportsFetchFailure) {
  LedgerStore ledger;
  PresentationStore store;
  std::mt19937_64 rng(71);
  Actor holder = publish_actor(ledger, rng, 0);

  DidDocument doc = ledger.resolve(holder.did);
  doc.version += 1;
  doc.service.push_back({holder.did.str() + "#vp-1", kLinkedPresentationServiceType,
                         {"vpstore://deadbeef"}});
  sign_document(doc, holder.kp, holder.did.str() + "#key-1", format_rfc3339(0));
  ledger.publish(doc);

  auto fetched = fetch_linked_presentations(holder.did, ledger, store);
  ASSERT_EQ(fetched.size(), 1u);
  ASSERT_FALSE(fetched[0].result.valid());
  EXPECT_EQ(fetched[0].result.failures[0].first, "fetch");
}

TEST(PresentationStore, NoLinkedEntriesEmptyList) {
  LedgerStore ledger;
  PresentationStore store;
  std::mt19937_64 rng(73);
  Actor holder = publish_actor(ledger, rng, 0);
  EXPECT_TRUE(fetch_linked_presentations(holder.did, ledger, store).empty());
  EXPECT_THROW(
      fetch_linked_presentations(did_from_keypair(generate_keypair()), ledger, store),
      Error);
}

TEST(PresentationStore, LocationsAreImmutable) {
  PresentationStore store;
  store.put_at("x://one", to_bytes("payload"));
  EXPECT_NO_THROW(store.put_at("x://one", to_bytes("payload")));
  EXPECT_THROW(store.put_at("x://one", to_bytes("other")), Error);
}
