/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/registry.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "vdic/errors.hpp"

using namespace vdic;
using vdic::testing::Actor;
using vdic::testing::publish_actor;
using vdic::testing::seeded_keypair;

namespace {

struct RegistryFixture {
  LedgerStore ledger;
  std::mt19937_64 rng{79};
  Actor leader;
  KeyPair vdic_kp;
  Did vdic;

  RegistryFixture() {
    leader = publish_actor(ledger, rng, 0);
    vdic_kp = seeded_keypair(rng);
    vdic = did_from_keypair(vdic_kp);
    init_registry(ledger, leader.kp, leader.did, vdic_kp, vdic, 0);
  }

  Actor new_actor() { return publish_actor(ledger, rng, 0); }
};

}  // namespace

TEST(Registry, FreshInitIsEmpty) {
  RegistryFixture fx;
  TrustedActorRegistry registry = read_registry(fx.ledger, fx.vdic);
  EXPECT_TRUE(registry.node_operators.empty());
  EXPECT_TRUE(registry.dapps.empty());
  EXPECT_EQ(registry.version, 1);
  EXPECT_EQ(registry.leader, fx.leader.did);
}

TEST(Registry, DocumentShapeMatchesServiceSection) {
  RegistryFixture fx;
  DidDocument doc = fx.ledger.resolve(fx.vdic);
  EXPECT_EQ(doc.controller, std::vector<Did>{fx.leader.did});
  const ServiceEntry* ops = doc.find_service(fx.vdic.str() + "#node_operators");
  const ServiceEntry* dapps = doc.find_service(fx.vdic.str() + "#dapps");
  ASSERT_NE(ops, nullptr);
  ASSERT_NE(dapps, nullptr);
  EXPECT_EQ(ops->type, "LinkedDomains");
  EXPECT_EQ(dapps->type, "LinkedDomains");
  EXPECT_TRUE(ops->service_endpoint.empty());
}

TEST(Registry, InitWithUnpublishedLeaderFails) {
  LedgerStore ledger;
  KeyPair leader_kp = generate_keypair();
  KeyPair vdic_kp = generate_keypair();
  EXPECT_THROW(init_registry(ledger, leader_kp, did_from_keypair(leader_kp), vdic_kp,
                             did_from_keypair(vdic_kp), 0),
               Error);
}

TEST(Registry, AddListsOperator) {
  RegistryFixture fx;
  Actor op = fx.new_actor();
  registry_add(fx.ledger, fx.leader.kp, fx.vdic, op.did, ActorRole::node_operator, 1);
  TrustedActorRegistry registry = read_registry(fx.ledger, fx.vdic);
  EXPECT_EQ(registry.node_operators, std::vector<Did>{op.did});
  EXPECT_TRUE(is_authorized(fx.ledger, fx.vdic, op.did, ActorRole::node_operator));
}

TEST(Registry, DuplicateAddRejectedVersionUnchanged) {
  RegistryFixture fx;
  Actor op = fx.new_actor();
  registry_add(fx.ledger, fx.leader.kp, fx.vdic, op.did, ActorRole::node_operator, 1);
  std::int64_t version = read_registry(fx.ledger, fx.vdic).version;
  try {
    registry_add(fx.ledger, fx.leader.kp, fx.vdic, op.did, ActorRole::node_operator, 2);
    FAIL() << "expected duplicate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate);
  }
  EXPECT_EQ(read_registry(fx.ledger, fx.vdic).version, version);
}

TEST(Registry, NonLeaderKeyRejectedLedgerUnchanged) {
  RegistryFixture fx;
  Actor op = fx.new_actor();
  Actor mallory = fx.new_actor();
  std::size_t entries_before = fx.ledger.size();
  try {
    registry_add(fx.ledger, mallory.kp, fx.vdic, op.did, ActorRole::node_operator, 1);
    FAIL() << "expected unauthorized";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unauthorized);
  }
  EXPECT_EQ(fx.ledger.size(), entries_before);
  EXPECT_TRUE(read_registry(fx.ledger, fx.vdic).node_operators.empty());
}

TEST(Registry, UnresolvableActorRejected) {
  RegistryFixture fx;
  Did ghost = did_from_keypair(generate_keypair());
  EXPECT_THROW(
      registry_add(fx.ledger, fx.leader.kp, fx.vdic, ghost, ActorRole::dapp, 1),
      Error);
}

TEST(Registry, AddThenRemoveEmpties) {
  RegistryFixture fx;
  Actor dapp = fx.new_actor();
  registry_add(fx.ledger, fx.leader.kp, fx.vdic, dapp.did, ActorRole::dapp, 1);
  registry_remove(fx.ledger, fx.leader.kp, fx.vdic, dapp.did, ActorRole::dapp, 2);
  EXPECT_TRUE(read_registry(fx.ledger, fx.vdic).dapps.empty());
  EXPECT_FALSE(is_authorized(fx.ledger, fx.vdic, dapp.did, ActorRole::dapp));
}

TEST(Registry, RemoveUnlistedFails) {
  RegistryFixture fx;
  Actor op = fx.new_actor();
  try {
    registry_remove(fx.ledger, fx.leader.kp, fx.vdic, op.did,
                    ActorRole::node_operator, 1);
    FAIL() << "expected not_found";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_found);
  }
}

TEST(Registry, InsertionOrderPreserved) {
  RegistryFixture fx;
  std::vector<Did> ops;
  for (int i = 0; i < 3; ++i) {
    Actor op = fx.new_actor();
    registry_add(fx.ledger, fx.leader.kp, fx.vdic, op.did, ActorRole::node_operator,
                 i);
    ops.push_back(op.did);
  }
  std::vector<Did> dapps;
  for (int i = 0; i < 2; ++i) {
    Actor dapp = fx.new_actor();
    registry_add(fx.ledger, fx.leader.kp, fx.vdic, dapp.did, ActorRole::dapp, i);
    dapps.push_back(dapp.did);
  }
  TrustedActorRegistry registry = read_registry(fx.ledger, fx.vdic);
  EXPECT_EQ(registry.node_operators, ops);
  EXPECT_EQ(registry.dapps, dapps);
}

TEST(Registry, UnknownVdicIsUnauthorized) {
  RegistryFixture fx;
  Did ghost = did_from_keypair(generate_keypair());
  EXPECT_FALSE(is_authorized(fx.ledger, ghost, fx.leader.did, ActorRole::dapp));
}

// The registry view equals a fold over the operation log: random add/remove
// sequences, set semantics with insertion order.
TEST(Registry, ViewEqualsFoldOfOperationLog) {
  RegistryFixture fx;
  std::vector<Actor> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(fx.new_actor());
  std::vector<Did> model;  // expected node_operators list
  for (int step = 0; step < 60; ++step) {
    const Actor& actor = pool[fx.rng() % pool.size()];
    bool listed = std::find(model.begin(), model.end(), actor.did) != model.end();
    if (!listed && fx.rng() % 2 == 0) {
      registry_add(fx.ledger, fx.leader.kp, fx.vdic, actor.did,
                   ActorRole::node_operator, step);
      model.push_back(actor.did);
    } else if (listed) {
      registry_remove(fx.ledger, fx.leader.kp, fx.vdic, actor.did,
                      ActorRole::node_operator, step);
      model.erase(std::find(model.begin(), model.end(), actor.did));
    }
    EXPECT_EQ(read_registry(fx.ledger, fx.vdic).node_operators, model);
    for (const auto& a : pool) {
      bool in_model = std::find(model.begin(), model.end(), a.did) != model.end();
      EXPECT_EQ(is_authorized(fx.ledger, fx.vdic, a.did, ActorRole::node_operator),
                in_model);
    }
  }
}

TEST(Registry, ReplayFromAppendLogYieldsIdenticalView) {
  RegistryFixture fx;
  for (int i = 0; i < 3; ++i) {
    Actor op = fx.new_actor();
    registry_add(fx.ledger, fx.leader.kp, fx.vdic, op.did, ActorRole::node_operator,
                 i);
  }
  TrustedActorRegistry direct = read_registry(fx.ledger, fx.vdic);

  // Rebuild a second ledger from the entries and compare views.
  LedgerStore replayed;
  for (const auto& entry : fx.ledger.entries()) {
    replayed.publish(entry.document);
  }
  TrustedActorRegistry from_replay = read_registry(replayed, fx.vdic);
  EXPECT_EQ(canonicalize(direct.to_json()), canonicalize(from_replay.to_json()));
}
