/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "vdic/gateway.hpp"
#include "vdic/lifecycle.hpp"

namespace vdic {

void BenchConfig::validate() const {
  if (node_counts.empty()) {
    throw Error(Errc::invalid_argument, "node_counts must not be empty");
  }
  for (int n : node_counts) {
    if (n < 1) {
      throw Error(Errc::invalid_argument, "node counts must be at least 1");
    }
  }
  if (trials < 1) {
    throw Error(Errc::invalid_argument, "trials must be at least 1");
  }
}

namespace {

Key32 seed_key(std::mt19937_64& rng) {
  Key32 seed{};
  for (auto& byte : seed) {
    byte = static_cast<std::uint8_t>(rng());
  }
  return seed;
}

Bytes random_payload(std::mt19937_64& rng, std::size_t size) {
  Bytes payload(size);
  for (auto& byte : payload) {
    byte = static_cast<std::uint8_t>(rng());
  }
  return payload;
}

/// A minimal VDIC for timing: leader + vdic on a fresh in-memory ledger,
/// n-1 followers with the configured latency, and one DApp holding a
/// readwrite token whose ttl outlasts any run.
struct BenchRig {
  LedgerStore ledger;
  PresentationStore store;
  std::shared_ptr<Clock> clock;
  std::unique_ptr<VdicContext> ctx;
  std::unique_ptr<Gateway> gateway;
  std::string token;

  BenchRig(const BenchConfig& config, int node_count, std::mt19937_64& rng) {
    clock = config.clock_mode == ClockMode::virtual_clock
                ? std::static_pointer_cast<Clock>(std::make_shared<VirtualClock>())
                : std::static_pointer_cast<Clock>(std::make_shared<SystemClock>());
    std::int64_t now = clock->unix_seconds();

    KeyPair leader_kp = generate_keypair(BytesView(seed_key(rng)));
    Did leader = did_from_keypair(leader_kp);
    ledger.publish(create_did_document(leader, {leader}, leader_kp, now));

    CreateVdicOptions options;
    options.vdic_kp = generate_keypair(BytesView(seed_key(rng)));
    options.gateway.token_ttl_s = 1'000'000'000;
    options.latency_seed = rng();
    options.leader_latency = config.per_node_latency;
    ctx = std::make_unique<VdicContext>(create_vdic(
        ledger, store, leader_kp, "bench-" + std::to_string(node_count), clock,
        std::move(options)));

    for (int i = 1; i < node_count; ++i) {
      KeyPair operator_kp = generate_keypair(BytesView(seed_key(rng)));
      Did operator_did = did_from_keypair(operator_kp);
      ledger.publish(create_did_document(operator_did, {operator_did}, operator_kp, now));
      registry_add(ledger, leader_kp, ctx->vdic, operator_did,
                   ActorRole::node_operator, now);
      ctx->cluster.join_follower(ctx->cluster.config(), operator_did,
                                 "n" + std::to_string(i), config.per_node_latency);
    }

    KeyPair dapp_kp = generate_keypair(BytesView(seed_key(rng)));
    Did dapp = did_from_keypair(dapp_kp);
    ledger.publish(create_did_document(dapp, {dapp}, dapp_kp, now));
    registry_add(ledger, leader_kp, ctx->vdic, dapp, ActorRole::dapp, now);
    Credential access = issue_credential(
        leader_kp, leader, dapp, {kAccessCredentialType},
        {{"vdic", ctx->vdic.str()}, {"scope", "readwrite"}}, now);

    gateway = std::make_unique<Gateway>(make_gateway(*ctx));
    AuthChallenge challenge = gateway->request_challenge();
    Presentation vp =
        create_presentation(dapp_kp, dapp, {access}, challenge.nonce, now);
    token = gateway->authenticate(vp, challenge.nonce);
  }
};

double elapsed_ms_between(std::int64_t t0_us, std::int64_t t1_us) {
  return static_cast<double>(t1_us - t0_us) / 1000.0;
}

}  // namespace

BenchResult run_write_benchmark(const BenchConfig& config) {
  config.validate();
  BenchResult result;
  std::mt19937_64 rng(config.seed);
  for (int node_count : config.node_counts) {
    BenchRig rig(config, node_count, rng);
    for (int trial = 0; trial < config.trials; ++trial) {
      Bytes payload = random_payload(rng, config.file_size_bytes);
      try {
        std::int64_t t0 = rig.clock->now_us();
        rig.gateway->handle_write(rig.token, payload, WriteWait::all);
        std::int64_t t1 = rig.clock->now_us();
        result.samples.push_back(
            {"write", node_count, trial, elapsed_ms_between(t0, t1)});
      } catch (const Error& e) {
        result.issues.push_back("write n=" + std::to_string(node_count) +
                                " trial=" + std::to_string(trial) + ": " + e.what());
      }
    }
  }
  return result;
}

BenchResult run_read_benchmark(const BenchConfig& config) {
  config.validate();
  BenchResult result;
  std::mt19937_64 rng(config.seed);
  for (int node_count : config.node_counts) {
    BenchRig rig(config, node_count, rng);
    Bytes payload = random_payload(rng, config.file_size_bytes);
    Cid cid = rig.gateway->handle_write(rig.token, payload, WriteWait::all);
    for (int trial = 0; trial < config.trials; ++trial) {
      try {
        std::int64_t t0 = rig.clock->now_us();
        Bytes got = rig.gateway->handle_read(rig.token, cid);
        std::int64_t t1 = rig.clock->now_us();
        if (Cid::compute(got) != cid) {
          throw Error(Errc::conflict, "read returned bytes with the wrong hash");
        }
        result.samples.push_back(
            {"read", node_count, trial, elapsed_ms_between(t0, t1)});
      } catch (const Error& e) {
        result.issues.push_back("read n=" + std::to_string(node_count) +
                                " trial=" + std::to_string(trial) + ": " + e.what());
      }
    }
  }
  return result;
}

namespace {

double nearest_rank(const std::vector<double>& sorted, double quantile) {
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(sorted.size())));
  rank = std::max<std::size_t>(rank, 1);
  return sorted[rank - 1];
}

std::string format_ms(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<BenchSample>& samples,
                                  const std::string& target) {
  std::map<std::pair<std::string, int>, std::vector<double>> groups;
  for (const auto& sample : samples) {
    groups[{sample.op, sample.node_count}].push_back(sample.elapsed_ms);
  }
  std::vector<SummaryRow> rows;
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    double sum = 0;
    for (double v : values) sum += v;
    SummaryRow row;
    row.op = key.first;
    row.target = target;
    row.node_count = key.second;
    row.n = static_cast<int>(values.size());
    row.mean_ms = sum / static_cast<double>(values.size());
    row.p50_ms = nearest_rank(values, 0.50);
    row.p95_ms = nearest_rank(values, 0.95);
    rows.push_back(row);
  }
  return rows;
}

std::string samples_csv(const std::vector<BenchSample>& samples,
                        const std::string& target) {
  std::ostringstream out;
  out << "op,target,node_count,trial,elapsed_ms\n";
  for (const auto& s : samples) {
    out << s.op << "," << target << "," << s.node_count << "," << s.trial << ","
        << format_ms(s.elapsed_ms) << "\n";
  }
  return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "op,target,node_count,mean_ms,p50_ms,p95_ms,n\n";
  for (const auto& r : rows) {
    out << r.op << "," << r.target << "," << r.node_count << ","
        << format_ms(r.mean_ms) << "," << format_ms(r.p50_ms) << ","
        << format_ms(r.p95_ms) << "," << r.n << "\n";
  }
  return out.str();
}

}  // namespace vdic
