/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vdic/bytes.hpp"
#include "vdic/canonical.hpp"
#include "vdic/clock.hpp"
#include "vdic/identity.hpp"

namespace vdic {

/// Content identifier: "cidv0-sha256:" + lowercase hex SHA-256 of the bytes.
class Cid {
 public:
  Cid() = default;

  static Cid compute(BytesView content);
  static Cid parse(const std::string& text);

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const Cid& a, const Cid& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Cid& a, const Cid& b) { return a.value_ != b.value_; }
  friend bool operator<(const Cid& a, const Cid& b) { return a.value_ < b.value_; }

 private:
  explicit Cid(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

Cid compute_cid(BytesView content);

struct ClusterConfig {
  std::string cluster_name;
  Bytes secret;  // exactly 32 bytes
  std::string leader_peer;
  std::string replication_factor = "all";
  std::string created;  // RFC 3339

  Json to_json() const;
  static ClusterConfig from_json(const Json& j);
  Bytes serialize() const { return canonicalize(to_json()); }

  void validate() const;
};

ClusterConfig make_cluster_config(std::string cluster_name, std::string leader_peer,
                                  std::int64_t now_s);

struct LatencyModel {
  double base_ms = 0.0;
  double jitter_ms = 0.0;
};

enum class NodeRole { leader, follower };

struct NodeInfo {
  std::string node_id;
  Did operator_did;
  NodeRole role;
  LatencyModel latency;
  std::size_t pin_count;
};

enum class PinState { pinned, replicating, absent };

const char* pin_state_name(PinState s);

struct PinStatus {
  Cid cid;
  std::map<std::string, PinState> per_node;

  bool all_pinned() const;
  Json to_json() const;
};

struct ReplicationRecord {
  Cid cid;
  std::string node_id;
  std::int64_t pinned_at_us;
};

namespace detail {
class ClusterImpl;
}

/// Resolves when the written content is pinned on every node that was a
/// member when the write started (evicted nodes are excused). Waiting on a
/// virtual clock drives the event queue forward.
class CompletionHandle {
 public:
  CompletionHandle() = default;

  void wait();
  bool done() const;
  const Cid& cid() const { return cid_; }

 private:
  friend class ClusterHandle;
  friend class detail::ClusterImpl;
  CompletionHandle(std::shared_ptr<detail::ClusterImpl> impl, std::uint64_t write_id,
                   Cid cid)
      : impl_(std::move(impl)), write_id_(write_id), cid_(std::move(cid)) {}

  std::shared_ptr<detail::ClusterImpl> impl_;
  std::uint64_t write_id_ = 0;
  Cid cid_;
};

/// In-process cluster: one leader that accepts writes, follower nodes that
/// replicate everything (replication factor "all"), a shared membership
/// secret, and per-node injectable latency. Copies share the same cluster.
class ClusterHandle {
 public:
  ClusterHandle() = default;

  static ClusterHandle create(ClusterConfig config, const Did& leader_operator,
                              std::shared_ptr<Clock> clock,
                              std::uint64_t latency_seed = 0,
                              LatencyModel leader_latency = {});

  /// Admission is gated on the membership secret. The new node back-fills
  /// every pin the leader currently holds.
  std::string join_follower(const ClusterConfig& config, const Did& operator_did,
                            const std::string& node_id, LatencyModel latency);

  /// Leader-only write path. Pins on the leader immediately and schedules
  /// replication to every follower through its latency model.
  std::pair<Cid, CompletionHandle> add_and_pin(
      BytesView content, const std::optional<std::string>& origin_node_id = {});

  /// Reads from the leader by default, applying the serving node's latency.
  Bytes get(const Cid& cid, const std::optional<std::string>& node_id = {});

  PinStatus pin_status(const Cid& cid) const;

  void unpin(const Cid& cid);

  /// Swaps the membership secret on the handle and every current member
  /// atomically; joins with the old config are refused afterwards.
  ClusterConfig rotate_secret(Bytes new_secret);

  /// Drops a follower from membership and cancels its in-flight replication.
  void remove_node(const std::string& node_id);

  /// Blocks (or advances virtual time) until no replication is in flight.
  void wait_idle();

  ClusterConfig config() const;
  std::vector<NodeInfo> nodes() const;
  std::string leader_node_id() const;
  std::vector<ReplicationRecord> replication_log() const;
  std::vector<Cid> leader_pinset() const;
  std::shared_ptr<Clock> clock() const;

  /// Snapshot for file-backed state; requires quiescence.
  Json to_state_json();
  static ClusterHandle from_state_json(const Json& state, std::shared_ptr<Clock> clock,
                                       std::uint64_t latency_seed = 0);

  bool valid() const { return impl_ != nullptr; }

 private:
  std::shared_ptr<detail::ClusterImpl> impl_;
};

}  // namespace vdic
