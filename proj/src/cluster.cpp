/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <queue>
#include <random>
#include <set>
#include <thread>

#include "detail/json_util.hpp"
#include "vdic/crypto.hpp"
#include "vdic/errors.hpp"

namespace vdic {

namespace {

constexpr char kCidPrefix[] = "cidv0-sha256:";

}  // namespace

Cid Cid::compute(BytesView content) {
  Key32 digest = sha256(content);
  return Cid(std::string(kCidPrefix) +
             to_hex(BytesView(digest.data(), digest.size())));
}

Cid Cid::parse(const std::string& text) {
  if (text.rfind(kCidPrefix, 0) != 0) {
    throw Error(Errc::malformed, "not a cid: " + text);
  }
  std::string hex = text.substr(sizeof(kCidPrefix) - 1);
  if (from_hex(hex).size() != 32) {
    throw Error(Errc::malformed, "cid digest is not 32 bytes: " + text);
  }
  return Cid(text);
}

Cid compute_cid(BytesView content) { return Cid::compute(content); }

Json ClusterConfig::to_json() const {
  return Json{{"cluster_name", cluster_name},
              {"secret", to_hex(secret)},
              {"leader_peer", leader_peer},
              {"replication_factor", replication_factor},
              {"created", created}};
}

ClusterConfig ClusterConfig::from_json(const Json& j) {
  detail::require_keys(
      j, {"cluster_name", "secret", "leader_peer", "replication_factor", "created"},
      {}, "cluster config");
  ClusterConfig cfg;
  cfg.cluster_name = detail::get_string(j, "cluster_name", "cluster config");
  cfg.secret = from_hex(detail::get_string(j, "secret", "cluster config"));
  cfg.leader_peer = detail::get_string(j, "leader_peer", "cluster config");
  cfg.replication_factor =
      detail::get_string(j, "replication_factor", "cluster config");
  cfg.created = detail::get_string(j, "created", "cluster config");
  cfg.validate();
  return cfg;
}

void ClusterConfig::validate() const {
  if (secret.size() != 32) {
    throw Error(Errc::invalid_argument, "cluster secret must be exactly 32 bytes");
  }
  if (replication_factor != "all") {
    throw Error(Errc::invalid_argument, "only replication factor \"all\" is supported");
  }
}

ClusterConfig make_cluster_config(std::string cluster_name, std::string leader_peer,
                                  std::int64_t now_s) {
  ClusterConfig cfg;
  cfg.cluster_name = std::move(cluster_name);
  cfg.secret = random_bytes(32);
  cfg.leader_peer = std::move(leader_peer);
  cfg.created = format_rfc3339(now_s);
  return cfg;
}

const char* pin_state_name(PinState s) {
  switch (s) {
    case PinState::pinned: return "pinned";
    case PinState::replicating: return "replicating";
    case PinState::absent: return "absent";
  }
  return "absent";
}

bool PinStatus::all_pinned() const {
  for (const auto& [node, state] : per_node) {
    if (state != PinState::pinned) return false;
  }
  return !per_node.empty();
}

Json PinStatus::to_json() const {
  Json nodes = Json::object();
  for (const auto& [node, state] : per_node) {
    nodes[node] = pin_state_name(state);
  }
  return Json{{"cid", cid.str()}, {"per_node", std::move(nodes)}};
}

namespace detail {

class ClusterImpl : public std::enable_shared_from_this<ClusterImpl> {
 public:
  ClusterImpl(ClusterConfig config, std::shared_ptr<Clock> clock,
              std::uint64_t latency_seed)
      : config_(std::move(config)), clock_(std::move(clock)), rng_(latency_seed) {
    config_.validate();
  }

  ~ClusterImpl() { stop_worker(); }

  struct Node {
    std::string node_id;
    Did operator_did;
    NodeRole role;
    LatencyModel latency;
    Bytes secret_in_use;
    std::map<std::string, std::shared_ptr<const Bytes>> store;  // cid -> bytes
    std::set<std::string> pinset;
  };

  struct Event {
    std::int64_t due_us;
    std::uint64_t seq;
    std::string node_id;
    std::string cid;

    bool operator>(const Event& other) const {
      return std::tie(due_us, seq) > std::tie(other.due_us, other.seq);
    }
  };

  // A write is complete once `awaiting` empties; absence from the map
  // means complete (or cancelled by unpin), so completed entries are pruned.
  struct WriteTracker {
    std::string cid;
    std::set<std::string> awaiting;
  };

  void add_leader(const Did& operator_did, LatencyModel latency) {
    std::unique_lock lock(mutex_);
    Node node;
    node.node_id = "leader";
    node.operator_did = operator_did;
    node.role = NodeRole::leader;
    node.latency = latency;
    node.secret_in_use = config_.secret;
    nodes_.emplace(node.node_id, std::move(node));
    leader_id_ = "leader";
    start_worker_if_needed();
  }

  std::string join_follower(const ClusterConfig& config, const Did& operator_did,
                            const std::string& node_id, LatencyModel latency) {
    std::unique_lock lock(mutex_);
    apply_due_locked();
    if (config.secret != config_.secret) {
      throw Error(Errc::secret_mismatch,
                  "join refused: membership secret does not match");
    }
    if (nodes_.count(node_id) > 0) {
      throw Error(Errc::duplicate, "node id already in use: " + node_id);
    }
    if (node_id.empty()) {
      throw Error(Errc::invalid_argument, "node id must not be empty");
    }
    Node node;
    node.node_id = node_id;
    node.operator_did = operator_did;
    node.role = NodeRole::follower;
    node.latency = latency;
    node.secret_in_use = config_.secret;
    nodes_.emplace(node_id, std::move(node));

    // Back-fill everything the leader already pinned.
    const Node& leader = nodes_.at(leader_id_);
    std::int64_t now = clock_->now_us();
    for (const auto& cid : leader.pinset) {
      schedule_locked(now + draw_latency_locked(latency), node_id, cid);
    }
    worker_cv_.notify_all();
    return node_id;
  }

  std::pair<Cid, CompletionHandle> add_and_pin(
      BytesView content, const std::optional<std::string>& origin_node_id) {
    std::unique_lock lock(mutex_);
    apply_due_locked();
    const std::string origin = origin_node_id.value_or(leader_id_);
    auto it = nodes_.find(origin);
    if (it == nodes_.end()) {
      throw Error(Errc::not_found, "no such node: " + origin);
    }
    if (it->second.role != NodeRole::leader) {
      throw Error(Errc::read_only_follower,
                  "followers only replicate; writes go through the leader");
    }

    Cid cid = Cid::compute(content);
    Node& leader = it->second;
    auto existing = leader.store.find(cid.str());
    auto shared = std::make_shared<const Bytes>(content.begin(), content.end());
    if (existing != leader.store.end() && *existing->second != *shared) {
      throw Error(Errc::conflict, "cid collision with different content");
    }

    std::int64_t now = clock_->now_us();
    if (leader.pinset.insert(cid.str()).second) {
      leader.store[cid.str()] = shared;
      log_.push_back({cid, leader.node_id, now});
    }

    WriteTracker tracker;
    tracker.cid = cid.str();
    for (auto& [id, node] : nodes_) {
      if (node.role == NodeRole::leader) continue;
      if (node.pinset.count(cid.str()) > 0) continue;
      tracker.awaiting.insert(id);
      schedule_locked(now + draw_latency_locked(node.latency), id, cid.str());
    }
    std::uint64_t write_id = next_write_id_++;
    bool already_done = tracker.awaiting.empty();
    if (!already_done) {
      trackers_.emplace(write_id, std::move(tracker));
    }
    worker_cv_.notify_all();
    return {cid, CompletionHandle(shared_from_this(), write_id, cid)};
  }

  Bytes get(const Cid& cid, const std::optional<std::string>& node_id) {
    std::int64_t delay_us = 0;
    Bytes bytes;
    {
      std::unique_lock lock(mutex_);
      apply_due_locked();
      const std::string target = node_id.value_or(leader_id_);
      auto it = nodes_.find(target);
      if (it == nodes_.end()) {
        throw Error(Errc::not_found, "no such node: " + target);
      }
      const Node& node = it->second;
      auto entry = node.store.find(cid.str());
      if (entry == node.store.end() || node.pinset.count(cid.str()) == 0) {
        throw Error(Errc::not_found, "cid not pinned on " + target + ": " + cid.str());
      }
      bytes = *entry->second;
      delay_us = draw_latency_locked(node.latency);
    }
    clock_->advance_us(delay_us);
    {
      std::unique_lock lock(mutex_);
      apply_due_locked();
    }
    // Content addressing is checked on every read.
    if (Cid::compute(bytes) != cid) {
      throw Error(Errc::conflict, "stored bytes do not hash to the requested cid");
    }
    return bytes;
  }

  PinStatus pin_status(const Cid& cid) {
    std::unique_lock lock(mutex_);
    apply_due_locked();
    PinStatus status;
    status.cid = cid;
    std::set<std::string> replicating;
    for (const auto& e : heap_container()) {
      if (e.cid == cid.str()) replicating.insert(e.node_id);
    }
    for (const auto& [id, node] : nodes_) {
      PinState state = PinState::absent;
      if (node.pinset.count(cid.str()) > 0) {
        state = PinState::pinned;
      } else if (replicating.count(id) > 0) {
        state = PinState::replicating;
      }
      status.per_node[id] = state;
    }
    return status;
  }

  void unpin(const Cid& cid) {
    std::unique_lock lock(mutex_);
    apply_due_locked();
    bool found = false;
    for (auto& [id, node] : nodes_) {
      found = found || node.pinset.count(cid.str()) > 0;
    }
    if (!found) {
      throw Error(Errc::not_found, "cid not pinned anywhere: " + cid.str());
    }
    for (auto& [id, node] : nodes_) {
      node.pinset.erase(cid.str());
      node.store.erase(cid.str());
    }
    drop_events_locked([&](const Event& e) { return e.cid == cid.str(); });
    for (auto it2 = trackers_.begin(); it2 != trackers_.end();) {
      it2 = it2->second.cid == cid.str() ? trackers_.erase(it2) : std::next(it2);
    }
    done_cv_.notify_all();
  }

  ClusterConfig rotate_secret(Bytes new_secret) {
    std::unique_lock lock(mutex_);
    if (new_secret.size() != 32) {
      throw Error(Errc::invalid_argument, "cluster secret must be exactly 32 bytes");
    }
    if (new_secret == config_.secret) {
      throw Error(Errc::invalid_argument, "new secret equals the current one");
    }
    config_.secret = new_secret;
    for (auto& [id, node] : nodes_) {
      node.secret_in_use = new_secret;
    }
    return config_;
  }

  void remove_node(const std::string& node_id) {
    std::unique_lock lock(mutex_);
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) {
      throw Error(Errc::not_found, "no such node: " + node_id);
    }
    if (it->second.role == NodeRole::leader) {
      throw Error(Errc::invalid_argument, "the leader node cannot be removed");
    }
    nodes_.erase(it);
    drop_events_locked([&](const Event& e) { return e.node_id == node_id; });
    for (auto it2 = trackers_.begin(); it2 != trackers_.end();) {
      it2->second.awaiting.erase(node_id);
      it2 = it2->second.awaiting.empty() ? trackers_.erase(it2) : std::next(it2);
    }
    done_cv_.notify_all();
  }

  void wait_for_write(std::uint64_t write_id) {
    std::unique_lock lock(mutex_);
    auto finished = [&] {
      auto it = trackers_.find(write_id);
      return it == trackers_.end() || it->second.awaiting.empty();
    };
    if (clock_->is_virtual()) {
      pump_locked(finished);
    } else {
      done_cv_.wait(lock, finished);
    }
    trackers_.erase(write_id);
  }

  bool write_done(std::uint64_t write_id) {
    std::unique_lock lock(mutex_);
    auto it = trackers_.find(write_id);
    return it == trackers_.end() || it->second.awaiting.empty();
  }

  void wait_idle() {
    std::unique_lock lock(mutex_);
    auto drained = [&] { return events_.empty(); };
    if (clock_->is_virtual()) {
      pump_locked(drained);
    } else {
      done_cv_.wait(lock, drained);
    }
  }

  ClusterConfig config() const {
    std::unique_lock lock(mutex_);
    return config_;
  }

  std::vector<NodeInfo> node_infos() const {
    std::unique_lock lock(mutex_);
    std::vector<NodeInfo> out;
    for (const auto& [id, node] : nodes_) {
      out.push_back({node.node_id, node.operator_did, node.role, node.latency,
                     node.pinset.size()});
    }
    return out;
  }

  std::string leader_id() const {
    std::unique_lock lock(mutex_);
    return leader_id_;
  }

  std::vector<ReplicationRecord> replication_log() const {
    std::unique_lock lock(mutex_);
    return log_;
  }

  std::vector<Cid> leader_pinset() const {
    std::unique_lock lock(mutex_);
    std::vector<Cid> out;
    for (const auto& cid : nodes_.at(leader_id_).pinset) {
      out.push_back(Cid::parse(cid));
    }
    return out;
  }

  std::shared_ptr<Clock> clock() const { return clock_; }

  Json state_json() {
    wait_idle();
    std::unique_lock lock(mutex_);
    Json nodes = Json::array();
    Json blobs = Json::object();
    for (const auto& [id, node] : nodes_) {
      Json pins = Json::array();
      for (const auto& cid : node.pinset) {
        pins.push_back(cid);
        if (!blobs.contains(cid)) {
          blobs[cid] = to_base64(*node.store.at(cid));
        }
      }
      nodes.push_back(Json{{"node_id", node.node_id},
                           {"operator", node.operator_did.str()},
                           {"role", node.role == NodeRole::leader ? "leader" : "follower"},
                           {"base_us", static_cast<std::int64_t>(
                                           std::llround(node.latency.base_ms * 1000))},
                           {"jitter_us", static_cast<std::int64_t>(std::llround(
                                             node.latency.jitter_ms * 1000))},
                           {"pinset", std::move(pins)}});
    }
    Json log = Json::array();
    for (const auto& rec : log_) {
      log.push_back(Json{{"cid", rec.cid.str()},
                         {"node_id", rec.node_id},
                         {"pinned_at_us", rec.pinned_at_us}});
    }
    return Json{{"config", config_.to_json()},
                {"nodes", std::move(nodes)},
                {"blobs", std::move(blobs)},
                {"replication_log", std::move(log)}};
  }

  void restore_state(const Json& state) {
    std::unique_lock lock(mutex_);
    config_ = ClusterConfig::from_json(state.at("config"));
    std::map<std::string, std::shared_ptr<const Bytes>> blobs;
    for (const auto& [cid, b64] : state.at("blobs").items()) {
      blobs[cid] = std::make_shared<const Bytes>(from_base64(b64.get<std::string>()));
    }
    for (const auto& nj : state.at("nodes")) {
      Node node;
      node.node_id = nj.at("node_id").get<std::string>();
      node.operator_did = Did::parse(nj.at("operator").get<std::string>());
      node.role = nj.at("role").get<std::string>() == "leader" ? NodeRole::leader
                                                               : NodeRole::follower;
      node.latency.base_ms = nj.at("base_us").get<std::int64_t>() / 1000.0;
      node.latency.jitter_ms = nj.at("jitter_us").get<std::int64_t>() / 1000.0;
      node.secret_in_use = config_.secret;
      for (const auto& cid : nj.at("pinset")) {
        const std::string cid_str = cid.get<std::string>();
        node.pinset.insert(cid_str);
        node.store[cid_str] = blobs.at(cid_str);
      }
      if (node.role == NodeRole::leader) {
        leader_id_ = node.node_id;
      }
      nodes_.emplace(node.node_id, std::move(node));
    }
    for (const auto& rj : state.at("replication_log")) {
      log_.push_back({Cid::parse(rj.at("cid").get<std::string>()),
                      rj.at("node_id").get<std::string>(),
                      rj.at("pinned_at_us").get<std::int64_t>()});
    }
    start_worker_if_needed();
  }

 private:
  // Real clocks need a worker that fires due replication events; virtual
  // clocks drive events from wait()/pump call sites instead.
  void start_worker_if_needed() {
    if (clock_->is_virtual() || worker_.joinable()) {
      return;
    }
    worker_ = std::thread([this] { worker_loop(); });
  }

  void stop_worker() {
    {
      std::unique_lock lock(mutex_);
      stopping_ = true;
    }
    worker_cv_.notify_all();
    if (worker_.joinable()) {
      worker_.join();
    }
  }

  void worker_loop() {
    std::unique_lock lock(mutex_);
    while (!stopping_) {
      if (events_.empty()) {
        worker_cv_.wait(lock, [&] { return stopping_ || !events_.empty(); });
        continue;
      }
      std::int64_t due = events_.top().due_us;
      std::int64_t now = clock_->now_us();
      if (now >= due) {
        apply_due_locked();
        continue;
      }
      worker_cv_.wait_for(lock, std::chrono::microseconds(due - now));
    }
  }

  std::int64_t draw_latency_locked(const LatencyModel& latency) {
    double ms = latency.base_ms;
    if (latency.jitter_ms > 0) {
      std::uniform_real_distribution<double> jitter(0.0, latency.jitter_ms);
      ms += jitter(rng_);
    }
    return std::llround(ms * 1000.0);
  }

  void schedule_locked(std::int64_t due_us, const std::string& node_id,
                       const std::string& cid) {
    events_.push(Event{due_us, next_seq_++, node_id, cid});
  }

  void apply_due_locked() {
    std::int64_t now = clock_->now_us();
    while (!events_.empty() && events_.top().due_us <= now) {
      Event e = events_.top();
      events_.pop();
      apply_event_locked(e);
    }
  }

  void apply_event_locked(const Event& e) {
    auto it = nodes_.find(e.node_id);
    if (it != nodes_.end()) {
      Node& node = it->second;
      const Node& leader = nodes_.at(leader_id_);
      auto blob = leader.store.find(e.cid);
      if (blob != leader.store.end() && node.pinset.insert(e.cid).second) {
        node.store[e.cid] = blob->second;
        log_.push_back({Cid::parse(e.cid), e.node_id, e.due_us});
      }
    }
    for (auto tracker = trackers_.begin(); tracker != trackers_.end();) {
      if (tracker->second.cid == e.cid) {
        tracker->second.awaiting.erase(e.node_id);
      }
      if (tracker->second.awaiting.empty()) {
        tracker = trackers_.erase(tracker);
      } else {
        ++tracker;
      }
    }
    done_cv_.notify_all();
  }

  /// Virtual-clock event pump: advances time event by event until the
  /// predicate holds or the queue drains.
  template <typename Pred>
  void pump_locked(Pred done) {
    while (!done() && !events_.empty()) {
      Event e = events_.top();
      events_.pop();
      auto* vclock = static_cast<VirtualClock*>(clock_.get());
      vclock->advance_to_us(e.due_us);
      apply_event_locked(e);
    }
    apply_due_locked();
  }

  template <typename Pred>
  void drop_events_locked(Pred should_drop) {
    std::vector<Event> keep;
    while (!events_.empty()) {
      if (!should_drop(events_.top())) {
        keep.push_back(events_.top());
      }
      events_.pop();
    }
    for (auto& e : keep) {
      events_.push(std::move(e));
    }
  }

  const std::vector<Event>& heap_container() const {
    // priority_queue exposes no iteration; mirror into a scratch copy.
    scratch_events_.clear();
    std::priority_queue<Event, std::vector<Event>, std::greater<>> copy = events_;
    while (!copy.empty()) {
      scratch_events_.push_back(copy.top());
      copy.pop();
    }
    return scratch_events_;
  }

  mutable std::mutex mutex_;
  ClusterConfig config_;
  std::shared_ptr<Clock> clock_;
  std::mt19937_64 rng_;
  std::map<std::string, Node> nodes_;
  std::string leader_id_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  mutable std::vector<Event> scratch_events_;
  std::vector<ReplicationRecord> log_;
  std::map<std::uint64_t, WriteTracker> trackers_;
  std::uint64_t next_write_id_ = 1;
  std::uint64_t next_seq_ = 0;
  std::condition_variable worker_cv_;
  std::condition_variable done_cv_;
  std::thread worker_;
  bool stopping_ = false;
};

}  // namespace detail

void CompletionHandle::wait() {
  if (impl_) {
    impl_->wait_for_write(write_id_);
  }
}

bool CompletionHandle::done() const {
  return impl_ == nullptr || impl_->write_done(write_id_);
}

ClusterHandle ClusterHandle::create(ClusterConfig config, const Did& leader_operator,
                                    std::shared_ptr<Clock> clock,
                                    std::uint64_t latency_seed,
                                    LatencyModel leader_latency) {
  ClusterHandle handle;
  handle.impl_ = std::make_shared<detail::ClusterImpl>(std::move(config),
                                                       std::move(clock), latency_seed);
  handle.impl_->add_leader(leader_operator, leader_latency);
  return handle;
}

std::string ClusterHandle::join_follower(const ClusterConfig& config,
                                         const Did& operator_did,
                                         const std::string& node_id,
                                         LatencyModel latency) {
  return impl_->join_follower(config, operator_did, node_id, latency);
}

std::pair<Cid, CompletionHandle> ClusterHandle::add_and_pin(
    BytesView content, const std::optional<std::string>& origin_node_id) {
  return impl_->add_and_pin(content, origin_node_id);
}

Bytes ClusterHandle::get(const Cid& cid, const std::optional<std::string>& node_id) {
  return impl_->get(cid, node_id);
}

PinStatus ClusterHandle::pin_status(const Cid& cid) const {
  return impl_->pin_status(cid);
}

void ClusterHandle::unpin(const Cid& cid) { impl_->unpin(cid); }

ClusterConfig ClusterHandle::rotate_secret(Bytes new_secret) {
  return impl_->rotate_secret(std::move(new_secret));
}

void ClusterHandle::remove_node(const std::string& node_id) {
  impl_->remove_node(node_id);
}

void ClusterHandle::wait_idle() { impl_->wait_idle(); }

ClusterConfig ClusterHandle::config() const { return impl_->config(); }

std::vector<NodeInfo> ClusterHandle::nodes() const { return impl_->node_infos(); }

std::string ClusterHandle::leader_node_id() const { return impl_->leader_id(); }

std::vector<ReplicationRecord> ClusterHandle::replication_log() const {
  return impl_->replication_log();
}

std::vector<Cid> ClusterHandle::leader_pinset() const { return impl_->leader_pinset(); }

std::shared_ptr<Clock> ClusterHandle::clock() const { return impl_->clock(); }

Json ClusterHandle::to_state_json() { return impl_->state_json(); }

ClusterHandle ClusterHandle::from_state_json(const Json& state,
                                             std::shared_ptr<Clock> clock,
                                             std::uint64_t latency_seed) {
  ClusterHandle handle;
  handle.impl_ = std::make_shared<detail::ClusterImpl>(
      ClusterConfig::from_json(state.at("config")), std::move(clock), latency_seed);
  handle.impl_->restore_state(state);
  return handle;
}

}  // namespace vdic
