/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

namespace vdic {

/// Time source shared by the cluster simulator, the gateway, and the
/// benchmark harness. now_us() is microseconds since the Unix epoch.
/// Virtual clocks only move when advanced, which makes latency injection
/// and token-expiry tests deterministic.
class Clock {
 public:
  virtual ~Clock() = default;

  virtual std::int64_t now_us() = 0;

  /// Real clocks sleep; virtual clocks jump forward.
  virtual void advance_us(std::int64_t delta_us) = 0;

  virtual bool is_virtual() const = 0;

  std::int64_t unix_seconds() { return now_us() / 1'000'000; }
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_us() override;
  void advance_us(std::int64_t delta_us) override;
  bool is_virtual() const override { return false; }
};

class VirtualClock final : public Clock {
 public:
  /// Starts at 2026-01-01T00:00:00Z unless given an explicit epoch.
  explicit VirtualClock(std::int64_t start_us = 1'767'225'600'000'000);

  std::int64_t now_us() override { return now_us_.load(); }
  void advance_us(std::int64_t delta_us) override;
  bool is_virtual() const override { return true; }

  /// Moves time to an absolute instant; never backwards.
  void advance_to_us(std::int64_t t_us);
  void set_us(std::int64_t t_us) { now_us_.store(t_us); }

 private:
  std::atomic<std::int64_t> now_us_;
};

std::shared_ptr<Clock> system_clock();

/// "YYYY-MM-DDTHH:MM:SSZ", UTC, second precision.
std::string format_rfc3339(std::int64_t unix_seconds);

/// Strict parse of the format produced by format_rfc3339.
/// Throws Errc::malformed.
std::int64_t parse_rfc3339(const std::string& stamp);

}  // namespace vdic
