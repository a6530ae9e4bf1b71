/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/clock.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <thread>

#include "vdic/errors.hpp"

namespace vdic {

std::int64_t SystemClock::now_us() {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void SystemClock::advance_us(std::int64_t delta_us) {
  if (delta_us > 0) {
    std::this_thread::sleep_for(std::chrono::microseconds(delta_us));
  }
}

VirtualClock::VirtualClock(std::int64_t start_us) : now_us_(start_us) {}

void VirtualClock::advance_us(std::int64_t delta_us) {
  if (delta_us > 0) {
    now_us_.fetch_add(delta_us);
  }
}

void VirtualClock::advance_to_us(std::int64_t t_us) {
  std::int64_t cur = now_us_.load();
  while (cur < t_us && !now_us_.compare_exchange_weak(cur, t_us)) {
  }
}

std::shared_ptr<Clock> system_clock() {
  static auto instance = std::make_shared<SystemClock>();
  return instance;
}

std::string format_rfc3339(std::int64_t unix_seconds) {
  std::time_t t = static_cast<std::time_t>(unix_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

std::int64_t parse_rfc3339(const std::string& stamp) {
  std::tm tm{};
  char tail = '\0';
  int matched = std::sscanf(stamp.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c",
                            &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                            &tm.tm_min, &tm.tm_sec, &tail);
  if (matched != 7 || tail != 'Z' || stamp.size() != 20) {
    throw Error(Errc::malformed, "invalid RFC 3339 timestamp: " + stamp);
  }
  if (tm.tm_mon < 1 || tm.tm_mon > 12 || tm.tm_mday < 1 || tm.tm_mday > 31 ||
      tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 60) {
    throw Error(Errc::malformed, "out-of-range RFC 3339 timestamp: " + stamp);
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  std::time_t t = timegm(&tm);
  if (t == static_cast<std::time_t>(-1)) {
    throw Error(Errc::malformed, "unrepresentable RFC 3339 timestamp: " + stamp);
  }
  return static_cast<std::int64_t>(t);
}

}  // namespace vdic
