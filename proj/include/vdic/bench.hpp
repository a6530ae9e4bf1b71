/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "vdic/cluster.hpp"

namespace vdic {

enum class ClockMode { virtual_clock, real_clock };

struct BenchConfig {
  std::vector<int> node_counts{1, 5, 10, 15};
  std::size_t file_size_bytes = 100 * 1024;
  int trials = 30;
  LatencyModel per_node_latency;
  std::uint64_t seed = 42;
  ClockMode clock_mode = ClockMode::virtual_clock;
  std::string target = "vdic";

  void validate() const;
};

struct BenchSample {
  std::string op;  // "read" | "write"
  int node_count = 0;
  int trial = 0;
  double elapsed_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchSample> samples;
  std::vector<std::string> issues;  // failed trials, with reasons
};

/// Times gateway writes to full replication: a fresh random payload per
/// trial, elapsed from the write request until every node has pinned.
/// Virtual-clock runs are reproducible for a fixed seed.
BenchResult run_write_benchmark(const BenchConfig& config);

/// Times gateway read round trips against a payload written once per node
/// count. The bearer token is acquired outside the timed region.
BenchResult run_read_benchmark(const BenchConfig& config);

struct SummaryRow {
  std::string op;
  std::string target;
  int node_count = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  int n = 0;
};

/// Mean and nearest-rank order statistics per (op, node_count) group.
std::vector<SummaryRow> summarize(const std::vector<BenchSample>& samples,
                                  const std::string& target = "vdic");

/// Header: op,target,node_count,trial,elapsed_ms
std::string samples_csv(const std::vector<BenchSample>& samples,
                        const std::string& target = "vdic");

/// Header: op,target,node_count,mean_ms,p50_ms,p95_ms,n
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace vdic
