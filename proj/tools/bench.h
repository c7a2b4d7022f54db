// Copyright 2026 The kvote Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Benchmark campaigns: a plan of generated instance families, each solved
// for a range of k by the full sweep, summarized per family.
//
// Plan file syntax, one directive per line, '#' starts a comment:
//
//   time_limit 60
//   run n=50 m=30 mode=uniform seeds=1-5 k=all
//   run n=50 m=30 mode=biased:0.25 seeds=1,2,3 k=1-10
//
// time_limit applies per solve and may appear once, before or after the run
// lines. seeds takes a range "a-b" or a comma list; k takes "all", "a-b" or a
// single value. Omitted seeds default to 1-5 and omitted k to all.

#ifndef KVOTE_TOOLS_BENCH_H_
#define KVOTE_TOOLS_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kvote/bnb.h"
#include "kvote/gen_io.h"

namespace kvote::cli {

struct BenchEntry {
  int n = 0;
  int m = 0;
  GenMode mode = GenMode::Uniform();
  std::vector<std::uint64_t> seeds;
  int k_min = 1;
  // nullopt = n.
  std::optional<int> k_max;
  int line = 0;
};

struct BenchPlan {
  std::vector<BenchEntry> entries;
  double time_limit_s = 60.0;
};

// Throws ParseError with the offending line on malformed input and
// std::invalid_argument for a plan without run lines.
BenchPlan parse_plan(std::istream& in);
BenchPlan read_plan(const std::string& path);

struct BenchSummary {
  int n = 0;
  int m = 0;
  std::string mode;
  int instances = 0;
  int solves = 0;
  double avg_time_s = 0.0;
  double max_time_s = 0.0;
  double avg_nodes = 0.0;
  std::int64_t max_nodes = 0;
  double avg_root_gap_pct = 0.0;
  double pct_solved_at_root = 0.0;
  double pct_fixed = 0.0;
  double pct_optimal = 0.0;
};

struct BenchResult {
  // In plan order: entry, seed, then k descending.
  std::vector<ResultRecord> rows;
  // One per plan entry.
  std::vector<BenchSummary> summaries;
};

// Number of worker threads: KVOTE_THREADS if set to a positive integer,
// otherwise the hardware concurrency.
int bench_threads();

BenchResult run_bench(const BenchPlan& plan, int threads);

// Summary rows of records that share one plan entry.
BenchSummary summarize(const BenchEntry& entry,
                       const std::vector<ResultRecord>& rows);

void write_summary_csv(std::ostream& out,
                       const std::vector<BenchSummary>& summaries);

// Instance identifier used in result rows, e.g. "n50_m30_uniform_s1".
std::string instance_id(int n, int m, const GenMode& mode, std::uint64_t seed);

// Result row for one solve.
ResultRecord make_record(const std::string& id, const Instance& instance,
                         const Solution& solution);

}  // namespace kvote::cli

#endif  // KVOTE_TOOLS_BENCH_H_
