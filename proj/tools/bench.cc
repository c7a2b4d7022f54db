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

#include "bench.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kvote/errors.h"

namespace kvote::cli {

namespace {

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::uint64_t> parse_seeds(const std::string& text, int line) {
  std::vector<std::uint64_t> seeds;
  const std::size_t dash = text.find('-');
  if (dash != std::string::npos) {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (!parse_number(std::string_view(text).substr(0, dash), lo) ||
        !parse_number(std::string_view(text).substr(dash + 1), hi) || lo > hi ||
        hi - lo >= 100'000) {
      throw ParseError("bad seed range '" + text + "'", line, 0);
    }
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    std::uint64_t seed = 0;
    if (!parse_number(part, seed)) throw ParseError("bad seed '" + part + "'", line, 0);
    seeds.push_back(seed);
  }
  if (seeds.empty()) throw ParseError("empty seed list", line, 0);
  return seeds;
}

void parse_k_range(const std::string& text, int line, BenchEntry& entry) {
  if (text == "all") {
    entry.k_min = 1;
    entry.k_max.reset();
    return;
  }
  const std::size_t dash = text.find('-');
  int lo = 0;
  int hi = 0;
  if (dash == std::string::npos) {
    if (!parse_number(text, lo)) throw ParseError("bad k '" + text + "'", line, 0);
    hi = lo;
  } else if (!parse_number(std::string_view(text).substr(0, dash), lo) ||
             !parse_number(std::string_view(text).substr(dash + 1), hi)) {
    throw ParseError("bad k range '" + text + "'", line, 0);
  }
  if (lo < 1 || lo > hi) throw ParseError("bad k range '" + text + "'", line, 0);
  entry.k_min = lo;
  entry.k_max = hi;
}

BenchEntry parse_run(std::istringstream& words, int line) {
  BenchEntry entry;
  entry.line = line;
  entry.seeds = {1, 2, 3, 4, 5};
  bool have_n = false;
  bool have_m = false;
  std::string word;
  while (words >> word) {
    const std::size_t eq = word.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + word + "'", line, 0);
    const std::string key = word.substr(0, eq);
    const std::string value = word.substr(eq + 1);
    if (key == "n") {
      if (!parse_number(value, entry.n) || entry.n < 1) throw ParseError("bad n '" + value + "'", line, 0);
      have_n = true;
    } else if (key == "m") {
      if (!parse_number(value, entry.m) || entry.m < 1) throw ParseError("bad m '" + value + "'", line, 0);
      have_m = true;
    } else if (key == "mode") {
      try {
        entry.mode = GenMode::Parse(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line, 0);
      }
    } else if (key == "seeds") {
      entry.seeds = parse_seeds(value, line);
    } else if (key == "k") {
      parse_k_range(value, line, entry);
    } else {
      throw ParseError("unknown key '" + key + "'", line, 0);
    }
  }
  if (!have_n || !have_m) throw ParseError("run needs n= and m=", line, 0);
  if (entry.k_max && *entry.k_max > entry.n) {
    throw ParseError("k range exceeds n = " + std::to_string(entry.n), line, 0);
  }
  return entry;
}

}  // namespace

BenchPlan parse_plan(std::istream& in) {
  BenchPlan plan;
  bool have_limit = false;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::size_t hash = text.find('#');
    if (hash != std::string::npos) text.resize(hash);
    std::istringstream words(text);
    std::string directive;
    if (!(words >> directive)) continue;
    if (directive == "run") {
      plan.entries.push_back(parse_run(words, line));
    } else if (directive == "time_limit") {
      std::string value;
      std::string extra;
      double seconds = 0.0;
      if (!(words >> value) || (words >> extra) || !parse_number(value, seconds) ||
          !(seconds > 0.0)) {
        throw ParseError("time_limit needs one positive number of seconds", line, 0);
      }
      if (have_limit) throw ParseError("time_limit given twice", line, 0);
      have_limit = true;
      plan.time_limit_s = seconds;
    } else {
      throw ParseError("unknown directive '" + directive + "'", line, 1);
    }
  }
  if (plan.entries.empty()) throw std::invalid_argument("bench plan has no run lines");
  return plan;
}

BenchPlan read_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open plan '" + path + "'");
  return parse_plan(in);
}

int bench_threads() {
  if (const char* env = std::getenv("KVOTE_THREADS")) {
    int value = 0;
    if (parse_number(std::string_view(env), value) && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string instance_id(int n, int m, const GenMode& mode, std::uint64_t seed) {
  return "n" + std::to_string(n) + "_m" + std::to_string(m) + "_" +
         mode.ToString() + "_s" + std::to_string(seed);
}

ResultRecord make_record(const std::string& id, const Instance& instance,
                         const Solution& solution) {
  ResultRecord row;
  row.instance_id = id;
  row.n = instance.num_voters();
  row.m = instance.num_candidates();
  row.k = solution.k;
  row.objective = solution.value;
  row.time_s = solution.stats.elapsed_s;
  row.nodes = solution.stats.nodes;
  row.root_bound = solution.stats.root_bound;
  row.root_gap_pct =
      solution.value == 0
          ? 0.0
          : 100.0 * static_cast<double>(solution.value - solution.stats.root_bound) /
                static_cast<double>(solution.value);
  row.solved_at_root = solution.stats.solved_at_root;
  row.pct_fixed = 100.0 * solution.stats.fixed_count / row.m;
  row.optimal = solution.optimal;
  return row;
}

BenchSummary summarize(const BenchEntry& entry, const std::vector<ResultRecord>& rows) {
  BenchSummary s;
  s.n = entry.n;
  s.m = entry.m;
  s.mode = entry.mode.ToString();
  s.instances = static_cast<int>(entry.seeds.size());
  s.solves = static_cast<int>(rows.size());
  if (rows.empty()) return s;
  for (const ResultRecord& r : rows) {
    s.avg_time_s += r.time_s;
    s.max_time_s = std::max(s.max_time_s, r.time_s);
    s.avg_nodes += static_cast<double>(r.nodes);
    s.max_nodes = std::max(s.max_nodes, r.nodes);
    s.avg_root_gap_pct += r.root_gap_pct;
    s.pct_solved_at_root += r.solved_at_root ? 1.0 : 0.0;
    s.pct_fixed += r.pct_fixed;
    s.pct_optimal += r.optimal ? 1.0 : 0.0;
  }
  const double count = static_cast<double>(rows.size());
  s.avg_time_s /= count;
  s.avg_nodes /= count;
  s.avg_root_gap_pct /= count;
  s.pct_solved_at_root *= 100.0 / count;
  s.pct_fixed /= count;
  s.pct_optimal *= 100.0 / count;
  return s;
}

BenchResult run_bench(const BenchPlan& plan, int threads) {
  struct Job {
    const BenchEntry* entry;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const BenchEntry& entry : plan.entries) {
    for (std::uint64_t seed : entry.seeds) jobs.push_back({&entry, seed});
  }

  // A sweep is sequential in k, so the unit of parallel work is an instance.
  std::vector<std::vector<ResultRecord>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t idx = next++; idx < jobs.size(); idx = next++) {
      const Job& job = jobs[idx];
      const BenchEntry& entry = *job.entry;
      GenConfig config;
      config.n = entry.n;
      config.m = entry.m;
      config.mode = entry.mode;
      config.seed = job.seed;
      const Instance instance = generate(config);
      SolveOptions options;
      options.time_limit_s = plan.time_limit_s;
      const std::vector<Solution> sweep = solve_all_k(instance, options);
      const std::string id = instance_id(entry.n, entry.m, entry.mode, job.seed);
      const int k_max = entry.k_max.value_or(entry.n);
      for (const Solution& solution : sweep) {
        if (solution.k >= entry.k_min && solution.k <= k_max) {
          slots[idx].push_back(make_record(id, instance, solution));
        }
      }
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  BenchResult result;
  std::size_t idx = 0;
  for (const BenchEntry& entry : plan.entries) {
    std::vector<ResultRecord> rows;
    for (std::size_t s = 0; s < entry.seeds.size(); ++s, ++idx) {
      rows.insert(rows.end(), slots[idx].begin(), slots[idx].end());
    }
    result.summaries.push_back(summarize(entry, rows));
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  }
  return result;
}

void write_summary_csv(std::ostream& out, const std::vector<BenchSummary>& summaries) {
  out << "n,m,mode,instances,solves,avg_time_s,max_time_s,avg_nodes,max_nodes,"
         "avg_root_gap_pct,pct_solved_at_root,pct_fixed,pct_optimal\r\n";
  for (const BenchSummary& s : summaries) {
    out << s.n << ',' << s.m << ',' << csv_escape(s.mode) << ',' << s.instances << ','
        << s.solves << ',' << format_double(s.avg_time_s) << ','
        << format_double(s.max_time_s) << ',' << format_double(s.avg_nodes) << ','
        << s.max_nodes << ',' << format_double(s.avg_root_gap_pct) << ','
        << format_double(s.pct_solved_at_root) << ',' << format_double(s.pct_fixed)
        << ',' << format_double(s.pct_optimal) << "\r\n";
  }
}

}  // namespace kvote::cli
