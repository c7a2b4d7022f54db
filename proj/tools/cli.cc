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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bench.h"
#include "kvote/bnb.h"
#include "kvote/bounds.h"
#include "kvote/errors.h"
#include "kvote/gen_io.h"
#include "kvote/milp_export.h"
#include "kvote/polysolve.h"

namespace kvote::cli {

namespace {

struct GenArgs {
  int n = 0;
  int m = 0;
  std::string mode = "uniform";
  std::optional<double> p;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string in;
  std::optional<int> k;
  std::optional<int> bottom_h;
  std::optional<double> time_limit;
  bool no_preprocess = false;
  std::string export_kind;
  std::string lp;
  std::optional<int> size;
  std::string csv;
};

struct SweepArgs {
  std::string in;
  std::optional<double> time_limit;
  bool no_preprocess = false;
  bool no_chain = false;
  std::string out;
};

struct BenchArgs {
  std::string plan;
  std::string rows;
  std::string summary;
  std::optional<int> threads;
};

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void write_csv_to(const std::string& path, std::ostream& out,
                  const std::vector<ResultRecord>& rows) {
  if (path.empty() || path == "-") {
    write_results_csv(out, rows);
  } else {
    write_results_csv(std::filesystem::path(path), rows);
  }
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
  GenConfig config;
  config.n = args.n;
  config.m = args.m;
  config.seed = args.seed;
  config.mode = GenMode::Parse(args.mode);
  if (args.p) {
    if (config.mode.kind != GenMode::Kind::kBiased) {
      throw std::invalid_argument("--p applies to --mode biased only");
    }
    config.mode.p = *args.p;
  }
  config.Validate();
  const Instance instance = generate(config);
  if (args.out.empty() || args.out == "-") {
    write_instance(out, instance, config.HeaderComment());
  } else {
    write_instance(std::filesystem::path(args.out), instance, config.HeaderComment());
  }
  return kExitOk;
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  if (args.k.has_value() == args.bottom_h.has_value()) {
    throw std::invalid_argument("give exactly one of --k and --bottom-h");
  }
  if (!args.export_kind.empty() && args.lp.empty()) {
    throw std::invalid_argument("--export needs --lp PATH");
  }
  if (args.export_kind.empty() && (!args.lp.empty() || args.size)) {
    throw std::invalid_argument("--lp and --size need --export KIND");
  }
  if (args.bottom_h && (!args.export_kind.empty() || args.no_preprocess || args.time_limit)) {
    throw std::invalid_argument(
        "--bottom-h takes no --export, --no-preprocess or --time-limit");
  }
  const Instance instance = read_instance(args.in);

  if (args.bottom_h) {
    const BottomHSolution solution = solve_bottom_h(instance, *args.bottom_h);
    out << "committee: " << solution.committee.ToString() << "\n";
    out << "objective: " << solution.value << "\n";
    out << "bottom_h: " << *args.bottom_h << "\n";
    out << "support:";
    for (int i : solution.support) out << ' ' << i + 1;
    out << "\n";
    return kExitOk;
  }

  const int k = *args.k;
  if (!args.export_kind.empty()) {
    const FormulationKind kind = parse_formulation_kind(args.export_kind);
    write_lp(std::filesystem::path(args.lp),
             build(instance, k, kind, CutPolicy::kFullEnumeration, args.size));
  }
  SolveOptions options;
  options.time_limit_s = args.time_limit;
  options.enable_preprocessing = !args.no_preprocess;
  const Solution solution = solve_ksum(instance, k, options);
  out << "committee: " << solution.committee.ToString() << "\n";
  out << "objective: " << solution.value << "\n";
  out << "k: " << k << "\n";
  out << "optimal: " << (solution.optimal ? "true" : "false") << "\n";
  out << "lower_bound: " << solution.lower_bound << "\n";
  out << "nodes: " << solution.stats.nodes << "\n";
  out << "time_s: " << format_double(solution.stats.elapsed_s) << "\n";
  out << "root_bound: " << solution.stats.root_bound << "\n";
  out << "fixed: " << solution.stats.fixed_count << "\n";
  out << "solved_at_root: " << (solution.stats.solved_at_root ? "true" : "false") << "\n";
  if (!args.csv.empty()) {
    write_results_csv(std::filesystem::path(args.csv),
                      {make_record(stem_of(args.in), instance, solution)});
  }
  return solution.optimal ? kExitOk : kExitPartial;
}

// Rechecks the bound chain between consecutive sweep results. Returns an
// empty string when every relation holds.
std::string check_chain(const Instance& instance, const std::vector<Solution>& sweep) {
  std::ostringstream msg;
  for (std::size_t idx = 1; idx < sweep.size(); ++idx) {
    const Solution& next = sweep[idx - 1];
    const Solution& cur = sweep[idx];
    const int k = cur.k;
    if (cur.k + 1 != next.k) {
      msg << "sweep order broken at k=" << k;
      break;
    }
    // The incumbent never exceeds the warm start from k+1.
    const Score upper = score_value(instance, next.committee, OwaWeights::TopK(k));
    if (cur.value > upper) {
      msg << "k=" << k << ": z=" << cur.value << " exceeds score(x(k+1))=" << upper;
      break;
    }
    if (!cur.optimal || !next.optimal) continue;
    const Score lower = chain_lower(next.value, k);
    if (cur.value < lower) {
      msg << "k=" << k << ": z=" << cur.value << " below ceil(k z(k+1)/(k+1))=" << lower;
      break;
    }
    if (cur.value > next.value) {
      msg << "k=" << k << ": z(k)=" << cur.value << " exceeds z(k+1)=" << next.value;
      break;
    }
    if (cur.value * (k + 1) < next.value * k) {
      msg << "k=" << k << ": z(k)/k below z(k+1)/(k+1)";
      break;
    }
  }
  return msg.str();
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const Instance instance = read_instance(args.in);
  SolveOptions options;
  options.time_limit_s = args.time_limit;
  options.enable_preprocessing = !args.no_preprocess;
  options.enable_chain_bounds = !args.no_chain;
  const std::vector<Solution> sweep = solve_all_k(instance, options);
  const std::string violation = check_chain(instance, sweep);
  if (!violation.empty()) {
    err << "kvote sweep: bound chain violated: " << violation << "\n";
    return kExitInternal;
  }
  std::vector<ResultRecord> rows;
  bool all_optimal = true;
  const std::string id = stem_of(args.in);
  for (const Solution& solution : sweep) {
    rows.push_back(make_record(id, instance, solution));
    all_optimal = all_optimal && solution.optimal;
  }
  write_csv_to(args.out, out, rows);
  return all_optimal ? kExitOk : kExitPartial;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const BenchPlan plan = read_plan(args.plan);
  const BenchResult result = run_bench(plan, args.threads.value_or(bench_threads()));
  if (!args.rows.empty()) write_results_csv(std::filesystem::path(args.rows), result.rows);
  if (args.summary.empty() || args.summary == "-") {
    write_summary_csv(out, result.summaries);
  } else {
    std::ofstream file(args.summary, std::ios::binary);
    if (!file) throw IoError("cannot open '" + args.summary + "' for writing");
    write_summary_csv(file, result.summaries);
    if (!file.flush()) throw IoError("write to '" + args.summary + "' failed");
  }
  for (const ResultRecord& row : result.rows) {
    if (!row.optimal) return kExitPartial;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Committee selection by k-sum approval voting", "kvote"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.n, "Number of voters")->required();
  gen_cmd->add_option("--m", gen.m, "Number of candidates")->required();
  gen_cmd->add_option("--mode", gen.mode, "uniform | biased | biased:<p>");
  gen_cmd->add_option("--p", gen.p, "Approval probability for biased mode");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out", gen.out, "Output file (default: stdout)");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance for one k");
  solve_cmd->add_option("--in", solve.in, "Instance file")->required();
  CLI::Option* k_opt = solve_cmd->add_option("--k", solve.k, "Sum of the k largest distances");
  CLI::Option* h_opt =
      solve_cmd->add_option("--bottom-h", solve.bottom_h, "Sum of the h smallest distances");
  k_opt->excludes(h_opt);
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--no-preprocess", solve.no_preprocess, "Skip variable fixing");
  solve_cmd->add_option("--export", solve.export_kind,
                        "Also write a model: coverz | coverx | kcentrum | assignment");
  solve_cmd->add_option("--lp", solve.lp, "LP file for --export");
  solve_cmd->add_option("--size", solve.size, "Committee size limit for --export");
  solve_cmd->add_option("--csv", solve.csv, "Write a result row to this CSV file");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Solve k = n down to 1");
  sweep_cmd->add_option("--in", sweep.in, "Instance file")->required();
  sweep_cmd->add_option("--time-limit", sweep.time_limit, "Seconds per k")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--no-preprocess", sweep.no_preprocess, "Skip variable fixing");
  sweep_cmd->add_flag("--no-chain", sweep.no_chain, "Solve each k from scratch");
  sweep_cmd->add_option("--out", sweep.out, "CSV output (default: stdout)");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark plan");
  bench_cmd->add_option("plan", bench.plan, "Plan file")->required();
  bench_cmd->add_option("--rows", bench.rows, "Per-solve CSV output");
  bench_cmd->add_option("--summary", bench.summary, "Summary CSV (default: stdout)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (default: KVOTE_THREADS)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (solve_cmd->parsed()) return cmd_solve(solve, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out);
  } catch (const ParseError& e) {
    err << "kvote: parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "kvote: " << e.what() << "\n";
    return kExitIo;
  } catch (const ResourceLimitError& e) {
    err << "kvote: " << e.what() << "\n";
    return kExitPartial;
  } catch (const std::invalid_argument& e) {
    err << "kvote: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kvote::cli
