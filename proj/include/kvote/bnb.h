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

// Exact solvers for the k-sum problem: minimize the sum of the k largest
// Hamming distances between a committee and the voter profiles.
//
// solve_ksum is a depth-first branch-and-bound over the candidate variables.
// For a partial assignment with partial distances a_i and free candidates F,
// any voter weighting q with 0 <= q_i <= 1 and sum_i q_i <= k gives
//
//   z >= sum_i q_i a_i + sum_{j in F} min(sum_i q_i p_ij, sum_i q_i (1 - p_ij))
//
// because the k largest distances dominate every such weighted sum. q = the
// indicator of the k largest a_i recovers the plain top-k partial bound;
// the solver improves q by projected supergradient steps, reuses the
// minimizing completion as an incumbent candidate, and fixes free variables
// whose flip cost alone reaches the incumbent.

#ifndef KVOTE_BNB_H_
#define KVOTE_BNB_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kvote/model.h"

namespace kvote {

struct SolveStats {
  std::int64_t nodes = 0;
  double elapsed_s = 0.0;
  // Best lower bound known before branching (includes a supplied bound).
  Score root_bound = 0;
  // Optimality was proven at the root node without branching.
  bool solved_at_root = false;
  // Variables fixed by preprocess_fix.
  int fixed_count = 0;
};

struct Solution {
  int k = 0;
  Committee committee;
  Score value = 0;
  // Valid lower bound on the optimum; equals `value` when `optimal`.
  Score lower_bound = 0;
  // False iff a node or time budget stopped the search early.
  bool optimal = true;
  SolveStats stats;
};

// Bound used at search nodes.
enum class NodeBound {
  // Sum of the k largest partial distances, candidates branched in index
  // order. Kept as a reference mode.
  kPartialTopK,
  // Lagrangian voter-weighting bound with reduced-cost fixing (default).
  kLagrangian,
};

// Snapshot passed to SolveOptions::on_node after the bound of a node is known.
struct NodeInfo {
  int depth = 0;
  // -1 free, 0 or 1 fixed; includes preprocessing.
  std::vector<signed char> assignment;
  // Integer bound claimed for every completion of `assignment`.
  Score bound = 0;
};

struct WarmStart {
  Committee committee;
  // TopK(k) score of `committee`; checked on entry.
  Score value = 0;
};

struct SolveOptions {
  std::optional<std::int64_t> node_limit;
  std::optional<double> time_limit_s;
  bool enable_preprocessing = true;
  // Used by solve_all_k: pass chain bounds from k+1 into the solve for k.
  bool enable_chain_bounds = true;
  std::optional<WarmStart> warm_start;
  // A lower bound on z(k) known to the caller, e.g. chain_lower(z(k+1), k).
  std::optional<Score> lower_bound;
  NodeBound node_bound = NodeBound::kLagrangian;
  std::function<void(const NodeInfo&)> on_node;
};

inline constexpr std::uint64_t kDefaultBruteForceBudget = std::uint64_t{1} << 24;

// Enumerates all 2^m committees and returns a minimum of the weighted score,
// ties broken by the lexicographically smallest bit string (candidate 0
// first). Throws ResourceLimitError when 2^m exceeds `budget`.
Solution brute_force(const Instance& instance, const OwaWeights& weights,
                     std::uint64_t budget = kDefaultBruteForceBudget);

// Throws std::invalid_argument unless 1 <= k <= n, or if a warm start has the
// wrong length or a value that is not its TopK(k) score. A budget stop
// returns the incumbent with optimal = false and a valid lower bound.
Solution solve_ksum(const Instance& instance, int k,
                    const SolveOptions& options = {});

// Solves k = n by the minisum closed form, then k = n-1 down to 1 with the
// previous committee as warm start and chain_lower as a supplied bound (when
// enable_chain_bounds). options.warm_start and options.lower_bound are
// ignored. Returned in that order: element 0 is k = n.
std::vector<Solution> solve_all_k(const Instance& instance,
                                  const SolveOptions& options = {});

}  // namespace kvote

#endif  // KVOTE_BNB_H_
