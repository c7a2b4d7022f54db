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

#include "kvote/bnb.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "kvote/bounds.h"
#include "kvote/errors.h"
#include "kvote/polysolve.h"

namespace kvote {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Slack used when rounding a floating-point bound up to an integer.
constexpr double kBoundSlack = 1e-7;

Score ceil_bound(double value) {
  return static_cast<Score>(std::ceil(value - kBoundSlack));
}

// Sum of the k largest values in [0, max_value], by counting.
Score top_k_counting(std::span<const int> values, int k, int max_value,
                     std::vector<int>& histogram) {
  histogram.assign(max_value + 1, 0);
  for (int v : values) ++histogram[v];
  Score total = 0;
  int remaining = k;
  for (int v = max_value; v >= 0 && remaining > 0; --v) {
    const int take = std::min(remaining, histogram[v]);
    total += static_cast<Score>(take) * v;
    remaining -= take;
  }
  return total;
}

// Euclidean projection onto {q : 0 <= q_i <= 1, sum q_i = k}, k <= n. The
// result is scaled down if rounding pushed the sum above k, so it is always
// a valid weighting for the lower bound.
void project_capped_simplex(std::span<const double> y, int k,
                            std::vector<std::pair<double, int>>& events,
                            std::span<double> q) {
  const int n = static_cast<int>(y.size());
  if (k >= n) {
    std::fill(q.begin(), q.end(), 1.0);
    return;
  }
  // f(tau) = sum_i clamp(y_i - tau, 0, 1) is non-increasing and piecewise
  // linear with breakpoints y_i (slope starts) and y_i - 1 (slope ends).
  events.clear();
  for (int i = 0; i < n; ++i) {
    events.emplace_back(y[i], +1);
    events.emplace_back(y[i] - 1.0, -1);
  }
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double f = 0.0;
  int slope = 0;
  double prev = events.front().first;
  double tau = events.back().first;
  for (const auto& [pos, delta] : events) {
    const double f_here = f + slope * (prev - pos);
    if (f_here >= k && slope > 0) {
      tau = prev - (k - f) / slope;
      break;
    }
    f = f_here;
    slope += delta;
    prev = pos;
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    q[i] = std::clamp(y[i] - tau, 0.0, 1.0);
    sum += q[i];
  }
  if (sum > k) {
    const double scale = k / sum;
    for (double& v : q) v *= scale;
  }
}

class Searcher {
 public:
  Searcher(const Instance& instance, int k, const SolveOptions& options)
      : instance_(instance),
        options_(options),
        n_(instance.num_voters()),
        m_(instance.num_candidates()),
        k_(k),
        words_((m_ + 63) / 64),
        start_(Clock::now()) {
    profile_words_.resize(static_cast<std::size_t>(n_) * words_);
    column_.resize(static_cast<std::size_t>(m_) * n_);
    for (int i = 0; i < n_; ++i) {
      const auto w = instance.profile(i).words();
      std::copy(w.begin(), w.end(), profile_words_.begin() + i * words_);
      for (int j = 0; j < m_; ++j) {
        column_[static_cast<std::size_t>(j) * n_ + i] = instance.approves(i, j);
      }
    }
    assignment_.assign(m_, -1);
    free_mask_.assign(words_, 0);
    for (int j = 0; j < m_; ++j) free_mask_[j >> 6] |= std::uint64_t{1} << (j & 63);
    levels_.resize(m_ + 1);
    for (Level& level : levels_) {
      level.partial.assign(n_, 0);
      level.weights.assign(n_, 0.0);
    }
    gradient_.resize(n_);
    step_.resize(n_);
    sums_.resize(m_);
    best_sums_.resize(m_);
  }

  Solution Run() {
    Solution out;
    out.k = k_;
    const auto gamma = instance_.approval_counts();

    if (options_.enable_preprocessing) {
      const FixedSet fixed = preprocess_fix(instance_, k_);
      for (int j : fixed.forced_one) Fix(j, 1, levels_[0].partial);
      for (int j : fixed.forced_zero) Fix(j, 0, levels_[0].partial);
      out.stats.fixed_count = fixed.size();
    }

    // Majority completion of the preprocessed assignment.
    Committee start(m_);
    for (int j = 0; j < m_; ++j) {
      const bool majority = 2 * gamma[j] >= n_;
      start.set(j, assignment_[j] >= 0 ? assignment_[j] == 1 : majority);
    }
    Offer(start, score_value(instance_, start, OwaWeights::TopK(k_)));
    if (options_.warm_start) {
      Offer(options_.warm_start->committee, options_.warm_start->value);
    }
    ImproveByFlips();

    hint_ = options_.lower_bound.value_or(0);
    std::fill(levels_[0].weights.begin(), levels_[0].weights.end(),
              static_cast<double>(k_) / n_);
    root_bound_ = hint_;
    Search(0, hint_);

    out.committee = incumbent_;
    out.value = incumbent_value_;
    out.optimal = !aborted_;
    out.lower_bound = aborted_ ? std::min(open_min_, incumbent_value_)
                               : incumbent_value_;
    out.stats.nodes = nodes_;
    out.stats.root_bound = std::min(root_bound_, incumbent_value_);
    out.stats.solved_at_root = !aborted_ && nodes_ <= 1;
    out.stats.elapsed_s = seconds_since(start_);
    assert(out.value == score_value(instance_, out.committee, OwaWeights::TopK(k_)));
    return out;
  }

 private:
  struct Level {
    std::vector<int> partial;     // a_i over fixed candidates
    std::vector<double> weights;  // voter weighting q, warm start for the node
    std::vector<int> fixed_here;  // reduced-cost fixings to undo
  };

  // Fixes candidate j and adds its contribution to `partial`.
  void Fix(int j, int value, std::vector<int>& partial) {
    assignment_[j] = static_cast<signed char>(value);
    free_mask_[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
    const double* col = &column_[static_cast<std::size_t>(j) * n_];
    if (value == 1) {
      for (int i = 0; i < n_; ++i) partial[i] += col[i] == 0.0;
    } else {
      for (int i = 0; i < n_; ++i) partial[i] += col[i] != 0.0;
    }
  }

  void Unfix(int j) {
    assignment_[j] = -1;
    free_mask_[j >> 6] |= std::uint64_t{1} << (j & 63);
  }

  void Offer(const Committee& committee, Score value) {
    if (value < incumbent_value_) {
      incumbent_value_ = value;
      incumbent_ = committee;
    }
  }

  // First-improvement single-flip descent from the incumbent.
  void ImproveByFlips() {
    const OwaWeights weights = OwaWeights::TopK(k_);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int j = 0; j < m_; ++j) {
        Committee trial = incumbent_;
        trial.flip(j);
        const Score value = score_value(instance_, trial, weights);
        if (value < incumbent_value_) {
          incumbent_value_ = value;
          incumbent_ = std::move(trial);
          improved = true;
        }
      }
    }
  }

  bool BudgetHit() const {
    if (options_.node_limit && nodes_ >= *options_.node_limit) return true;
    if (options_.time_limit_s && (nodes_ & 63) == 0 &&
        seconds_since(start_) >= *options_.time_limit_s) {
      return true;
    }
    return false;
  }

  std::vector<int> FreeCandidates() const {
    std::vector<int> free;
    for (int j = 0; j < m_; ++j) {
      if (assignment_[j] < 0) free.push_back(j);
    }
    return free;
  }

  Committee CompleteWith(const std::vector<std::uint64_t>& free_bits) const {
    Committee committee(m_);
    for (int j = 0; j < m_; ++j) {
      const bool bit = assignment_[j] >= 0
                           ? assignment_[j] == 1
                           : ((free_bits[j >> 6] >> (j & 63)) & 1U);
      committee.set(j, bit);
    }
    return committee;
  }

  // d_i of the completion that sets free candidates to `free_bits`.
  void CompletionDistances(const std::vector<int>& partial,
                           const std::vector<std::uint64_t>& free_bits,
                           std::vector<int>& out) const {
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t* p = &profile_words_[static_cast<std::size_t>(i) * words_];
      int d = partial[i];
      for (int w = 0; w < words_; ++w) {
        d += std::popcount((p[w] ^ free_bits[w]) & free_mask_[w]);
      }
      out[i] = d;
    }
  }

  // Result of bounding one node.
  struct NodeBoundResult {
    double lagrangian = 0.0;
    double weight_sum = 0.0;
  };

  // Supergradient ascent on the voter weighting. Leaves the best weighting
  // in level.weights and its per-candidate weighted approvals in best_sums_.
  NodeBoundResult Lagrangian(Level& level, const std::vector<int>& free,
                             int max_iterations) {
    std::vector<double>& q = level.weights;
    NodeBoundResult best{-std::numeric_limits<double>::infinity(), 0.0};
    std::vector<std::uint64_t> free_bits(words_);
    double lambda = 1.0;
    int stall = 0;
    for (int it = 0; it < max_iterations; ++it) {
      double weight_sum = 0.0;
      double value = 0.0;
      for (int i = 0; i < n_; ++i) {
        weight_sum += q[i];
        value += q[i] * level.partial[i];
      }
      std::fill(free_bits.begin(), free_bits.end(), 0);
      for (int j : free) {
        const double* col = &column_[static_cast<std::size_t>(j) * n_];
        double approve = 0.0;
        for (int i = 0; i < n_; ++i) approve += q[i] * col[i];
        sums_[j] = approve;
        value += std::min(approve, weight_sum - approve);
        if (2.0 * approve > weight_sum) free_bits[j >> 6] |= std::uint64_t{1} << (j & 63);
      }
      CompletionDistances(level.partial, free_bits, gradient_);
      const Score completion = top_k_counting(gradient_, k_, m_, histogram_);
      if (completion < incumbent_value_) Offer(CompleteWith(free_bits), completion);

      if (value > best.lagrangian + 1e-12) {
        best = {value, weight_sum};
        best_weights_.assign(q.begin(), q.end());
        for (int j : free) best_sums_[j] = sums_[j];
        stall = 0;
      } else if (++stall >= 3) {
        lambda *= 0.5;
        stall = 0;
      }
      if (ceil_bound(best.lagrangian) >= incumbent_value_) break;
      if (k_ >= n_ || lambda < 1e-3 || it + 1 == max_iterations) break;

      // Polyak step toward the incumbent value.
      double mean = 0.0;
      for (int i = 0; i < n_; ++i) mean += gradient_[i];
      mean /= n_;
      double norm = 0.0;
      for (int i = 0; i < n_; ++i) norm += (gradient_[i] - mean) * (gradient_[i] - mean);
      if (norm <= 0.0) break;
      const double gap = static_cast<double>(incumbent_value_) - value;
      const double t = lambda * std::max(gap, 1.0) / norm;
      for (int i = 0; i < n_; ++i) step_[i] = q[i] + t * gradient_[i];
      project_capped_simplex(step_, k_, events_, q);
    }
    q.assign(best_weights_.begin(), best_weights_.end());
    return best;
  }

  void Notify(int depth, Score bound) {
    if (!options_.on_node) return;
    NodeInfo info;
    info.depth = depth;
    info.assignment = assignment_;
    info.bound = bound;
    options_.on_node(info);
  }

  void Search(int depth, Score inherited) {
    if (aborted_ || BudgetHit()) {
      aborted_ = true;
      open_min_ = std::min(open_min_, inherited);
      return;
    }
    ++nodes_;
    if (options_.node_bound == NodeBound::kPartialTopK) {
      SearchPartial(depth, inherited);
    } else {
      SearchLagrangian(depth, inherited);
    }
  }

  void SearchPartial(int depth, Score inherited) {
    Level& level = levels_[depth];
    const Score bound = std::max(
        inherited, top_k_counting(level.partial, k_, m_, histogram_));
    Notify(depth, bound);
    if (depth == 0) root_bound_ = std::max(root_bound_, bound);

    const auto gamma = instance_.approval_counts();
    std::vector<std::uint64_t> majority(words_, 0);
    int branch = -1;
    for (int j = 0; j < m_; ++j) {
      if (2 * gamma[j] >= n_) majority[j >> 6] |= std::uint64_t{1} << (j & 63);
      if (branch < 0 && assignment_[j] < 0) branch = j;
    }
    CompletionDistances(level.partial, majority, gradient_);
    const Score completion = top_k_counting(gradient_, k_, m_, histogram_);
    if (completion < incumbent_value_) Offer(CompleteWith(majority), completion);
    if (bound >= incumbent_value_ || branch < 0) return;

    const int first = 2 * gamma[branch] >= n_ ? 1 : 0;
    for (int value : {first, 1 - first}) {
      if (bound >= incumbent_value_) break;
      Level& child = levels_[depth + 1];
      child.partial = level.partial;
      Fix(branch, value, child.partial);
      Search(depth + 1, bound);
      Unfix(branch);
    }
  }

  void SearchLagrangian(int depth, Score inherited) {
    Level& level = levels_[depth];
    level.fixed_here.clear();
    std::vector<int> free = FreeCandidates();
    const int iterations = depth == 0 ? 300 : 12;

    NodeBoundResult result = Lagrangian(level, free, iterations);
    Score bound = std::max(inherited, ceil_bound(result.lagrangian));
    Notify(depth, bound);
    if (depth == 0) root_bound_ = std::max(root_bound_, bound);

    // Reduced-cost fixing: moving candidate j away from its minimizing value
    // raises the Lagrangian by |2 A_j - W| under the same weighting.
    for (int round = 0; bound < incumbent_value_; ++round) {
      int fixed_now = 0;
      for (int j : free) {
        const double penalty = std::abs(2.0 * best_sums_[j] - result.weight_sum);
        if (ceil_bound(result.lagrangian + penalty) >= incumbent_value_) {
          const int value = 2.0 * best_sums_[j] > result.weight_sum ? 1 : 0;
          Fix(j, value, level.partial);
          level.fixed_here.push_back(j);
          ++fixed_now;
        }
      }
      if (fixed_now == 0) break;
      std::erase_if(free, [&](int j) { return assignment_[j] >= 0; });
      if (free.empty() || depth > 0 || round >= 4) break;
      result = Lagrangian(level, free, iterations);
      bound = std::max(bound, ceil_bound(result.lagrangian));
      root_bound_ = std::max(root_bound_, bound);
    }

    if (bound < incumbent_value_) {
      if (free.empty()) {
        const Score value = top_k_counting(level.partial, k_, m_, histogram_);
        Offer(CompleteWith(free_mask_), value);
      } else {
        int branch = free.front();
        double smallest = std::numeric_limits<double>::infinity();
        for (int j : free) {
          const double penalty = std::abs(2.0 * best_sums_[j] - result.weight_sum);
          if (penalty < smallest) {
            smallest = penalty;
            branch = j;
          }
        }
        const int preferred = 2.0 * best_sums_[branch] > result.weight_sum ? 1 : 0;
        const Score other_bound =
            std::max(bound, ceil_bound(result.lagrangian + smallest));
        for (int value : {preferred, 1 - preferred}) {
          const Score child_bound = value == preferred ? bound : other_bound;
          if (child_bound >= incumbent_value_) continue;
          if (aborted_) {
            open_min_ = std::min(open_min_, child_bound);
            continue;
          }
          Level& child = levels_[depth + 1];
          child.partial = level.partial;
          child.weights = level.weights;
          Fix(branch, value, child.partial);
          Search(depth + 1, child_bound);
          Unfix(branch);
        }
      }
    }
    // level.partial keeps the fixings; the parent rebuilds it before reuse.
    for (int j : level.fixed_here) Unfix(j);
  }

  const Instance& instance_;
  const SolveOptions& options_;
  const int n_;
  const int m_;
  const int k_;
  const int words_;
  const Clock::time_point start_;

  std::vector<std::uint64_t> profile_words_;
  std::vector<double> column_;  // column_[j * n + i] = p_ij

  std::vector<signed char> assignment_;
  std::vector<std::uint64_t> free_mask_;
  std::vector<Level> levels_;

  Committee incumbent_;
  Score incumbent_value_ = std::numeric_limits<Score>::max();
  Score hint_ = 0;
  Score root_bound_ = 0;
  Score open_min_ = std::numeric_limits<Score>::max();
  std::int64_t nodes_ = 0;
  bool aborted_ = false;

  // Scratch.
  std::vector<int> gradient_;
  std::vector<int> histogram_;
  std::vector<double> step_;
  std::vector<double> sums_;
  std::vector<double> best_sums_;
  std::vector<double> best_weights_;
  std::vector<std::pair<double, int>> events_;
};

}  // namespace

Solution brute_force(const Instance& instance, const OwaWeights& weights,
                     std::uint64_t budget) {
  const auto start = Clock::now();
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  weights.Validate(n);
  if (m >= 63 || (std::uint64_t{1} << m) > budget) {
    throw ResourceLimitError("brute force needs 2^" + std::to_string(m) +
                             " committees, budget is " + std::to_string(budget));
  }
  const bool top = weights.kind() == OwaWeights::Kind::kTopK;
  const int count = weights.count();

  // Gray-code walk; committee bit j is candidate j, and the lexicographic key
  // puts candidate 0 in the most significant position.
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = instance.profile(i).count();
  std::vector<int> histogram;
  const auto evaluate = [&] {
    histogram.assign(m + 1, 0);
    for (int v : d) ++histogram[v];
    Score total = 0;
    int remaining = count;
    for (int step = 0; step <= m && remaining > 0; ++step) {
      const int v = top ? m - step : step;
      const int take = std::min(remaining, histogram[v]);
      total += static_cast<Score>(take) * v;
      remaining -= take;
    }
    return total;
  };

  std::uint64_t bits = 0;
  std::uint64_t best_key = 0;
  Score best = evaluate();
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t c = 1; c < total; ++c) {
    const int j = std::countr_zero(c);
    bits ^= std::uint64_t{1} << j;
    const bool now_in = (bits >> j) & 1U;
    for (int i = 0; i < n; ++i) d[i] += instance.approves(i, j) == now_in ? -1 : 1;
    const Score value = evaluate();
    if (value > best) continue;
    std::uint64_t key = 0;
    for (int t = 0; t < m; ++t) {
      if ((bits >> t) & 1U) key |= std::uint64_t{1} << (m - 1 - t);
    }
    if (value < best || key < best_key) {
      best = value;
      best_key = key;
    }
  }

  Solution out;
  out.k = count;
  out.committee = Committee(m);
  for (int t = 0; t < m; ++t) out.committee.set(t, (best_key >> (m - 1 - t)) & 1U);
  out.value = best;
  out.lower_bound = best;
  out.stats.nodes = static_cast<std::int64_t>(total);
  out.stats.root_bound = 0;
  out.stats.elapsed_s = seconds_since(start);
  return out;
}

Solution solve_ksum(const Instance& instance, int k,
                    const SolveOptions& options) {
  OwaWeights::TopK(k).Validate(instance.num_voters());
  if (options.node_limit && *options.node_limit <= 0) {
    throw std::invalid_argument("node limit must be positive");
  }
  if (options.time_limit_s && !(*options.time_limit_s > 0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  if (options.warm_start) {
    check_committee(instance, options.warm_start->committee);
    const Score actual = score_value(instance, options.warm_start->committee,
                                     OwaWeights::TopK(k));
    if (actual != options.warm_start->value) {
      throw std::invalid_argument(
          "warm start value " + std::to_string(options.warm_start->value) +
          " differs from its TopK(" + std::to_string(k) + ") score " +
          std::to_string(actual));
    }
  }
  Searcher searcher(instance, k, options);
  return searcher.Run();
}

std::vector<Solution> solve_all_k(const Instance& instance,
                                  const SolveOptions& options) {
  const int n = instance.num_voters();
  std::vector<Solution> out;
  out.reserve(n);

  const auto start = Clock::now();
  const CommitteeValue minisum = solve_minisum(instance);
  Solution top;
  top.k = n;
  top.committee = minisum.committee;
  top.value = minisum.value;
  top.lower_bound = minisum.value;
  top.stats.root_bound = minisum.value;
  top.stats.solved_at_root = true;
  top.stats.fixed_count =
      options.enable_preprocessing ? preprocess_fix(instance, n).size() : 0;
  top.stats.elapsed_s = seconds_since(start);
  out.push_back(std::move(top));

  for (int k = n - 1; k >= 1; --k) {
    const Solution& prev = out.back();
    // Caller-supplied warm start and bound belong to a single k; drop them.
    SolveOptions step = options;
    step.warm_start.reset();
    step.lower_bound.reset();
    if (options.enable_chain_bounds) {
      const BoundPair chain =
          chain_bounds(instance, prev.lower_bound, prev.committee, k);
      step.warm_start = WarmStart{chain.witness, chain.upper};
      step.lower_bound = chain.lower;
    }
    out.push_back(solve_ksum(instance, k, step));
  }
  return out;
}

}  // namespace kvote
