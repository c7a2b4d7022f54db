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

#include "kvote/bounds.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kvote {

FixedSet preprocess_fix(const Instance& instance, int k) {
  const int n = instance.num_voters();
  OwaWeights::TopK(k).Validate(n);
  const int half = k / 2;
  FixedSet fixed;
  const auto gamma = instance.approval_counts();
  for (int j = 0; j < instance.num_candidates(); ++j) {
    const bool one = gamma[j] >= n - half;
    const bool zero = gamma[j] <= half;
    // Both thresholds can only hold at k = n with gamma_j = n/2.
    assert(!(one && zero) || (k == n && 2 * gamma[j] == n));
    if (one) {
      fixed.forced_one.push_back(j);
    } else if (zero) {
      fixed.forced_zero.push_back(j);
    }
  }
  return fixed;
}

Score Cut::Evaluate(const Committee& committee) const {
  const Score size = static_cast<Score>(voters.size());
  Score total = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    total += committee.test(j) ? size - counts[j] : counts[j];
  }
  return total;
}

Score chain_lower(Score z_next, int k) {
  assert(z_next >= 0 && k >= 1);
  const Score num = static_cast<Score>(k) * z_next;
  const Score den = static_cast<Score>(k) + 1;
  return (num + den - 1) / den;
}

BoundPair chain_upper(const Instance& instance, const Committee& next_committee,
                      int k) {
  BoundPair out;
  out.upper = score_value(instance, next_committee, OwaWeights::TopK(k));
  out.witness = next_committee;
  return out;
}

BoundPair chain_bounds(const Instance& instance, Score z_next,
                       const Committee& next_committee, int k) {
  BoundPair out = chain_upper(instance, next_committee, k);
  out.lower = chain_lower(z_next, k);
  return out;
}

namespace {

// Indices of the k largest values, ties by ascending index, returned sorted.
template <typename T>
VoterSet top_k_indices(std::span<const T> values, int k) {
  VoterSet order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

Cut make_cut(const Instance& instance, VoterSet voters, double violation) {
  Cut cut;
  cut.counts = subset_counts(instance, voters);
  cut.voters = std::move(voters);
  cut.violation = violation;
  return cut;
}

}  // namespace

std::optional<Cut> separate(const Instance& instance,
                            std::span<const double> x_hat, double v_hat,
                            int k) {
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  OwaWeights::TopK(k).Validate(n);
  if (static_cast<int>(x_hat.size()) != m) {
    throw std::invalid_argument("separate: point has " +
                                std::to_string(x_hat.size()) +
                                " components, expected " + std::to_string(m));
  }
  for (double value : x_hat) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::invalid_argument("separate: point component outside [0, 1]");
    }
  }
  std::vector<double> r(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      r[i] += instance.approves(i, j) ? 1.0 - x_hat[j] : x_hat[j];
    }
  }
  // r is exact for a binary point, so the comparison is exact there too.
  const bool binary = std::all_of(x_hat.begin(), x_hat.end(),
                                  [](double v) { return v == 0.0 || v == 1.0; });
  VoterSet voters = top_k_indices<double>(r, k);
  double total = 0.0;
  for (int i : voters) total += r[i];
  const double tolerance = binary ? 0.0 : kSeparationTolerance;
  if (!(total > v_hat + tolerance)) return std::nullopt;
  return make_cut(instance, std::move(voters), total - v_hat);
}

std::optional<Cut> separate(const Instance& instance, const Committee& x_hat,
                            Score v_hat, int k) {
  OwaWeights::TopK(k).Validate(instance.num_voters());
  const std::vector<int> r = distances(instance, x_hat);
  VoterSet voters = top_k_indices<int>(r, k);
  Score total = 0;
  for (int i : voters) total += r[i];
  if (total <= v_hat) return std::nullopt;
  return make_cut(instance, std::move(voters), static_cast<double>(total - v_hat));
}

std::optional<VoterSet> separate_cover_z(const Instance& instance,
                                         std::span<const double> z_hat,
                                         double v_hat, int k) {
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  OwaWeights::TopK(k).Validate(n);
  if (static_cast<long>(z_hat.size()) != static_cast<long>(n) * m) {
    throw std::invalid_argument("separate_cover_z: expected an n x m point");
  }
  std::vector<double> r(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) r[i] += z_hat[static_cast<std::size_t>(i) * m + j];
  }
  VoterSet voters = top_k_indices<double>(r, k);
  double total = 0.0;
  for (int i : voters) total += r[i];
  if (!(total > v_hat + kSeparationTolerance)) return std::nullopt;
  return voters;
}

}  // namespace kvote
