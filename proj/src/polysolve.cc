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

#include "kvote/polysolve.h"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "kvote/errors.h"

namespace kvote {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (n - r + i) / i is exact at every step.
    const std::uint64_t factor = static_cast<std::uint64_t>(n - r + i);
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    const std::uint64_t reduced = result / g;
    const std::uint64_t divisor = static_cast<std::uint64_t>(i) / g;
    if (reduced > kMax / factor) return kMax;
    result = reduced * factor / divisor;
  }
  return result;
}

CommitteeValue solve_minisum(const Instance& instance) {
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  const int threshold = n - n / 2;
  CommitteeValue out{Committee(m), 0};
  for (int j = 0; j < m; ++j) {
    const int gamma = instance.approval_counts()[j];
    const bool elect = gamma >= threshold;
    out.committee.set(j, elect);
    out.value += elect ? n - gamma : gamma;
  }
  return out;
}

CommitteeValue solve_minisum_card(const Instance& instance, int size) {
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  if (size < 0 || size > m) {
    throw std::invalid_argument("committee size " + std::to_string(size) +
                                " out of range [0, " + std::to_string(m) + "]");
  }
  const auto gamma = instance.approval_counts();
  std::vector<int> by_votes(m);
  std::iota(by_votes.begin(), by_votes.end(), 0);
  std::stable_sort(by_votes.begin(), by_votes.end(),
                   [&](int a, int b) { return gamma[a] > gamma[b]; });
  CommitteeValue out{Committee(m), 0};
  for (int r = 0; r < size; ++r) out.committee.set(by_votes[r]);
  for (int j = 0; j < m; ++j) {
    out.value += out.committee.test(j) ? n - gamma[j] : gamma[j];
  }
  return out;
}

namespace {

// Advances `combo` (strictly increasing, values in [0, n)) to the next
// combination in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& combo, int n) {
  const int r = static_cast<int>(combo.size());
  int pos = r - 1;
  while (pos >= 0 && combo[pos] == n - r + pos) --pos;
  if (pos < 0) return false;
  ++combo[pos];
  for (int t = pos + 1; t < r; ++t) combo[t] = combo[t - 1] + 1;
  return true;
}

}  // namespace

BottomHSolution solve_bottom_h(const Instance& instance, int h,
                               std::uint64_t budget) {
  const int n = instance.num_voters();
  const int m = instance.num_candidates();
  OwaWeights::BottomH(h).Validate(n);
  const std::uint64_t subsets = binomial(n, h);
  if (subsets > budget) {
    throw ResourceLimitError("bottom-h enumeration needs C(" +
                             std::to_string(n) + ", " + std::to_string(h) +
                             ") = " + std::to_string(subsets) +
                             " subsets, budget is " + std::to_string(budget));
  }

  const bool via_complement = n - h < h;
  const int r = via_complement ? n - h : h;
  const auto gamma = instance.approval_counts();

  std::vector<int> combo(r);
  std::iota(combo.begin(), combo.end(), 0);
  std::vector<int> counts(m);
  VoterSet support;
  support.reserve(h);

  BottomHSolution best{Committee(m), {}, std::numeric_limits<Score>::max()};
  std::vector<int> best_counts;
  do {
    std::fill(counts.begin(), counts.end(), 0);
    for (int i : combo) {
      for (int j = 0; j < m; ++j) counts[j] += instance.approves(i, j);
    }
    if (via_complement) {
      for (int j = 0; j < m; ++j) counts[j] = gamma[j] - counts[j];
    }
    Score value = 0;
    for (int j = 0; j < m; ++j) value += std::min(counts[j], h - counts[j]);
    if (value > best.value) continue;

    support.clear();
    if (via_complement) {
      std::size_t t = 0;
      for (int i = 0; i < n; ++i) {
        if (t < combo.size() && combo[t] == i) {
          ++t;
        } else {
          support.push_back(i);
        }
      }
    } else {
      support.assign(combo.begin(), combo.end());
    }
    if (value < best.value || support < best.support) {
      best.value = value;
      best.support = support;
      best_counts = counts;
    }
  } while (next_combination(combo, n));

  for (int j = 0; j < m; ++j) {
    best.committee.set(j, best_counts[j] > h - best_counts[j]);
  }
  assert(best.value == subset_distance(instance, best.support, best.committee));
  return best;
}

}  // namespace kvote
