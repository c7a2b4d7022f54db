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

// Polynomial special cases: minisum (k = n) with and without a committee
// size, and the bottom-h (minimin) problem by subset enumeration.

#ifndef KVOTE_POLYSOLVE_H_
#define KVOTE_POLYSOLVE_H_

#include <cstdint>

#include "kvote/model.h"

namespace kvote {

struct CommitteeValue {
  Committee committee;
  Score value = 0;
};

// x_j = 1 iff gamma_j >= ceil(n/2). Candidates with gamma_j = n/2 are
// included; the objective does not depend on that choice.
CommitteeValue solve_minisum(const Instance& instance);

// The `size` candidates with the largest gamma_j, ties by ascending index.
// Throws std::invalid_argument unless 0 <= size <= m.
CommitteeValue solve_minisum_card(const Instance& instance, int size);

struct BottomHSolution {
  Committee committee;
  // The h voters whose distance sum is minimized, ascending.
  VoterSet support;
  Score value = 0;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

// Minimizes the sum of the h smallest distances. For every voter subset S of
// size h the inner minisum is solved in closed form (x_j = 1 iff
// gamma_j(S) > h - gamma_j(S)); subsets are enumerated directly or through
// their complements, whichever family is smaller. Among equal values the
// lexicographically smallest S wins.
//
// Throws std::invalid_argument unless 1 <= h <= n, and ResourceLimitError
// when C(n, h) exceeds `budget`.
BottomHSolution solve_bottom_h(const Instance& instance, int h,
                               std::uint64_t budget = kDefaultSubsetBudget);

// C(n, r), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int r);

}  // namespace kvote

#endif  // KVOTE_POLYSOLVE_H_
