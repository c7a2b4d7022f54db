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

// Variable fixing, the k -> k+1 bound chain and separation of the subset
// constraints
//
//   sum_j gamma_j(S) (1 - x_j) + sum_j (k - gamma_j(S)) x_j <= v,  |S| = k.

#ifndef KVOTE_BOUNDS_H_
#define KVOTE_BOUNDS_H_

#include <optional>
#include <span>
#include <vector>

#include "kvote/model.h"

namespace kvote {

// Candidates whose value is the same in some optimal committee of the k-sum
// problem. Both lists are ascending and disjoint.
struct FixedSet {
  std::vector<int> forced_one;
  std::vector<int> forced_zero;

  int size() const {
    return static_cast<int>(forced_one.size() + forced_zero.size());
  }
};

// forced_one = {j : gamma_j >= n - floor(k/2)},
// forced_zero = {j : gamma_j <= floor(k/2)} minus forced_one.
// Throws std::invalid_argument unless 1 <= k <= n.
FixedSet preprocess_fix(const Instance& instance, int k);

// A subset constraint, stored as the voter set and its approval counts. In
// linear form: sum_j (k - 2 gamma_j(S)) x_j - v <= -sum_j gamma_j(S).
struct Cut {
  VoterSet voters;
  std::vector<int> counts;  // gamma_j(S)
  // Amount by which the separated point violates the cut; > 0.
  double violation = 0.0;

  // Left-hand side d_S(x) of the constraint at a binary committee.
  Score Evaluate(const Committee& committee) const;
};

// ceil(k * z_next / (k + 1)): a lower bound on z(k) given z(k+1).
Score chain_lower(Score z_next, int k);

struct BoundPair {
  Score lower = 0;
  Score upper = 0;
  Committee witness;
};

// Upper bound on z(k) from a committee that was optimal for k + 1: its TopK(k)
// score, i.e. z(k+1) minus its (k+1)-st largest distance.
BoundPair chain_upper(const Instance& instance, const Committee& next_committee,
                      int k);

// Both sides of the chain. `z_next` is z(k+1), `next_committee` attains it.
BoundPair chain_bounds(const Instance& instance, Score z_next,
                       const Committee& next_committee, int k);

inline constexpr double kSeparationTolerance = 1e-9;

// Separation for the x-only subset formulation. Computes
// r_i = sum_j |x_j - p_ij|, takes S as the k largest r_i (ties by ascending
// voter index) and returns the cut for S iff sum_{i in S} r_i > v_hat +
// kSeparationTolerance. The returned cut is a most violated one.
// Throws std::invalid_argument if x_hat has the wrong length, leaves [0, 1],
// or k is out of range.
std::optional<Cut> separate(const Instance& instance,
                            std::span<const double> x_hat, double v_hat, int k);

// Exact integer variant for a binary point.
std::optional<Cut> separate(const Instance& instance, const Committee& x_hat,
                            Score v_hat, int k);

// Separation for the z-variable formulation: r_i = sum_j z_ij, with
// `z_hat` row-major n x m. Returns the k voters with the largest r_i when
// their sum exceeds v_hat + kSeparationTolerance.
std::optional<VoterSet> separate_cover_z(const Instance& instance,
                                         std::span<const double> z_hat,
                                         double v_hat, int k);

}  // namespace kvote

#endif  // KVOTE_BOUNDS_H_
