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

#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "kvote/polysolve.h"
#include "test_support.h"

namespace kvote {
namespace {

using testing::T1;

Committee bits(std::string_view s) { return BitVector::FromString(s); }

TEST(PreprocessFixTest, Examples) {
  const FixedSet t1 = preprocess_fix(T1(), 2);
  EXPECT_EQ(t1.forced_one, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(t1.forced_zero.empty());

  const Instance mixed = Instance::FromStrings({"1100", "1010", "1000"});
  const FixedSet k1 = preprocess_fix(mixed, 1);
  EXPECT_EQ(k1.forced_one, (std::vector<int>{0}));
  EXPECT_EQ(k1.forced_zero, (std::vector<int>{3}));

  const Instance ones = Instance::FromStrings({"111", "111"});
  for (int k = 1; k <= 2; ++k) {
    EXPECT_EQ(preprocess_fix(ones, k).forced_one, (std::vector<int>{0, 1, 2}));
  }
  EXPECT_THROW(preprocess_fix(T1(), 0), std::invalid_argument);
  EXPECT_THROW(preprocess_fix(T1(), 4), std::invalid_argument);
}

TEST(PreprocessFixTest, OverlapResolvedTowardOneAtKEqualsN) {
  const FixedSet fixed = preprocess_fix(Instance::FromStrings({"10", "01"}), 2);
  EXPECT_EQ(fixed.forced_one, (std::vector<int>{0, 1}));
  EXPECT_TRUE(fixed.forced_zero.empty());
}

// The brute-force optimum over committees that respect the fixings equals the
// unrestricted optimum.
TEST(PreprocessFixTest, SoundOnCorpus) {
  for (const auto& entry : testing::corpus(80)) {
    const Instance& inst = entry.instance;
    const int n = inst.num_voters();
    const int m = inst.num_candidates();
    for (int k = 1; k <= n; ++k) {
      const FixedSet fixed = preprocess_fix(inst, k);
      std::vector<int> seen(m, 0);
      for (int j : fixed.forced_one) ++seen[j];
      for (int j : fixed.forced_zero) ++seen[j];
      for (int j = 0; j < m; ++j) ASSERT_LE(seen[j], 1);
      const auto respects = [&](const std::string& x) {
        for (int j : fixed.forced_one) {
          if (x[j] != '1') return false;
        }
        for (int j : fixed.forced_zero) {
          if (x[j] != '0') return false;
        }
        return true;
      };
      const auto objective = [&](const std::string& x) {
        return testing::naive::top_k(testing::naive::distances(entry.rows, x), k);
      };
      EXPECT_EQ(testing::naive::minimize(m, objective, respects).value,
                testing::naive::minimize(m, objective).value)
          << "n=" << n << " m=" << m << " k=" << k;
    }
  }
}

TEST(ChainTest, Examples) {
  EXPECT_EQ(chain_lower(3, 2), 2);
  EXPECT_EQ(chain_lower(0, 5), 0);
  EXPECT_EQ(chain_lower(7, 6), 6);
  EXPECT_EQ(chain_lower(5, 1), 3);

  const BoundPair a = chain_upper(T1(), bits("111"), 2);
  EXPECT_EQ(a.upper, 2);
  EXPECT_EQ(a.witness, bits("111"));
  EXPECT_EQ(chain_upper(T1(), bits("110"), 1).upper, 2);
  const BoundPair both = chain_bounds(T1(), 3, bits("111"), 2);
  EXPECT_EQ(both.lower, 2);
  EXPECT_EQ(both.upper, 2);
}

TEST(ChainTest, HoldsOnCorpus) {
  for (const auto& entry : testing::corpus(80)) {
    const Instance& inst = entry.instance;
    const int n = inst.num_voters();
    std::vector<testing::naive::Best> z(n + 1);
    for (int k = 1; k <= n; ++k) z[k] = testing::naive::min_top_k(entry.rows, k);
    for (int k = 1; k < n; ++k) {
      const BoundPair b = chain_bounds(inst, z[k + 1].value, bits(z[k + 1].committee), k);
      EXPECT_LE(b.lower, z[k].value);
      EXPECT_GE(b.upper, z[k].value);
      EXPECT_LE(b.lower, b.upper);
      EXPECT_EQ(b.upper, score_value(inst, b.witness, OwaWeights::TopK(k)));
    }
  }
}

TEST(SeparateTest, Examples) {
  const Instance t1 = T1();
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  const std::optional<Cut> cut = separate(t1, ones, 0.0, 2);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->voters, (VoterSet{0, 1}));
  EXPECT_EQ(cut->violation, 2.0);
  EXPECT_EQ(cut->counts, (std::vector<int>{2, 1, 1}));
  EXPECT_FALSE(separate(t1, ones, 2.0, 2).has_value());
  for (int k = 1; k <= 3; ++k) {
    EXPECT_FALSE(separate(t1, std::vector<double>{0.3, 0.9, 0.1}, 3.0 * k, k).has_value());
  }
  EXPECT_TRUE(separate(t1, bits("111"), 1, 2).has_value());
  EXPECT_FALSE(separate(t1, bits("111"), 2, 2).has_value());
}

TEST(SeparateTest, RejectsBadPoints) {
  const Instance t1 = T1();
  EXPECT_THROW(separate(t1, std::vector<double>{1.0, 1.0}, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(separate(t1, std::vector<double>{1.0, 1.5, 0.0}, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(separate(t1, std::vector<double>{1.0, 1.0, 1.0}, 0.0, 4), std::invalid_argument);
  EXPECT_THROW(separate(t1, bits("11"), 0, 1), std::invalid_argument);
}

TEST(SeparateTest, ToleranceOnlyForFractionalPoints) {
  const Instance t1 = T1();
  // r = (1.5, 1.5, 1.5) at x = (0.5, 0.5, 0.5) for every voter.
  const std::vector<double> half = {0.5, 0.5, 0.5};
  EXPECT_FALSE(separate(t1, half, 3.0 - 0.5 * kSeparationTolerance, 2).has_value());
  EXPECT_TRUE(separate(t1, half, 3.0 - 2.0 * kSeparationTolerance, 2).has_value());
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  EXPECT_TRUE(separate(t1, ones, 2.0 - 0.5 * kSeparationTolerance, 2).has_value());
}

// Enumerates every |S| = k subset and returns the largest left-hand side.
double max_subset_lhs(const Instance& inst, const std::vector<double>& x, int k) {
  const int n = inst.num_voters();
  const int m = inst.num_candidates();
  std::vector<double> r(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) r[i] += inst.approves(i, j) ? 1.0 - x[j] : x[j];
  }
  double best = -1.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s += r[i];
    }
    best = std::max(best, s);
  }
  return best;
}

TEST(SeparateTest, CompleteAndMaximalOnCorpus) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& entry : testing::corpus(40)) {
    const Instance& inst = entry.instance;
    const int n = inst.num_voters();
    const int m = inst.num_candidates();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<double> x(m);
      for (double& v : x) v = trial % 2 == 0 ? static_cast<double>(rng() & 1) : unit(rng);
      for (int k = 1; k <= n; ++k) {
        const double best = max_subset_lhs(inst, x, k);
        for (double v : {best - 1.0, best - 0.25, best, best + 0.5}) {
          const std::optional<Cut> cut = separate(inst, x, v, k);
          const bool violated = best > v + kSeparationTolerance;
          EXPECT_EQ(cut.has_value(), violated);
          if (cut) {
            EXPECT_EQ(static_cast<int>(cut->voters.size()), k);
            EXPECT_NEAR(cut->violation, best - v, 1e-9);
            EXPECT_GT(cut->violation, 0.0);
          }
        }
      }
    }
  }
}

TEST(SeparateCoverZTest, PicksTopRows) {
  const Instance t1 = T1();
  const std::vector<double> z = {0.0, 0.5, 0.0, 1.0, 1.0, 0.0, 0.2, 0.2, 0.2};
  const std::optional<VoterSet> s = separate_cover_z(t1, z, 2.0, 2);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s, (VoterSet{1, 2}));
  EXPECT_FALSE(separate_cover_z(t1, z, 2.6, 2).has_value());
  EXPECT_THROW(separate_cover_z(t1, std::vector<double>(8, 0.0), 0.0, 1), std::invalid_argument);
}

TEST(CutTest, EvaluateMatchesSubsetDistance) {
  const Instance t1 = T1();
  const std::optional<Cut> cut = separate(t1, bits("000"), 0, 2);
  ASSERT_TRUE(cut.has_value());
  for (const std::string& x : testing::naive::all_committees(3)) {
    EXPECT_EQ(cut->Evaluate(bits(x)), subset_distance(t1, cut->voters, bits(x)));
  }
}

}  // namespace
}  // namespace kvote
