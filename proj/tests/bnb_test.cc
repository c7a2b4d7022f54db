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

#include <gtest/gtest.h>

#include "kvote/bounds.h"
#include "kvote/errors.h"
#include "kvote/polysolve.h"
#include "test_support.h"

namespace kvote {
namespace {

using testing::T1;

Committee bits(std::string_view s) { return BitVector::FromString(s); }

TEST(BruteForceTest, Examples) {
  const Solution k3 = brute_force(T1(), OwaWeights::TopK(3));
  EXPECT_EQ(k3.value, 3);
  EXPECT_EQ(k3.committee.ToString(), "111");
  EXPECT_EQ(brute_force(T1(), OwaWeights::TopK(1)).value, 1);
  const Solution single = brute_force(Instance::FromStrings({"1011"}), OwaWeights::TopK(1));
  EXPECT_EQ(single.value, 0);
  EXPECT_EQ(single.committee.ToString(), "1011");
  EXPECT_EQ(brute_force(T1(), OwaWeights::BottomH(2)).value, 2);
  EXPECT_EQ(brute_force(T1(), OwaWeights::BottomH(2)).committee.ToString(), "001");
}

TEST(BruteForceTest, BudgetAndArguments) {
  GenConfig c;
  c.n = 3;
  c.m = 20;
  EXPECT_THROW(brute_force(generate(c), OwaWeights::TopK(1), 1000), ResourceLimitError);
  EXPECT_THROW(brute_force(T1(), OwaWeights::TopK(4)), std::invalid_argument);
}

TEST(BruteForceTest, MatchesNaiveIncludingTieBreak) {
  for (const auto& entry : testing::corpus(40, 8, 10)) {
    const int n = entry.instance.num_voters();
    for (int k = 1; k <= n; ++k) {
      const testing::naive::Best top = testing::naive::min_top_k(entry.rows, k);
      const Solution sol = brute_force(entry.instance, OwaWeights::TopK(k));
      EXPECT_EQ(sol.value, top.value);
      EXPECT_EQ(sol.committee.ToString(), top.committee);
      const testing::naive::Best bottom = testing::naive::min_bottom_h(entry.rows, k);
      const Solution bsol = brute_force(entry.instance, OwaWeights::BottomH(k));
      EXPECT_EQ(bsol.value, bottom.value);
      EXPECT_EQ(bsol.committee.ToString(), bottom.committee);
    }
  }
}

TEST(SolveKsumTest, Examples) {
  EXPECT_EQ(solve_ksum(T1(), 2).value, 2);
  const Solution k3 = solve_ksum(T1(), 3);
  EXPECT_EQ(k3.value, 3);
  EXPECT_TRUE(k3.stats.solved_at_root);
  EXPECT_EQ(k3.stats.fixed_count, 3);
  EXPECT_TRUE(k3.optimal);
  EXPECT_EQ(solve_ksum(T1(), 1).value, 1);
  EXPECT_THROW(solve_ksum(T1(), 0), std::invalid_argument);
  EXPECT_THROW(solve_ksum(T1(), 4), std::invalid_argument);
}

TEST(SolveKsumTest, WarmStartIsValidated) {
  SolveOptions options;
  options.warm_start = WarmStart{bits("11"), 0};
  EXPECT_THROW(solve_ksum(T1(), 1, options), std::invalid_argument);
  options.warm_start = WarmStart{bits("110"), 1};
  EXPECT_THROW(solve_ksum(T1(), 1, options), std::invalid_argument);
  options.warm_start = WarmStart{bits("110"), 2};
  EXPECT_EQ(solve_ksum(T1(), 1, options).value, 1);
}

TEST(SolveKsumTest, BudgetsAreValidated) {
  SolveOptions options;
  options.node_limit = 0;
  EXPECT_THROW(solve_ksum(T1(), 1, options), std::invalid_argument);
  options.node_limit.reset();
  options.time_limit_s = -1.0;
  EXPECT_THROW(solve_ksum(T1(), 1, options), std::invalid_argument);
}

class SolveKsumCorpusTest : public ::testing::TestWithParam<NodeBound> {};

TEST_P(SolveKsumCorpusTest, MatchesBruteForce) {
  for (const auto& entry : testing::corpus(80)) {
    const Instance& inst = entry.instance;
    for (int k = 1; k <= inst.num_voters(); ++k) {
      SolveOptions options;
      options.node_bound = GetParam();
      const Solution sol = solve_ksum(inst, k, options);
      const Solution ref = brute_force(inst, OwaWeights::TopK(k));
      ASSERT_EQ(sol.value, ref.value) << "seed=" << entry.config.seed << " k=" << k;
      EXPECT_TRUE(sol.optimal);
      EXPECT_EQ(sol.lower_bound, sol.value);
      EXPECT_EQ(sol.value, score_value(inst, sol.committee, OwaWeights::TopK(k)));
      EXPECT_LE(sol.stats.root_bound, sol.value);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Bounds, SolveKsumCorpusTest,
                         ::testing::Values(NodeBound::kLagrangian, NodeBound::kPartialTopK),
                         [](const auto& info) {
                           return info.param == NodeBound::kLagrangian ? "Lagrangian"
                                                                       : "PartialTopK";
                         });

// Every bound reported at a node is at most the best completion of that node.
TEST(SolveKsumTest, NodeBoundsAreValid) {
  for (const NodeBound mode : {NodeBound::kLagrangian, NodeBound::kPartialTopK}) {
    for (const auto& entry : testing::corpus(30, 9, 9)) {
      const Instance& inst = entry.instance;
      const int m = inst.num_candidates();
      for (int k = 1; k <= inst.num_voters(); ++k) {
        int checked = 0;
        SolveOptions options;
        options.node_bound = mode;
        options.on_node = [&](const NodeInfo& node) {
          ASSERT_EQ(static_cast<int>(node.assignment.size()), m);
          const auto consistent = [&](const std::string& x) {
            for (int j = 0; j < m; ++j) {
              if (node.assignment[j] >= 0 && x[j] != '0' + node.assignment[j]) return false;
            }
            return true;
          };
          const auto objective = [&](const std::string& x) {
            return testing::naive::top_k(testing::naive::distances(entry.rows, x), k);
          };
          EXPECT_LE(node.bound, testing::naive::minimize(m, objective, consistent).value)
              << "depth=" << node.depth;
          ++checked;
        };
        solve_ksum(inst, k, options);
        EXPECT_GT(checked, 0);
      }
    }
  }
}

TEST(SolveKsumTest, PreprocessingDoesNotChangeValues) {
  for (const auto& entry : testing::corpus(80)) {
    for (int k = 1; k <= entry.instance.num_voters(); ++k) {
      SolveOptions off;
      off.enable_preprocessing = false;
      const Solution a = solve_ksum(entry.instance, k);
      const Solution b = solve_ksum(entry.instance, k, off);
      EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(b.stats.fixed_count, 0);
    }
  }
}

TEST(SolveKsumTest, Deterministic) {
  GenConfig c;
  c.n = 30;
  c.m = 24;
  c.seed = 4;
  const Instance inst = generate(c);
  for (int k : {1, 3, 10}) {
    const Solution a = solve_ksum(inst, k);
    const Solution b = solve_ksum(inst, k);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.committee, b.committee);
    EXPECT_EQ(a.stats.nodes, b.stats.nodes);
    EXPECT_EQ(a.stats.root_bound, b.stats.root_bound);
  }
}

TEST(SolveKsumTest, NodeLimitReturnsFlaggedPartialResult) {
  GenConfig c;
  c.n = 30;
  c.m = 30;
  c.seed = 12;
  const Instance inst = generate(c);
  const Solution full = solve_ksum(inst, 4);
  ASSERT_TRUE(full.optimal);
  ASSERT_GT(full.stats.nodes, 2);
  SolveOptions options;
  options.node_limit = 2;
  const Solution part = solve_ksum(inst, 4, options);
  EXPECT_FALSE(part.optimal);
  EXPECT_LE(part.lower_bound, full.value);
  EXPECT_GE(part.value, full.value);
  EXPECT_LE(part.lower_bound, part.value);
  EXPECT_EQ(part.value, score_value(inst, part.committee, OwaWeights::TopK(4)));
}

TEST(SolveKsumTest, SuppliedLowerBoundIsUsedAtRoot) {
  GenConfig c;
  c.n = 20;
  c.m = 16;
  c.seed = 2;
  const Instance inst = generate(c);
  const Solution ref = solve_ksum(inst, 5);
  SolveOptions options;
  options.lower_bound = ref.value;
  const Solution hinted = solve_ksum(inst, 5, options);
  EXPECT_EQ(hinted.value, ref.value);
  EXPECT_EQ(hinted.stats.root_bound, ref.value);
}

TEST(SolveAllKTest, Examples) {
  const std::vector<Solution> t1 = solve_all_k(T1());
  ASSERT_EQ(t1.size(), 3u);
  EXPECT_EQ(t1[0].k, 3);
  EXPECT_EQ(t1[0].value, 3);
  EXPECT_EQ(t1[1].value, 2);
  EXPECT_EQ(t1[2].value, 1);

  const std::vector<Solution> same =
      solve_all_k(Instance::FromStrings({"01101", "01101", "01101", "01101"}));
  for (const Solution& s : same) {
    EXPECT_EQ(s.value, 0);
    EXPECT_EQ(s.committee.ToString(), "01101");
  }
}

TEST(SolveAllKTest, ChainHoldsAndMatchesBruteForce) {
  for (const auto& entry : testing::corpus(80)) {
    const Instance& inst = entry.instance;
    const int n = inst.num_voters();
    for (const bool chain : {true, false}) {
      SolveOptions options;
      options.enable_chain_bounds = chain;
      const std::vector<Solution> sweep = solve_all_k(inst, options);
      ASSERT_EQ(static_cast<int>(sweep.size()), n);
      for (int idx = 0; idx < n; ++idx) {
        const Solution& s = sweep[idx];
        ASSERT_EQ(s.k, n - idx);
        EXPECT_EQ(s.value, brute_force(inst, OwaWeights::TopK(s.k)).value);
        if (idx > 0) {
          const Solution& next = sweep[idx - 1];
          EXPECT_LE(s.value, next.value);
          EXPECT_GE(s.value * next.k, next.value * s.k);
          EXPECT_GE(s.value, chain_lower(next.value, s.k));
          EXPECT_LE(s.value, score_value(inst, next.committee, OwaWeights::TopK(s.k)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace kvote
