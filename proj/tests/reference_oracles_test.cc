// Copyright 2026 The Authors.
//
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

#include <gtest/gtest.h>

#include <map>

#include "permitlab/benchmark.h"
#include "permitlab/errors.h"
#include "permitlab/mechanisms.h"
#include "permitlab/profit_lp.h"
#include "permitlab/reference_oracles.h"
#include "test_util.h"

namespace permitlab {
namespace {

using testing::R;

// Bundle-of-permits revenue for one additive buyer whose permit value is the
// average of the item values (one item at cost 0, uniformly).
Rational AverageBundleOracle(const DiscreteDist& d, int m) {
  std::map<Rational, Rational> sum = {{R(0), R(1)}};
  for (int j = 0; j < m; ++j) {
    std::map<Rational, Rational> next;
    for (const auto& [v, p] : sum) {
      for (int s = 0; s < d.size(); ++s) next[v + d.value(s)] += p * d.prob(s);
    }
    sum = std::move(next);
  }
  Rational best = 0;
  Rational tail = 0;
  for (auto it = sum.rbegin(); it != sum.rend(); ++it) {
    tail += it->second;
    best = Max(best, it->first / m * tail);
  }
  return best;
}

TEST(PostedPriceOracleTest, ZeroValuesEarnNothing) {
  Instance zero = testing::SingleItem(DiscreteDist::PointMass(R(0)), {{R(0), R(1)}});
  for (MechanismKind k : {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB}) {
    EXPECT_EQ(BrutePostedPriceOpt(zero, k).value, R(0));
  }
}

TEST(PostedPriceOracleTest, ThreeQuarter) {
  Instance inst = testing::ThreeQuarter();
  for (MechanismKind k : {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB}) {
    OracleResult r = BrutePostedPriceOpt(inst, k);
    EXPECT_EQ(r.value, R(3, 4)) << MechanismKindName(k);
    EXPECT_GT(r.enumeration_size, 0);
    EXPECT_EQ(SearchBest(inst, k, DefaultGrid(inst)).profit, r.value);
  }
  EXPECT_EQ(SolveProfitLp(inst).opt, R(3, 4));
  EXPECT_THROW(BrutePostedPriceOpt(inst, MechanismKind::kCSIP), InvalidInput);
}

TEST(PostedPriceOracleTest, RequiresOneBuyer) {
  Instance two(2, 1, {{DiscreteDist::PointMass(R(1))}, {DiscreteDist::PointMass(R(1))}}, CostModel::Zero(1),
               {FeasibilityFamily::Additive(1), FeasibilityFamily::Additive(1)});
  EXPECT_THROW(BrutePostedPriceOpt(two, MechanismKind::kIP), InvalidInput);
}

TEST(BundleGapTest, PostedPricesEarnOne) {
  Instance inst = BundleGapInstance(2, 4);
  const DiscreteDist& d = inst.dist(0, 0);
  for (int s = 0; s < d.size(); ++s) {
    Rational tail = 0;
    for (int k = s; k < d.size(); ++k) tail += d.prob(k);
    EXPECT_EQ(d.value(s) * tail, R(1));
  }
  EXPECT_THROW(BundleGapInstance(1, 4), InvalidInput);
}

TEST(BundleGapTest, BundleGrowsWithItems) {
  const std::vector<std::pair<int, Rational>> frozen = {{2, R(9, 8)}, {4, R(161, 128)}, {8, R(759, 512)}};
  for (const auto& [m, pb] : frozen) {
    Instance inst = BundleGapInstance(m, 6);
    EXPECT_EQ(AverageBundleOracle(inst.dist(0, 0), m), pb) << m;
    EXPECT_EQ(BrutePostedPriceOpt(inst, MechanismKind::kIP).value, R(1)) << m;
    EXPECT_EQ(BrutePostedPriceOpt(inst, MechanismKind::kPB).value, pb) << m;
  }
  EXPECT_EQ(BrutePostedPriceOpt(BundleGapInstance(2, 4), MechanismKind::kPB).value, R(9, 8));
}

TEST(RecomputeTest, EmptyMechanismHasZeroTerms) {
  Instance inst = testing::ThreeQuarter();
  BenchmarkRecompute r = DirectBenchmarkRecompute(inst, EmptyMechanism(inst));
  EXPECT_EQ(r.most_surplus.value, R(0));
  EXPECT_EQ(r.prophet.value, R(0));
  EXPECT_EQ(r.less_surplus.value, R(0));
}

TEST(RecomputeTest, AgreesWithBenchmarkUnderItemSwap) {
  Instance a(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(3)})}},
             testing::Costs(2, {{{R(0), R(1)}, R(1, 2)}, {{R(1, 2), R(0)}, R(1, 2)}}),
             {FeasibilityFamily::Uniform(2, 1)});
  Instance b(1, 2, {{DiscreteDist::Uniform({R(1), R(3)}), DiscreteDist::Uniform({R(1), R(2)})}},
             testing::Costs(2, {{{R(1), R(0)}, R(1, 2)}, {{R(0), R(1, 2)}, R(1, 2)}}),
             {FeasibilityFamily::Uniform(2, 1)});
  LpOptimum la = SolveProfitLp(a);
  LpOptimum lb = SolveProfitLp(b);
  EXPECT_EQ(la.opt, lb.opt);
  // Labels break ties by index, so the terms themselves may differ between a and b.
  for (const auto& [inst, lp] : {std::pair{&a, &la}, std::pair{&b, &lb}}) {
    BenchmarkRecompute r = DirectBenchmarkRecompute(*inst, lp->mechanism, true);
    BenchmarkReport terms = EvaluateBenchmarkTerms(*inst, lp->mechanism, ZeroThresholds(*inst, lp->mechanism));
    EXPECT_EQ(r.most_surplus.value, terms.most_surplus);
    EXPECT_EQ(r.prophet.value, R(0));
    EXPECT_EQ(r.less_surplus.value, terms.less_surplus);
    EXPECT_LE(lp->opt, terms.most_surplus + terms.less_surplus);
  }
}

}  // namespace
}  // namespace permitlab
