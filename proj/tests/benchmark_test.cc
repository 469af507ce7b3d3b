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

#include "permitlab/benchmark.h"
#include "permitlab/profit_lp.h"
#include "permitlab/reference_oracles.h"
#include "test_util.h"

namespace permitlab {
namespace {

using testing::R;

TEST(ThresholdTest, HalfOfAFullSale) {
  Threshold th = ThresholdFor(DiscreteDist::Uniform({R(1), R(2)}), R(1, 2), R(0));
  EXPECT_EQ(th.beta, R(2));
  EXPECT_EQ(th.rho, R(1));
  EXPECT_TRUE(th.above_cost);
  EXPECT_EQ(SaleProbability(DiscreteDist::Uniform({R(1), R(2)}), th, R(0)), R(1, 2));
}

TEST(ThresholdTest, TargetAboveTheCostMass) {
  Threshold th = ThresholdFor(DiscreteDist::Uniform({R(1), R(2)}), R(1, 2), R(3, 2));
  EXPECT_EQ(th.beta, R(0));
  EXPECT_FALSE(th.above_cost);
}

TEST(ThresholdTest, ZeroTargetAndRationing) {
  DiscreteDist d({R(1), R(2), R(3)}, {R(1, 2), R(1, 4), R(1, 4)});
  Threshold none = ThresholdFor(d, R(0), R(0));
  EXPECT_EQ(none.beta, R(3));
  EXPECT_EQ(none.rho, R(0));
  EXPECT_EQ(SaleProbability(d, none, R(0)), R(0));
  Threshold part = ThresholdFor(d, R(3, 8), R(0));
  EXPECT_EQ(part.beta, R(2));
  EXPECT_EQ(part.rho, R(1, 2));
  EXPECT_EQ(SaleProbability(d, part, R(0)), R(3, 8));
}

TEST(ExAnteTest, EmptyMechanismHasZeroTargets) {
  Instance inst = testing::ThreeQuarter();
  ExAnteProfile ex = ExAnteFromMechanism(inst, EmptyMechanism(inst));
  for (int c = 0; c < 2; ++c) {
    EXPECT_EQ(ex.q.at(0, 0, c), R(0));
    EXPECT_EQ(ex.beta.at(0, 0, c), R(2));
  }
}

TEST(FlowTest, SingleItemLabelsEverything) {
  Instance inst = testing::ThreeQuarter();
  FlowSpec flow = BuildFlow(inst, ThresholdMap::Zero(inst));
  for (int label : flow.label[0]) EXPECT_EQ(label, 0);
  EXPECT_TRUE(CheckFlowConservation(inst, flow.flow).ok);
  EXPECT_EQ(flow.ironed_phi[0][0][0], R(0));
  EXPECT_EQ(flow.ironed_phi[0][1][0], R(2));
}

TEST(FlowTest, TiesGoToTheSmallerIndex) {
  Instance inst(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(2)})}},
                CostModel::Zero(2), {FeasibilityFamily::Additive(2)});
  auto labels = FavoriteLabels(inst, ThresholdMap::Zero(inst));
  const TypeSpace& types = inst.types(0);
  for (int k = 0; k < types.size(); ++k) {
    const auto& t = types.values(k);
    int expected = t[1] > t[0] ? 1 : 0;
    EXPECT_EQ(labels[0][k], expected);
  }
}

TEST(BenchmarkTermsTest, EmptyMechanismIsZero) {
  Instance inst = testing::ThreeQuarter();
  DirectMechanism empty = EmptyMechanism(inst);
  BenchmarkReport r = EvaluateBenchmarkTerms(inst, empty, ExAnteFromMechanism(inst, empty));
  EXPECT_EQ(r.most_surplus, R(0));
  EXPECT_EQ(r.prophet, R(0));
  // Only the labeled item exists, so nothing is left over.
  EXPECT_EQ(r.less_surplus, R(0));
}

TEST(BenchmarkTermsTest, ThreeQuarterBoundAndRecompute) {
  Instance inst = testing::ThreeQuarter();
  LpOptimum opt = SolveProfitLp(inst);
  ExAnteProfile ex = ExAnteFromMechanism(inst, opt.mechanism);
  BenchmarkReport r = EvaluateBenchmarkTerms(inst, opt.mechanism, ex);
  EXPECT_GE(r.most_surplus + r.prophet + r.less_surplus, R(3, 4));
  EXPECT_TRUE(r.holds);
  BenchmarkRecompute rc = DirectBenchmarkRecompute(inst, opt.mechanism);
  EXPECT_EQ(rc.most_surplus.value, r.most_surplus);
  EXPECT_EQ(rc.prophet.value, r.prophet);
  EXPECT_EQ(rc.less_surplus.value, r.less_surplus);
  BenchmarkReport z = EvaluateBenchmarkTerms(inst, opt.mechanism, ZeroThresholds(inst, opt.mechanism));
  EXPECT_EQ(z.prophet, R(0));
  EXPECT_GE(z.most_surplus + z.less_surplus, R(3, 4));
}

// Two iid items whose vbar is 1/2 or 3/2 (values equal vbar at zero cost).
Instance TwoGridItems() {
  DiscreteDist d = DiscreteDist::Uniform({R(1, 2), R(3, 2)});
  return Instance(1, 2, {{d, d}}, CostModel::Zero(2), {FeasibilityFamily::Additive(2)});
}

TEST(CoreTailTest, GridExample) {
  Instance inst = TwoGridItems();
  ThresholdMap zero = ThresholdMap::Zero(inst);
  CoreTailReport ct = EvaluateCoreTail(inst, zero);
  ASSERT_EQ(ct.tau.size(), 1u);
  EXPECT_EQ(ct.tau[0], R(3, 2));
  // Direct enumeration over the four profiles: nothing exceeds tau, so every
  // item is core and the tail is empty.
  Rational tail = 0, core = 0;
  const TypeSpace& types = inst.types(0);
  for (int k = 0; k < types.size(); ++k) {
    const auto& t = types.values(k);
    ItemSet c = 0;
    for (int j = 0; j < 2; ++j) {
      if (t[j] <= ct.tau[0]) c |= Singleton(j);
      if (t[j] > ct.tau[0]) {
        Rational other = 0;
        for (int k2 = 0; k2 < types.size(); ++k2) {
          if (types.values(k2)[1 - j] >= t[j]) other += types.prob(k2);
        }
        tail += types.prob(k) * t[j] * other;
      }
    }
    core += types.prob(k) * testing::BruteVbar(inst, 0, t, c, zero);
  }
  EXPECT_EQ(tail, R(0));
  EXPECT_EQ(core, R(2));
  EXPECT_EQ(ct.tail, tail);
  EXPECT_EQ(ct.core, core);
  EXPECT_LE(ct.less_surplus, ct.tail + ct.core);
}

TEST(CoreTailTest, SingleItemHasNoTail) {
  Instance inst = testing::ThreeQuarter();
  CoreTailReport ct = EvaluateCoreTail(inst, ThresholdMap::Zero(inst));
  EXPECT_EQ(ct.tail, R(0));
}

TEST(CoreTailTest, ZeroSurplusEverywhere) {
  Instance inst = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(5), R(1)}});
  CoreTailReport ct = EvaluateCoreTail(inst, ThresholdMap::Zero(inst));
  EXPECT_EQ(ct.tau[0], R(0));
  EXPECT_EQ(ct.core, R(0));
  EXPECT_EQ(ct.tail, R(0));
}

TEST(TailPricesTest, GridExample) {
  Instance inst = TwoGridItems();
  TailPrices tp = ComputeTailPrices(inst, ThresholdMap::Zero(inst), {R(3, 2)});
  EXPECT_EQ(tp.xi[0][0], R(3, 2));
  EXPECT_EQ(tp.r[0][0], R(3, 4));
  EXPECT_EQ(tp.r_sum, R(3, 2));
  // Nothing lies strictly above tau.
  EXPECT_EQ(tp.r_strict[0][0], R(0));
}

TEST(TailPricesTest, TiesPickTheSmallestPrice) {
  // a * Pr[v >= a] is 1 at both a = 1 and a = 2.
  Instance inst = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(0), R(1)}});
  TailPrices tp = ComputeTailPrices(inst, ThresholdMap::Zero(inst), {R(0)});
  EXPECT_EQ(tp.xi[0][0], R(1));
  EXPECT_EQ(tp.r[0][0], R(1));
}

TEST(MedianTest, LowerMedian) {
  EXPECT_EQ(LowerMedian({{R(1, 2), R(1, 2)}, {R(3, 2), R(1, 2)}}), R(1, 2));
  EXPECT_EQ(LowerMedian({{R(1), R(1, 3)}, {R(2), R(1, 3)}, {R(3), R(1, 3)}}), R(2));
}

TEST(ConcentrationTest, ThreeQuarterDelta) {
  Instance inst = testing::ThreeQuarter();
  ConcentrationReport cc = CoreConcentration(inst, ThresholdMap::Zero(inst), {R(3, 2)});
  EXPECT_EQ(cc.delta[0], R(1, 4));
  EXPECT_TRUE(cc.holds);
}

TEST(ConcentrationTest, PointMassesAndEmptyCore) {
  Instance point = testing::SingleItem(DiscreteDist::PointMass(R(3)), {{R(1), R(1)}});
  ConcentrationReport cc = CoreConcentration(point, ThresholdMap::Zero(point), {R(2)});
  EXPECT_EQ(cc.delta[0], R(1));
  EXPECT_EQ(cc.core_mean[0], R(2));
  EXPECT_TRUE(cc.holds);
  ConcentrationReport none = CoreConcentration(point, ThresholdMap::Zero(point), {R(0)});
  EXPECT_EQ(none.delta[0], R(0));
}

}  // namespace
}  // namespace permitlab
