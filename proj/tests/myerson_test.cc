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

#include "permitlab/errors.h"
#include "permitlab/myerson.h"
#include "test_util.h"

namespace permitlab {
namespace {

using testing::R;

TEST(VirtualValuesTest, UniformTwoPoints) {
  VirtualValueTable t = VirtualValues(DiscreteDist::Uniform({R(1), R(2)}));
  EXPECT_EQ(t.raw, (std::vector<Rational>{R(0), R(2)}));
  EXPECT_EQ(t.ironed, (std::vector<Rational>{R(0), R(2)}));
}

TEST(VirtualValuesTest, IrregularDistributionIsIroned) {
  DiscreteDist d({R(1), R(2), R(3)}, {R(1, 2), R(1, 10), R(2, 5)});
  VirtualValueTable t = VirtualValues(d);
  EXPECT_EQ(t.raw, (std::vector<Rational>{R(0), R(-2), R(3)}));
  const std::vector<Rational> expected{R(-1, 3), R(-1, 3), R(3)};
  EXPECT_EQ(testing::BruteIroned(d), expected);
  EXPECT_EQ(t.ironed, expected);
}

TEST(VirtualValuesTest, PointMass) {
  VirtualValueTable t = VirtualValues(DiscreteDist::PointMass(R(5, 2)));
  EXPECT_EQ(t.ironed, (std::vector<Rational>{R(5, 2)}));
}

TEST(PostedPriceTest, MatchesEnumeration) {
  DiscreteDist d = DiscreteDist::Uniform({R(1), R(2)});
  EXPECT_EQ(BestPostedPriceProfit(d, R(0)), R(1));
  EXPECT_EQ(BestPostedPriceProfit(d, R(1)), R(1, 2));
  EXPECT_EQ(BestPostedPriceProfit(d, R(3)), R(0));
}

TEST(CopiesTest, UnitDemandSingleItem) {
  Instance zero = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(0), R(1)}});
  EXPECT_EQ(CopiesOptUnitDemand(zero, 0), R(1));
  Instance one = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(1), R(1)}});
  EXPECT_EQ(CopiesOptUnitDemand(one, 0), R(1, 2));
  Instance high = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(5), R(1)}});
  EXPECT_EQ(CopiesOptUnitDemand(high, 0), R(0));
  EXPECT_EQ(CopiesOptAdditive(one, 0), CopiesOptUnitDemand(one, 0));
}

Instance TwoUniformCopies(const FeasibilityFamily& family) {
  return Instance(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(2)})}},
                  CostModel::Zero(2), {family});
}

TEST(CopiesTest, AdditiveAndRankOne) {
  EXPECT_EQ(CopiesOptAdditive(TwoUniformCopies(FeasibilityFamily::Additive(2)), 0), R(2));
  // E[max] of two iid ironed values in {0, 2}: 2 * (1 - 1/4).
  EXPECT_EQ(CopiesOptAdditive(TwoUniformCopies(FeasibilityFamily::Uniform(2, 1)), 0), R(3, 2));
  EXPECT_EQ(CopiesOptUnitDemand(TwoUniformCopies(FeasibilityFamily::Additive(2)), 0), R(3, 2));
}

TEST(CopiesTest, UnitDemandSkipsInfeasibleItems) {
  Instance inst(1, 2, {{DiscreteDist::PointMass(R(5)), DiscreteDist::PointMass(R(1))}}, CostModel::Zero(2),
                {FeasibilityFamily::FromBases(2, {0b10})});
  EXPECT_EQ(CopiesOptUnitDemand(inst, 0), R(1));
}

TEST(CopiesTest, MultiBuyer) {
  Instance one = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(0), R(1)}});
  EXPECT_EQ(CopiesOptUnitDemandMulti(one, 0), CopiesOptUnitDemand(one, 0));
  Instance two(2, 1, {{DiscreteDist::Uniform({R(1), R(2)})}, {DiscreteDist::Uniform({R(1), R(2)})}},
               CostModel::Zero(1), {FeasibilityFamily::Additive(1), FeasibilityFamily::Additive(1)});
  EXPECT_EQ(CopiesOptUnitDemandMulti(two, 0), R(3, 2));
  Instance high(2, 1, {{DiscreteDist::Uniform({R(1), R(2)})}, {DiscreteDist::Uniform({R(1), R(2)})}},
                testing::Costs(1, {{{R(9)}, R(1)}}),
                {FeasibilityFamily::Additive(1), FeasibilityFamily::Additive(1)});
  EXPECT_EQ(CopiesOptUnitDemandMulti(high, 0), R(0));
}

TEST(MyersonPropertyTest, IronedSurplusEqualsBestPostedPrice) {
  testing::Gen gen(7);
  for (int trial = 0; trial < 300; ++trial) {
    DiscreteDist d = gen.Dist(5);
    VirtualValueTable t = VirtualValues(d);
    EXPECT_EQ(t.ironed, testing::BruteIroned(d));
    EXPECT_EQ(t.ironed.back(), d.value(d.size() - 1));
    for (int k = 1; k < d.size(); ++k) EXPECT_LE(t.ironed[k - 1], t.ironed[k]);
    for (int r = 0; r < d.size(); ++r) {
      const Rational reserve = d.value(r);
      Rational surplus = 0;
      for (int k = 0; k < d.size(); ++k) surplus += d.prob(k) * PositivePart(t.ironed[k] - reserve);
      EXPECT_EQ(surplus, testing::BrutePostedPrice(d, reserve));
      EXPECT_EQ(surplus, BestPostedPriceProfit(d, reserve));
    }
  }
}

}  // namespace
}  // namespace permitlab
