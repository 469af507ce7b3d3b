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

#include "permitlab/core_model.h"
#include "permitlab/errors.h"
#include "permitlab/instance_io.h"
#include "test_util.h"

namespace permitlab {
namespace {

using testing::BruteVbar;
using testing::R;

Instance TwoItems(const FeasibilityFamily& family) {
  return Instance(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(3)})}},
                  CostModel::Zero(2), {family});
}

TEST(ValueTest, AdditiveSumsTheBundle) {
  Instance inst = TwoItems(FeasibilityFamily::Additive(2));
  EXPECT_EQ(Value(inst, 0, {R(1), R(2)}, 0b11), R(3));
}

TEST(ValueTest, EmptySetIsZero) {
  Instance inst = TwoItems(FeasibilityFamily::Uniform(2, 1));
  EXPECT_EQ(Value(inst, 0, {R(1), R(2)}, 0), R(0));
}

TEST(ValueTest, RankOneKeepsTheBestItem) {
  Instance inst = TwoItems(FeasibilityFamily::Uniform(2, 1));
  EXPECT_EQ(Value(inst, 0, {R(1), R(2)}, 0b11), R(2));
}

TEST(VbarTest, SingleItemOverTwoCostAtoms) {
  Instance inst = testing::SingleItem(DiscreteDist::PointMass(R(2)), {{R(0), R(1, 2)}, {R(1), R(1, 2)}});
  ThresholdMap zero = ThresholdMap::Zero(inst);
  EXPECT_EQ(Vbar(inst, 0, {R(2)}, 1, zero), R(3, 2));
  EXPECT_EQ(BruteVbar(inst, 0, {R(2)}, 1, zero), R(3, 2));
  EXPECT_EQ(Vbar(inst, 0, {R(2)}, 0, zero), R(0));
}

TEST(VbarTest, ThresholdAboveCostRaisesThePrice) {
  Instance inst = testing::SingleItem(DiscreteDist::PointMass(R(2)), {{R(0), R(1, 2)}, {R(1), R(1, 2)}});
  ThresholdMap beta = ThresholdMap::Zero(inst);
  beta.at(0, 0, 0) = 1;
  beta.at(0, 0, 1) = 1;
  EXPECT_EQ(Vbar(inst, 0, {R(2)}, 1, beta), R(1));
  EXPECT_EQ(BruteVbar(inst, 0, {R(2)}, 1, beta), R(1));
}

TEST(VbarSingleTest, Examples) {
  Instance inst = testing::ThreeQuarter();
  ThresholdMap zero = ThresholdMap::Zero(inst);
  EXPECT_EQ(VbarSingle(inst, 0, 0, R(2), zero), R(3, 2));
  EXPECT_EQ(VbarSingle(inst, 0, 0, R(1), zero), R(1, 2));
  Instance pricey = testing::SingleItem(DiscreteDist::PointMass(R(1)), {{R(3), R(1)}});
  EXPECT_EQ(VbarSingle(pricey, 0, 0, R(1), ThresholdMap::Zero(pricey)), R(0));
}

TEST(Stage2Test, Examples) {
  Instance add = TwoItems(FeasibilityFamily::Additive(2));
  BundleChoice empty = Stage2Utility(add, 0, {R(2), R(1)}, {R(1), R(3)}, 0);
  EXPECT_EQ(empty.value, R(0));
  EXPECT_EQ(empty.set, 0u);
  BundleChoice one = Stage2Utility(add, 0, {R(2), R(1)}, {R(1), R(3)}, 0b11);
  EXPECT_EQ(one.value, R(1));
  EXPECT_EQ(one.set, 0b01u);
  Instance rank1 = TwoItems(FeasibilityFamily::Uniform(2, 1));
  BundleChoice pick = Stage2Utility(rank1, 0, {R(2), R(3)}, {R(0), R(0)}, 0b11);
  EXPECT_EQ(pick.value, R(3));
  EXPECT_EQ(pick.set, 0b10u);
}

TEST(SupportingPricesTest, Examples) {
  Instance add = TwoItems(FeasibilityFamily::Additive(2));
  std::vector<Rational> p = SupportingPrices(add, 0, {R(2), R(1)}, {R(1), R(3)}, 0b11);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], R(1));
  EXPECT_EQ(p[1], R(0));
  std::vector<Rational> none = SupportingPrices(add, 0, {R(2), R(1)}, {R(1), R(3)}, 0);
  for (const Rational& v : none) EXPECT_EQ(v, R(0));
}

TEST(MuTest, Examples) {
  Instance inst = testing::ThreeQuarter();
  ThresholdMap zero = ThresholdMap::Zero(inst);
  // vbar of the item is 3/2 > 1, so the core is empty.
  EXPECT_EQ(Mu(inst, 0, {R(2)}, 1, zero, R(1)), R(0));
  EXPECT_EQ(Mu(inst, 0, {R(2)}, 1, zero, R(0)), R(0));
  EXPECT_EQ(Mu(inst, 0, {R(2)}, 1, zero, R(2)), Vbar(inst, 0, {R(2)}, 1, zero));
}

TEST(EffectivePriceTest, MaxOfThresholdAndCost) {
  Instance inst = testing::ThreeQuarter();
  ThresholdMap beta = ThresholdMap::Zero(inst);
  beta.at(0, 0, 0) = R(1, 2);
  beta.at(0, 0, 1) = R(1, 2);
  EXPECT_EQ(EffectivePrice(inst, beta, 0, 0, 0), R(1, 2));
  EXPECT_EQ(EffectivePrice(inst, beta, 0, 0, 1), R(1));
}

TEST(DistTest, RejectsBadInput) {
  EXPECT_THROW(DiscreteDist({R(1), R(2)}, {R(1, 2), R(1, 3)}), InvalidInput);
  EXPECT_THROW(DiscreteDist({R(2), R(1)}, {R(1, 2), R(1, 2)}), InvalidInput);
  EXPECT_THROW(DiscreteDist({R(-1)}, {R(1)}), InvalidInput);
  EXPECT_THROW(DiscreteDist({R(1)}, {R(0)}), InvalidInput);
}

TEST(DistTest, Queries) {
  DiscreteDist d({R(1), R(2), R(3)}, {R(1, 2), R(1, 10), R(2, 5)});
  EXPECT_EQ(d.ProbAtLeast(R(2)), R(1, 2));
  EXPECT_EQ(d.ProbGreater(R(2)), R(2, 5));
  EXPECT_EQ(d.IndexOf(R(3)), 2);
  EXPECT_EQ(d.IndexOf(R(5, 2)), -1);
  EXPECT_EQ(d.Mean(), R(19, 10));
}

TEST(FamilyTest, RejectsSetsThatAreNotDownwardClosed) {
  EXPECT_THROW(FeasibilityFamily::Explicit(2, {0b00, 0b11}), InvalidInput);
}

TEST(FamilyTest, MatroidRecognition) {
  EXPECT_TRUE(FeasibilityFamily::Additive(3).IsMatroid());
  EXPECT_TRUE(FeasibilityFamily::Uniform(3, 2).IsMatroid());
  EXPECT_TRUE(FeasibilityFamily::Partition(3, {0b011, 0b100}, {1, 1}).IsMatroid());
  // {0,1} and {2} as bases break the exchange property.
  EXPECT_FALSE(FeasibilityFamily::FromBases(3, {0b011, 0b100}).IsMatroid());
  EXPECT_EQ(FeasibilityFamily::Uniform(3, 2).Rank(0b111), 2);
}

TEST(TypeSpaceTest, EnumeratesProducts) {
  Instance inst = TwoItems(FeasibilityFamily::Additive(2));
  const TypeSpace& types = inst.types(0);
  ASSERT_EQ(types.size(), 4);
  Rational total = 0;
  for (int k = 0; k < types.size(); ++k) total += types.prob(k);
  EXPECT_EQ(total, R(1));
  EXPECT_EQ(types.values(1), (std::vector<Rational>{R(2), R(1)}));
  EXPECT_EQ(types.WithDigit(0, 1, 1), 2);
}

TEST(RationalTest, ParseAndFormat) {
  EXPECT_EQ(ParseRational("3/6"), R(1, 2));
  EXPECT_EQ(ParseRational("0.25"), R(1, 4));
  EXPECT_EQ(ParseRational("7"), R(7));
  EXPECT_EQ(FormatRational(R(3)), "3/1");
  EXPECT_EQ(FormatRational(R(-2, 4)), "-1/2");
  EXPECT_THROW(ParseRational("1/0"), InvalidInput);
  EXPECT_THROW(ParseRational("abc"), InvalidInput);
}

TEST(InstanceIoTest, RoundTrip) {
  Instance inst(2, 2,
                {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::PointMass(R(3, 2))},
                 {DiscreteDist({R(1, 2), R(4)}, {R(1, 3), R(2, 3)}), DiscreteDist::PointMass(R(1))}},
                testing::Costs(2, {{{R(0), R(1)}, R(1, 4)}, {{R(1, 2), R(0)}, R(3, 4)}}),
                {FeasibilityFamily::Uniform(2, 1), FeasibilityFamily::Partition(2, {0b01, 0b10}, {1, 0})});
  std::string text = InstanceToJson(inst);
  Instance back = InstanceFromJson(text);
  EXPECT_EQ(InstanceToJson(back), text);
  EXPECT_EQ(back.family(1).Contains(0b10), false);
  EXPECT_EQ(back.costs().prob(1), R(3, 4));
}

TEST(InstanceIoTest, RejectsMalformedFiles) {
  EXPECT_THROW(InstanceFromJson("{\"n\": 1}"), InvalidInput);
  EXPECT_THROW(InstanceFromJson("not json"), InvalidInput);
}

}  // namespace
}  // namespace permitlab
