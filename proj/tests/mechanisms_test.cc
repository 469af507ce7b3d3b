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
#include "permitlab/errors.h"
#include "permitlab/mechanism_io.h"
#include "permitlab/mechanisms.h"
#include "permitlab/profit_lp.h"
#include "test_util.h"

namespace permitlab {
namespace {

using testing::R;

// Profit of a single-item posted price p(c) by enumeration of (t, c).
Rational EnumeratedPostedProfit(const Instance& inst, const std::vector<Rational>& price) {
  Rational total = 0;
  const DiscreteDist& d = inst.dist(0, 0);
  for (int c = 0; c < inst.costs().size(); ++c) {
    for (int s = 0; s < d.size(); ++s) {
      if (d.value(s) >= price[c]) {
        total += inst.costs().prob(c) * d.prob(s) * (price[c] - inst.costs().cost(c, 0));
      }
    }
  }
  return total;
}

TEST(EvaluateTest, CsipOnThreeQuarter) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kCSIP);
  spec.item_prices.at(0, 0, 0) = 2;
  spec.item_prices.at(0, 0, 1) = 2;
  EXPECT_EQ(EnumeratedPostedProfit(inst, {R(2), R(2)}), R(3, 4));
  EvalResult r = Evaluate(inst, spec);
  EXPECT_EQ(r.profit, R(3, 4));
  EXPECT_EQ(ProfitFromTrace(inst, spec, r), r.profit);
}

TEST(EvaluateTest, PricesBelowCostLoseMoney) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kIP);
  spec.item_prices.at(0, 0, 1) = R(1, 2);
  EXPECT_EQ(Evaluate(inst, spec).profit, R(-1, 4));
}

TEST(EvaluateTest, PricesAboveValuesEarnNothing) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kIP);
  spec.item_prices.at(0, 0, 0) = 5;
  spec.item_prices.at(0, 0, 1) = 5;
  EXPECT_EQ(Evaluate(inst, spec).profit, R(0));
}

TEST(EvaluateTest, PermitPricing) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kPP);
  spec.permit_prices[0][0] = R(3, 2);
  EvalResult r = Evaluate(inst, spec);
  EXPECT_EQ(r.profit, R(3, 4));
  EXPECT_EQ(r.permit_prob[0][0], R(1, 2));
  spec.permit_prices[0][0] = 0;
  EXPECT_EQ(Evaluate(inst, spec).profit, R(0));
  spec.permit_prices[0][0] = 2;
  EXPECT_EQ(Evaluate(inst, spec).profit, R(0));
}

TEST(EvaluateTest, BundlePricing) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kPB);
  spec.bundle_prices[0] = R(3, 2);
  EvalResult r = Evaluate(inst, spec);
  EXPECT_EQ(r.profit, R(3, 4));
  EXPECT_EQ(r.bundle_accept_prob[0], R(1, 2));
  spec.bundle_prices[0] = 0;
  EXPECT_EQ(Evaluate(inst, spec).profit, R(0));
  spec.bundle_prices[0] = 2;
  EXPECT_EQ(Evaluate(inst, spec).profit, R(0));
}

TEST(EvaluateTest, SequentialBuyersShareTheItem) {
  Instance inst(2, 1, {{DiscreteDist::PointMass(R(3))}, {DiscreteDist::PointMass(R(5))}}, CostModel::Zero(1),
                {FeasibilityFamily::Additive(1), FeasibilityFamily::Additive(1)});
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kCSIP);
  spec.item_prices.at(0, 0, 0) = 2;
  spec.item_prices.at(1, 0, 0) = 4;
  EXPECT_EQ(Evaluate(inst, spec).profit, R(2));
  spec.order = {1, 0};
  EvalResult r = Evaluate(inst, spec);
  EXPECT_EQ(r.profit, R(4));
  EXPECT_EQ(r.item_prob[1][0][0], R(1));
  EXPECT_EQ(r.availability[0][0][0], R(0));
}

TEST(ValidateSpecTest, RejectsBadShapes) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kIP);
  spec.order = {0, 0};
  EXPECT_THROW(ValidateSpec(inst, spec), InvalidInput);
  MechanismSpec tie = DefaultSpec(inst, MechanismKind::kIP);
  tie.tie_accept.at(0, 0, 0) = 2;
  EXPECT_THROW(ValidateSpec(inst, tie), InvalidInput);
}

TEST(BestResponseTest, Examples) {
  Instance inst(1, 2, {{DiscreteDist::PointMass(R(1)), DiscreteDist::PointMass(R(2))}}, CostModel::Zero(2),
                {FeasibilityFamily::Additive(2)});
  std::vector<std::vector<Rational>> avail(2, std::vector<Rational>(1, R(1)));
  MechanismSpec pp = DefaultSpec(inst, MechanismKind::kPP);
  EXPECT_EQ(BestResponsePermits(inst, pp, 0, {R(1), R(2)}, avail), 0b11u);
  pp.permit_prices[0] = {R(1), R(2)};
  EXPECT_EQ(BestResponsePermits(inst, pp, 0, {R(1), R(2)}, avail), 0b11u);
  MechanismSpec rspp = DefaultSpec(inst, MechanismKind::kRSPP);
  rspp.permit_prices[0] = {R(1, 2), R(19, 10)};
  EXPECT_EQ(BestResponsePermits(inst, rspp, 0, {R(1), R(2)}, avail), 0b01u);
}

TEST(ConstructionTest, CsipFromCopies) {
  Instance one = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(0), R(1)}});
  MechanismSpec s = ConstructCsipFromCopies(one);
  EXPECT_EQ(Evaluate(one, s).profit, R(1));
  Instance two(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(2)})}},
               CostModel::Zero(2), {FeasibilityFamily::Additive(2)});
  MechanismSpec s2 = ConstructCsipFromCopies(two);
  EXPECT_EQ(Evaluate(two, s2).profit, R(2));
  Instance dead = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(4), R(1)}});
  EXPECT_EQ(Evaluate(dead, ConstructCsipFromCopies(dead)).profit, R(0));
}

TEST(ConstructionTest, SeparateIpUsesMonopolyPrices) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec s = ConstructSeparateIp(inst);
  EXPECT_EQ(Evaluate(inst, s).profit, R(3, 4));
}

TEST(ConstructionTest, RsppHidesHalfOfAnAlwaysAvailableItem) {
  Instance inst = testing::ThreeQuarter();
  ExAnteProfile ex = ZeroThresholds(inst, EmptyMechanism(inst));
  TailPrices tp = ComputeTailPrices(inst, ex.beta, {R(0)});
  MechanismSpec spec = ConstructRsppTail(inst, ex, tp);
  EXPECT_EQ(spec.permit_prices[0][0], tp.xi_strict[0][0] / 2);
  ArrivalHook hook = [](int i, const std::vector<std::vector<Rational>>& avail, MechanismSpec* s) {
    for (size_t c = 0; c < avail[0].size(); ++c) s->show_probs.at(i, 0, c) = R(1, 2) / avail[0][c];
  };
  EvaluateWithHook(inst, &spec, hook);
  EXPECT_EQ(spec.show_probs.at(0, 0, 0), R(1, 2));
  EXPECT_EQ(spec.show_probs.at(0, 0, 1), R(1, 2));
}

TEST(ConstructionTest, RsppRejectsPermitsSoldTooOften) {
  Instance inst = testing::ThreeQuarter();
  ExAnteProfile ex = ZeroThresholds(inst, EmptyMechanism(inst));
  EXPECT_THROW(ConstructRspp(inst, ex, {{R(0)}}, {{R(1)}}), PreconditionFailed);
  // Above every vbar: nothing sells, still a valid construction.
  MechanismSpec high = ConstructRspp(inst, ex, {{R(5)}}, {{R(1)}});
  EXPECT_EQ(Evaluate(inst, high).profit, R(0));
}

TEST(ConstructionTest, SpbAcceptsPointMasses) {
  Instance point = testing::SingleItem(DiscreteDist::PointMass(R(3)), {{R(1), R(1)}});
  ExAnteProfile ex = ZeroThresholds(point, EmptyMechanism(point));
  ConcentrationReport cc = CoreConcentration(point, ex.beta, {R(2)});
  MechanismSpec spb = ConstructSpb(point, ex, cc.delta);
  EXPECT_EQ(spb.bundle_prices[0], R(1));
  EvalResult r = Evaluate(point, spb);
  EXPECT_EQ(r.bundle_accept_prob[0], R(1));
  EXPECT_EQ(r.profit, R(1));
}

TEST(AuxiliaryTest, PermitConversionKeepsRevenue) {
  Instance inst = testing::ThreeQuarter();
  AuxiliaryMechanism aux = AuxiliaryFromPermitPrices(inst, {R(3, 2)});
  CheckAuxiliaryTruthful(inst, aux);
  EXPECT_EQ(AuxiliaryRevenue(inst, aux), R(3, 4));
  DirectMechanism converted = ConvertRevenueToPermit(inst, aux);
  EXPECT_EQ(Profit(inst, converted), R(3, 4));
  EXPECT_TRUE(CheckBic(inst, converted).ok);
  AuxiliaryMechanism bundle = AuxiliaryFromBundlePrice(inst, R(3, 2));
  EXPECT_EQ(Profit(inst, ConvertRevenueToPermit(inst, bundle)), R(3, 4));
}

TEST(AuxiliaryTest, RejectsUntruthfulAuxiliary) {
  Instance inst = testing::ThreeQuarter();
  AuxiliaryMechanism aux = AuxiliaryFromPermitPrices(inst, {R(3, 2)});
  // The low type now gets the permit for free; the high type copies it.
  aux.lottery[0] = {{ItemSet{1}, R(1)}};
  aux.payment[0] = 0;
  EXPECT_THROW(CheckAuxiliaryTruthful(inst, aux), VerificationError);
}

TEST(SearchTest, PermitSearchOnThreeQuarter) {
  Instance inst = testing::ThreeQuarter();
  SearchResult r = SearchBest(inst, MechanismKind::kPP, DefaultGrid(inst));
  EXPECT_EQ(r.profit, R(3, 4));
  EXPECT_EQ(r.spec.permit_prices[0][0], R(3, 2));
  CandidateGrid empty = DefaultGrid(inst);
  empty.permit[0].clear();
  EXPECT_THROW(SearchBest(inst, MechanismKind::kPP, empty), InvalidInput);
  EXPECT_THROW(SearchBest(inst, MechanismKind::kRSPP, DefaultGrid(inst)), InvalidInput);
}

TEST(SearchTest, AdditiveItemPricingIsPerItem) {
  Instance two(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(3)})}},
               CostModel::Zero(2), {FeasibilityFamily::Additive(2)});
  SearchResult r = SearchBest(two, MechanismKind::kIP, DefaultGrid(two));
  Rational sum = testing::BrutePostedPrice(two.dist(0, 0), R(0)) + testing::BrutePostedPrice(two.dist(0, 1), R(0));
  EXPECT_EQ(r.profit, sum);
}

TEST(MonteCarloTest, PointMassHasNoVariance) {
  Instance point = testing::SingleItem(DiscreteDist::PointMass(R(3)), {{R(1), R(1)}});
  MechanismSpec spec = DefaultSpec(point, MechanismKind::kIP);
  spec.item_prices.at(0, 0, 0) = 3;
  MonteCarloResult mc = MonteCarloProfit(point, spec, 100, 9);
  EXPECT_DOUBLE_EQ(mc.mean, 2.0);
  EXPECT_DOUBLE_EQ(mc.half_width, 0.0);
}

TEST(MonteCarloTest, SeededAndCoversTheExactValue) {
  Instance inst = testing::ThreeQuarter();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kPP);
  spec.permit_prices[0][0] = R(3, 2);
  MonteCarloResult a = MonteCarloProfit(inst, spec, 100000, 42);
  MonteCarloResult b = MonteCarloProfit(inst, spec, 100000, 42);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.half_width, b.half_width);
  EXPECT_LE(a.lower, 0.75);
  EXPECT_GE(a.upper, 0.75);
  EXPECT_THROW(MonteCarloProfit(inst, spec, 0, 1), InvalidInput);
}

TEST(InducedMechanismTest, MatchesEvaluationAndIsTruthful) {
  Instance inst(1, 2, {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::Uniform({R(1), R(3)})}},
                testing::Costs(2, {{{R(0), R(1)}, R(1, 2)}, {{R(1, 2), R(0)}, R(1, 2)}}),
                {FeasibilityFamily::Uniform(2, 1)});
  for (MechanismKind kind : {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB}) {
    SearchResult r = SearchBest(inst, kind, DefaultGrid(inst));
    DirectMechanism direct = InduceDirectMechanism(inst, r.spec);
    EXPECT_EQ(Profit(inst, direct), r.profit) << MechanismKindName(kind);
    EXPECT_TRUE(CheckBic(inst, direct).ok) << MechanismKindName(kind);
  }
}

TEST(SpecIoTest, RoundTrip) {
  Instance inst(2, 2,
                {{DiscreteDist::Uniform({R(1), R(2)}), DiscreteDist::PointMass(R(1))},
                 {DiscreteDist::PointMass(R(2)), DiscreteDist::Uniform({R(1), R(3)})}},
                CostModel::Zero(2), {FeasibilityFamily::Additive(2), FeasibilityFamily::Uniform(2, 1)});
  MechanismSpec spec = ConstructCsipFromCopies(inst, {1, 0});
  std::string text = SpecToJson(inst, spec);
  MechanismSpec back = SpecFromJson(inst, text);
  EXPECT_EQ(SpecToJson(inst, back), text);
  EXPECT_EQ(Evaluate(inst, back).profit, Evaluate(inst, spec).profit);
  EXPECT_EQ(back.order, (std::vector<int>{1, 0}));
}

TEST(KindTest, NamesRoundTrip) {
  for (MechanismKind k : {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB, MechanismKind::kCSIP,
                          MechanismKind::kRSPP, MechanismKind::kSPB}) {
    EXPECT_EQ(ParseMechanismKind(MechanismKindName(k)), k);
  }
  EXPECT_THROW(ParseMechanismKind("XYZ"), InvalidInput);
}

}  // namespace
}  // namespace permitlab
