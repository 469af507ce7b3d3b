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
#include "permitlab/instance_io.h"
#include "permitlab/linear_program.h"
#include "permitlab/profit_lp.h"
#include "test_util.h"

namespace permitlab {
namespace {

using testing::R;

TEST(LinearProgramTest, SmallOptimum) {
  LinearProgram lp;
  int x = lp.AddColumn("x", R(1));
  int y = lp.AddColumn("y", R(1));
  lp.AddRow("a", {{x, R(1)}, {y, R(2)}}, RowSense::kLessEqual, R(4));
  lp.AddRow("b", {{x, R(3)}, {y, R(1)}}, RowSense::kLessEqual, R(6));
  for (bool exact : {false, true}) {
    SolverOptions options;
    options.exact_only = exact;
    LpSolution s = SolveLinearProgram(lp, options);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_EQ(s.objective, R(14, 5));
    EXPECT_EQ(s.x[x], R(8, 5));
    EXPECT_EQ(s.x[y], R(6, 5));
    EXPECT_EQ(s.duals[0], R(2, 5));
    EXPECT_EQ(s.duals[1], R(1, 5));
  }
}

TEST(LinearProgramTest, EqualityFreeAndGreaterRows) {
  // max -x - z with x free, x + z = 3, x >= -1 as a row, z >= 0.
  LinearProgram lp;
  int x = lp.AddColumn("x", R(-1), true);
  int z = lp.AddColumn("z", R(-2));
  lp.AddRow("sum", {{x, R(1)}, {z, R(1)}}, RowSense::kEqual, R(3));
  lp.AddRow("low", {{x, R(1)}}, RowSense::kGreaterEqual, R(-1));
  LpSolution s = SolveLinearProgram(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.x[x], R(3));
  EXPECT_EQ(s.objective, R(-3));
  std::string why;
  EXPECT_TRUE(CheckOptimalityCertificate(lp, s.x, s.duals, &why)) << why;
}

TEST(LinearProgramTest, InfeasibleAndUnbounded) {
  LinearProgram bad;
  int x = bad.AddColumn("x", R(1));
  bad.AddRow("hi", {{x, R(1)}}, RowSense::kGreaterEqual, R(2));
  bad.AddRow("lo", {{x, R(1)}}, RowSense::kLessEqual, R(1));
  EXPECT_EQ(SolveLinearProgram(bad).status, LpStatus::kInfeasible);
  LinearProgram open;
  int y = open.AddColumn("y", R(1));
  open.AddRow("floor", {{y, R(1)}}, RowSense::kGreaterEqual, R(0));
  EXPECT_EQ(SolveLinearProgram(open).status, LpStatus::kUnbounded);
}

TEST(LinearProgramTest, CertificateRejectsWrongDuals) {
  LinearProgram lp;
  int x = lp.AddColumn("x", R(1));
  lp.AddRow("cap", {{x, R(1)}}, RowSense::kLessEqual, R(2));
  std::string why;
  EXPECT_TRUE(CheckOptimalityCertificate(lp, {R(2)}, {R(1)}, &why));
  EXPECT_FALSE(CheckOptimalityCertificate(lp, {R(2)}, {R(0)}, &why));
  EXPECT_FALSE(CheckOptimalityCertificate(lp, {R(3)}, {R(1)}, &why));
}

TEST(LinearProgramTest, LpFormatMentionsEveryRow) {
  LinearProgram lp;
  int x = lp.AddColumn("x", R(1));
  lp.AddRow("cap", {{x, R(1)}}, RowSense::kLessEqual, R(2));
  std::string text = ToLpFormat(lp);
  EXPECT_NE(text.find("cap:"), std::string::npos);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
}

TEST(ProfitLpTest, ThreeQuarterInstance) {
  Instance inst = testing::ThreeQuarter();
  ProfitLp built = BuildProfitLp(inst);
  EXPECT_EQ(built.alloc_columns.size(), 2u);
  EXPECT_EQ(built.alloc_columns[0].size(), 2u);
  EXPECT_EQ(built.bic_constraints_total, 6);
  LpOptimum opt = SolveProfitLp(inst);
  EXPECT_EQ(opt.opt, R(3, 4));
  EXPECT_EQ(Profit(inst, opt.mechanism), R(3, 4));
  EXPECT_TRUE(CheckBic(inst, opt.mechanism).ok);
  EXPECT_TRUE(CheckFlowConservation(inst, opt.flow).ok);
  VirtualBoundReport vb = VerifyVirtualBound(inst, opt.mechanism, opt.flow);
  EXPECT_GE(vb.bound, R(3, 4));
  EXPECT_TRUE(vb.holds);
}

TEST(ProfitLpTest, CostsAboveValuesGiveZero) {
  Instance inst = testing::SingleItem(DiscreteDist::Uniform({R(1), R(2)}), {{R(3), R(1)}});
  LpOptimum opt = SolveProfitLp(inst);
  EXPECT_EQ(opt.opt, R(0));
}

TEST(ProfitLpTest, SizeGuard) {
  Instance inst = testing::ThreeQuarter();
  EXPECT_THROW(BuildProfitLp(inst, 3), SizeGuardExceeded);
}

TEST(ProfitLpTest, SinkOnlyFlowBoundsWelfare) {
  Instance inst = testing::ThreeQuarter();
  FlowMultipliers flow;
  flow.weight.resize(1);
  for (int k = 0; k < inst.types(0).size(); ++k) flow.weight[0][{k, -1}] = inst.types(0).prob(k);
  ASSERT_TRUE(CheckFlowConservation(inst, flow).ok);
  LpOptimum opt = SolveProfitLp(inst);
  VirtualBoundReport vb = VerifyVirtualBound(inst, opt.mechanism, flow);
  // Welfare of the LP allocation: sells whenever value exceeds cost.
  EXPECT_GE(vb.bound, opt.opt);
  FlowMultipliers broken = flow;
  broken.weight[0][{0, -1}] = 0;
  EXPECT_FALSE(CheckFlowConservation(inst, broken).ok);
  EXPECT_THROW(VerifyVirtualBound(inst, opt.mechanism, broken), InvalidInput);
}

TEST(ProfitLpTest, EmptyMechanismIsFeasible) {
  Instance inst = testing::ThreeQuarter();
  DirectMechanism empty = EmptyMechanism(inst);
  ValidateMechanism(inst, empty);
  EXPECT_EQ(Profit(inst, empty), R(0));
  EXPECT_TRUE(CheckBic(inst, empty).ok);
}

TEST(ProfitLpTest, BicCheckerFindsAProfitableLie) {
  Instance inst = testing::ThreeQuarter();
  LpOptimum opt = SolveProfitLp(inst);
  DirectMechanism lie = opt.mechanism;
  // Charge the high type more than its value.
  for (auto& per_atom : lie.payment) per_atom[1][0] += 5;
  BicReport r = CheckBic(inst, lie);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.buyer, 0);
  EXPECT_EQ(r.truth, 1);
}

TEST(ProfitLpTest, DegenerateInstanceSolvesFromTheFloatBasis) {
  Instance inst = LoadInstance(std::string(PERMITLAB_TEST_DATA) + "/degenerate_lp.json");
  LpOptimum opt = SolveProfitLp(inst);
  EXPECT_EQ(opt.solution.status, LpStatus::kOptimal);
  EXPECT_TRUE(opt.solution.warm_start_certified);
  EXPECT_TRUE(CheckBic(inst, opt.mechanism).ok);
}

}  // namespace
}  // namespace permitlab
