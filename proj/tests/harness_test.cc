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

#include <filesystem>

#include "permitlab/harness.h"
#include "permitlab/instance_io.h"
#include "test_util.h"

namespace permitlab::harness {
namespace {

TEST(CorpusTest, Deterministic) {
  GeneratorParams params;
  params.count = 5;
  auto a = GenerateCorpus(params, 7);
  auto b = GenerateCorpus(params, 7);
  auto c = GenerateCorpus(params, 8);
  ASSERT_EQ(a.size(), 5u);
  bool differs = false;
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].id, b[k].id);
    EXPECT_EQ(InstanceToJson(a[k].inst), InstanceToJson(b[k].inst));
    differs = differs || InstanceToJson(a[k].inst) != InstanceToJson(c[k].inst);
  }
  EXPECT_TRUE(differs);
}

TEST(CorpusTest, FamilyModes) {
  GeneratorParams params;
  params.count = 20;
  params.m_max = 3;
  params.family = FamilyMode::kAdditive;
  for (const auto& item : GenerateCorpus(params, 3)) {
    for (int i = 0; i < item.inst.num_buyers(); ++i) {
      EXPECT_EQ(item.inst.family(i).Members().size(), std::size_t{1} << item.inst.num_items());
    }
  }
  params.family = FamilyMode::kMatroid;
  for (const auto& item : GenerateCorpus(params, 3)) EXPECT_TRUE(item.inst.AllMatroids());
  for (const auto& item : MatroidPairCorpus(1)) EXPECT_TRUE(item.inst.AllMatroids());
}

TEST(CorpusTest, WriteAndRead) {
  GeneratorParams params;
  params.count = 3;
  auto corpus = GenerateCorpus(params, 4);
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "permitlab_corpus_test";
  std::filesystem::remove_all(dir);
  WriteCorpus(corpus, dir.string());
  auto back = ReadCorpus(dir.string());
  ASSERT_EQ(back.size(), corpus.size());
  for (size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].id, corpus[k].id);
    EXPECT_EQ(InstanceToJson(back[k].inst), InstanceToJson(corpus[k].inst));
  }
  std::filesystem::remove_all(dir);
}

TEST(ReportTest, EmptyCorpusPasses) {
  SuiteReport r = RunSuite("single_item", {}, SuiteOptions{});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.checks_total, 0);
  std::string csv = ReportCsv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "instance_id,opt_profit,ip,pp,pb,csip,rspp,spb,most_surplus,prophet,less_surplus,tail,core,"
            "checks_passed");
  EXPECT_NE(ReportJson(r).find("\"suite\""), std::string::npos);
}

TEST(ReportTest, ThreeQuarterRow) {
  SuiteReport r = RunSuite("single_additive", {{"tq", testing::ThreeQuarter()}}, SuiteOptions{});
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].columns.at("opt_profit"), testing::R(3, 4));
  EXPECT_EQ(r.checks_failed, 0);
  EXPECT_GT(r.checks_total, 0);
  EXPECT_NE(ReportCsv(r).find("tq,3/4"), std::string::npos);
}

TEST(ReportTest, SuiteApplicability) {
  Instance two(2, 1, {{DiscreteDist::PointMass(testing::R(1))}, {DiscreteDist::PointMass(testing::R(1))}},
               CostModel::Zero(1), {FeasibilityFamily::Additive(1), FeasibilityFamily::Additive(1)});
  EXPECT_FALSE(SuiteApplies("single_item", two));
  EXPECT_TRUE(SuiteApplies("single_item", testing::ThreeQuarter()));
  EXPECT_EQ(SuiteNames().size(), 10u);
}

}  // namespace
}  // namespace permitlab::harness
