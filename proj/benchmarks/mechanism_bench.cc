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

#include <benchmark/benchmark.h>

#include "permitlab/harness.h"
#include "permitlab/mechanisms.h"

namespace {

using permitlab::MechanismKind;

permitlab::Instance Pick(int n, int m) {
  permitlab::harness::GeneratorParams params;
  params.n_min = params.n_max = n;
  params.m_min = params.m_max = m;
  params.family = permitlab::harness::FamilyMode::kMatroid;
  return permitlab::harness::RandomInstance(params, 23);
}

void BM_EvaluateCsip(benchmark::State& state) {
  permitlab::Instance inst = Pick(state.range(0), state.range(1));
  permitlab::MechanismSpec spec = permitlab::ConstructCsipFromCopies(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permitlab::Evaluate(inst, spec).profit);
  }
}
BENCHMARK(BM_EvaluateCsip)->Args({1, 3})->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMicrosecond);

void BM_SearchBest(benchmark::State& state) {
  permitlab::Instance inst = Pick(1, state.range(0));
  const auto kind = static_cast<MechanismKind>(state.range(1));
  permitlab::CandidateGrid grid = permitlab::DefaultGrid(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permitlab::SearchBest(inst, kind, grid).profit);
  }
}
BENCHMARK(BM_SearchBest)
    ->Args({2, static_cast<int>(MechanismKind::kIP)})
    ->Args({2, static_cast<int>(MechanismKind::kPP)})
    ->Args({3, static_cast<int>(MechanismKind::kPB)})
    ->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  permitlab::Instance inst = Pick(2, 2);
  permitlab::MechanismSpec spec = permitlab::ConstructCsipFromCopies(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(permitlab::MonteCarloProfit(inst, spec, state.range(0), 5).mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
