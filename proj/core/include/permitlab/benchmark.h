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

#ifndef PERMITLAB_BENCHMARK_H_
#define PERMITLAB_BENCHMARK_H_

#include <vector>

#include "permitlab/core_model.h"
#include "permitlab/profit_lp.h"
#include "permitlab/rational.h"

namespace permitlab {

// Posted threshold reaching a target sale probability for one
// (buyer, item, cost) triple. A type t buys when t > beta, or when t == beta
// with probability rho. When Pr[t >= cost] <= q the threshold is zero and
// the effective price is the cost itself.
struct Threshold {
  Rational beta;
  Rational rho;
  // False when the threshold sits below the cost (beta = 0 branch).
  bool above_cost = false;
};
Threshold ThresholdFor(const DiscreteDist& dist, const Rational& q,
                       const Rational& cost);

// Ex-ante sale probabilities q_ij(c) with their thresholds. For q taken from
// a mechanism, q_ij(c) = E_t[pi_ij(t_i, c)] / 2.
struct ExAnteProfile {
  ThresholdMap q;
  ThresholdMap beta;
  ThresholdMap rho;
  std::vector<std::vector<std::vector<bool>>> above_cost;
};

ExAnteProfile ExAnteFromProbabilities(const Instance& inst, const ThresholdMap& q);
ExAnteProfile ExAnteFromMechanism(const Instance& inst,
                                  const DirectMechanism& mech);
// All thresholds zero; q is kept from the mechanism.
ExAnteProfile ZeroThresholds(const Instance& inst, const DirectMechanism& mech);

// Probability that a buyer of this distribution buys at the threshold.
Rational SaleProbability(const DiscreteDist& dist, const Threshold& th,
                         const Rational& cost);

// vbar_single[i][j][s] for every support index s.
using VbarTable = std::vector<std::vector<std::vector<Rational>>>;
VbarTable VbarSingleTable(const Instance& inst, const ThresholdMap& beta);

// Favorite item of each type: smallest index maximizing vbar_single.
std::vector<std::vector<int>> FavoriteLabels(const Instance& inst,
                                             const ThresholdMap& beta);

struct FlowSpec {
  std::vector<std::vector<int>> label;
  // Canonical chain flow along the labeled coordinate (no ironing loops).
  FlowMultipliers flow;
  // Virtual values of the ironed canonical flow: ironed value on the
  // labeled coordinate, the type itself elsewhere.
  std::vector<std::vector<std::vector<Rational>>> ironed_phi;
};
// Throws VerificationError if the materialized flow is not conserved.
FlowSpec BuildFlow(const Instance& inst, const ThresholdMap& beta);

struct BenchmarkReport {
  Rational profit;
  Rational most_surplus;
  Rational prophet;
  Rational less_surplus;
  bool holds = false;
};
// Computes the three terms and compares them with the mechanism's profit.
BenchmarkReport EvaluateBenchmarkTerms(const Instance& inst,
                                       const DirectMechanism& mech,
                                       const ExAnteProfile& exante);
// Same, throwing VerificationError when the profit exceeds the sum.
BenchmarkReport BenchmarkTerms(const Instance& inst, const DirectMechanism& mech,
                               const ExAnteProfile& exante);

// tau_i: smallest grid value g with sum_j Pr[vbar_ij > g] <= 1/2, the grid
// being all vbar_single values of buyer i and 0.
std::vector<Rational> CoreThresholds(const Instance& inst,
                                     const ThresholdMap& beta);

struct CoreTailReport {
  std::vector<Rational> tau;
  Rational less_surplus;
  Rational tail;
  Rational core;
  bool holds = false;
};
CoreTailReport EvaluateCoreTail(const Instance& inst, const ThresholdMap& beta);
// Same, throwing VerificationError when less_surplus > tail + core.
CoreTailReport CoreTail(const Instance& inst, const ThresholdMap& beta);

struct TailPrices {
  // Grid maximizers of a * Pr[vbar_ij >= a] over a >= tau_i.
  std::vector<std::vector<Rational>> xi;
  std::vector<std::vector<Rational>> r;
  // Same over a > tau_i; xi is one above the grid when nothing qualifies.
  std::vector<std::vector<Rational>> xi_strict;
  std::vector<std::vector<Rational>> r_strict;
  Rational r_sum;
  Rational r_strict_sum;
};
TailPrices ComputeTailPrices(const Instance& inst, const ThresholdMap& beta,
                             const std::vector<Rational>& tau);

// Lower median: smallest x with Pr[X <= x] >= 1/2.
Rational LowerMedian(std::vector<std::pair<Rational, Rational>> dist);

struct ConcentrationReport {
  // delta_i = median of vbar_i(t, C_i(t)) / 2.
  std::vector<Rational> delta;
  std::vector<Rational> core_mean;
  bool holds = false;
};
ConcentrationReport CoreConcentration(const Instance& inst,
                                      const ThresholdMap& beta,
                                      const std::vector<Rational>& tau);

}  // namespace permitlab

#endif  // PERMITLAB_BENCHMARK_H_
