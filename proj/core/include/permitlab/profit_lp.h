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

#ifndef PERMITLAB_PROFIT_LP_H_
#define PERMITLAB_PROFIT_LP_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permitlab/core_model.h"
#include "permitlab/linear_program.h"
#include "permitlab/rational.h"

namespace permitlab {

// Enumerates joint type profiles; buyer 0 varies fastest.
class ProfileSpace {
 public:
  explicit ProfileSpace(const Instance& inst);

  int size() const { return static_cast<int>(probs_.size()); }
  int type_of(int profile, int i) const {
    return (profile / stride_[i]) % radix_[i];
  }
  const Rational& prob(int profile) const { return probs_[profile]; }
  int WithType(int profile, int i, int k) const {
    return profile + (k - type_of(profile, i)) * stride_[i];
  }

 private:
  std::vector<int> radix_;
  std::vector<int> stride_;
  std::vector<Rational> probs_;
};

// A direct mechanism: for each cost atom c and type profile t, a lottery over
// feasible allocations (remaining mass is the empty allocation) and one
// payment per buyer.
struct DirectMechanism {
  std::vector<PairSet> allocations;
  // lottery[c][profile] = list of (index into allocations, probability).
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> lottery;
  // payment[c][profile][i].
  std::vector<std::vector<std::vector<Rational>>> payment;
};

DirectMechanism EmptyMechanism(const Instance& inst);

// Checks dimensions, probabilities in [0,1] and feasibility of allocations.
void ValidateMechanism(const Instance& inst, const DirectMechanism& mech);

// Expected payments minus expected cost of allocated items.
Rational Profit(const Instance& inst, const DirectMechanism& mech);

// pi[i][k][c][j] = E_{t_-i}[x_ij((k, t_-i), c)].
using InterimTable = std::vector<std::vector<std::vector<std::vector<Rational>>>>;
InterimTable InterimAllocation(const Instance& inst, const DirectMechanism& mech);

// Expected utility of buyer i with true type `truth` reporting `report`
// (report -1 means non-participation, worth zero).
Rational InterimUtility(const Instance& inst, const DirectMechanism& mech, int i,
                        int truth, int report);

struct BicReport {
  bool ok = true;
  // Largest gain from a misreport or from leaving, and where it happens.
  Rational worst_gain;
  int buyer = -1;
  int truth = -1;
  int report = -1;
};
BicReport CheckBic(const Instance& inst, const DirectMechanism& mech);

// Dual multipliers of the incentive rows: weight[i][{from, to}] where `to`
// is a type index or -1 for the outside option.
struct FlowMultipliers {
  std::vector<std::map<std::pair<int, int>, Rational>> weight;
};

struct FlowBalance {
  bool ok = true;
  int buyer = -1;
  int type = -1;
  Rational imbalance;
};
// f_i(t) + inflow(t) == outflow(t) at every type node.
FlowBalance CheckFlowConservation(const Instance& inst,
                                  const FlowMultipliers& flow);

// Phi[i][k][j] = t_ij - (1 / f_i(t)) * sum_{t'} weight(t', t) (t'_j - t_j).
std::vector<std::vector<std::vector<Rational>>> FlowVirtualValues(
    const Instance& inst, const FlowMultipliers& flow);

struct VirtualBoundReport {
  Rational profit;
  Rational bound;
  bool holds = false;
};
// Throws InvalidInput if the flow is not conserved.
VirtualBoundReport VerifyVirtualBound(const Instance& inst,
                                      const DirectMechanism& mech,
                                      const FlowMultipliers& flow);

inline constexpr long kDefaultMaxLpVariables = 200000;

struct ProfitLp {
  LinearProgram lp;
  std::vector<PairSet> allocations;
  // column[c][profile] = list of (allocation index, column).
  std::vector<std::vector<std::vector<std::pair<int, int>>>> alloc_columns;
  // payment_column[i][k].
  std::vector<std::vector<int>> payment_column;
  // (buyer, truth, report) for each incentive row, report -1 for leaving.
  std::vector<std::pair<int, int>> row_flow_edge;
  std::vector<int> row_buyer;
  long bic_constraints_total = 0;
  long bic_constraints_materialized = 0;
};

// Builds the profit LP. Throws SizeGuardExceeded when the variable count
// would exceed `max_variables`.
ProfitLp BuildProfitLp(const Instance& inst,
                       long max_variables = kDefaultMaxLpVariables);

struct LpOptimum {
  Rational opt;
  DirectMechanism mechanism;
  FlowMultipliers flow;
  LpSolution solution;
};

LpOptimum SolveProfitLp(const Instance& inst,
                        long max_variables = kDefaultMaxLpVariables,
                        const SolverOptions& options = {});

}  // namespace permitlab

#endif  // PERMITLAB_PROFIT_LP_H_
