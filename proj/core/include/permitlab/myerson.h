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

#ifndef PERMITLAB_MYERSON_H_
#define PERMITLAB_MYERSON_H_

#include <vector>

#include "permitlab/core_model.h"
#include "permitlab/rational.h"

namespace permitlab {

// Virtual values indexed like the support of the distribution.
struct VirtualValueTable {
  std::vector<Rational> raw;
  std::vector<Rational> ironed;
};

// raw(t) = t - (t_next - t) * Pr[T > t] / Pr[T = t], and t at the top value.
// ironed is the slope of the upper concave hull of the revenue curve
// q -> q * price, taken over the quantile interval of each support value.
VirtualValueTable VirtualValues(const DiscreteDist& dist);

// Ironed tables for every (buyer, item) pair, indexed [i][j][k].
std::vector<std::vector<std::vector<Rational>>> IronedTables(
    const Instance& inst);

// max over posted prices p of (p - cost) * Pr[T >= p], with the no-sale
// option worth zero.
Rational BestPostedPriceProfit(const DiscreteDist& dist, const Rational& cost);

// Single buyer, cost atom c: E[max_j (ironed_j(t_j) - c_j)^+] over items j
// with {j} feasible.
Rational CopiesOptUnitDemand(const Instance& inst, int c);

// Single buyer, cost atom c: E[max_{S in F} sum_{j in S} (ironed_j - c_j)^+].
Rational CopiesOptAdditive(const Instance& inst, int c);

// Any number of buyers, cost atom c: expected maximum over feasible pair sets
// with at most one pair per buyer and per item of the summed
// (ironed_ij - c_j)^+. Requires n * m <= 12.
Rational CopiesOptUnitDemandMulti(const Instance& inst, int c);

}  // namespace permitlab

#endif  // PERMITLAB_MYERSON_H_
