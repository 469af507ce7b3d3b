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

#ifndef PERMITLAB_OCRS_H_
#define PERMITLAB_OCRS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "permitlab/benchmark.h"
#include "permitlab/core_model.h"
#include "permitlab/mechanisms.h"
#include "permitlab/rational.h"

namespace permitlab {

// Families over a ground set of pairs reuse PairConstraint.
bool IsMatroidFamily(const PairConstraint& family);
int FamilyRank(const PairConstraint& family, PairSet s);

enum class MatroidClass { kUniform, kPartition, kExplicit };
enum class OcrsRule { kPlain, kTruncated, kComposite };

struct GreedyOcrs {
  PairConstraint family;
  Rational b;
  // Certified selectability constant.
  Rational constant;
  OcrsRule rule = OcrsRule::kPlain;
  int truncation_rank = -1;
  std::vector<GreedyOcrs> parts;
};

// Subfamily used by the greedy rule for activity vector y.
PairConstraint Subfamily(const GreedyOcrs& ocrs, const std::vector<Rational>& y);

struct MembershipResult {
  bool member = false;
  // y <= scale * sum of weight * indicator(S).
  std::vector<std::pair<PairSet, Rational>> decomposition;
  std::string witness;
};
MembershipResult PolytopeMembership(const PairConstraint& family,
                                    const std::vector<Rational>& y,
                                    const Rational& scale);

struct SelectabilityReport {
  bool exact = true;
  // Per element: Pr[A + e stays in the subfamily for every member A of the
  // active set].
  std::vector<Rational> value;
  // Minimum over elements with positive activity probability.
  Rational min_value;
  std::vector<double> estimate;
  long samples = 0;
  double half_width = 0;
};
// Rejects y outside b times the polytope. Exact for at most 12 elements.
SelectabilityReport Selectability(const GreedyOcrs& ocrs,
                                  const std::vector<Rational>& y,
                                  long samples = 100000,
                                  std::uint64_t seed = 1);

// Pr[element selected] when the greedy rule sees active elements in `order`.
std::vector<Rational> GreedySelectionProbs(const GreedyOcrs& ocrs,
                                           const std::vector<Rational>& y,
                                           const std::vector<int>& order);
// Same against an adversary choosing the order after seeing the active set.
std::vector<Rational> AdaptiveSelectionProbs(const GreedyOcrs& ocrs,
                                             const std::vector<Rational>& y);

// Grid of points of b * P with coordinates in {0, b/steps, ..., b}.
std::vector<std::vector<Rational>> ScaledPolytopeGrid(const PairConstraint& family,
                                                      const Rational& b, int steps);

GreedyOcrs MatroidOcrs(const PairConstraint& matroid, const Rational& b,
                       MatroidClass cls);
GreedyOcrs Compose(const GreedyOcrs& first, const GreedyOcrs& second);

// Each item to at most one buyer.
PairConstraint ItemPartitionFamily(const Instance& inst);
// Each buyer receives a member of its own family.
PairConstraint BuyerFeasibilityFamily(const Instance& inst);
GreedyOcrs AuctionOcrs(const Instance& inst, const Rational& b);

// CSIP with threshold prices and, per cost atom, the composed subfamily for
// q(c) with pairs priced at cost removed.
MechanismSpec ProphetCsip(const Instance& inst, const ExAnteProfile& exante);

}  // namespace permitlab

#endif  // PERMITLAB_OCRS_H_
