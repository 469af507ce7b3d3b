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

#ifndef PERMITLAB_MECHANISMS_H_
#define PERMITLAB_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "permitlab/benchmark.h"
#include "permitlab/core_model.h"
#include "permitlab/profit_lp.h"
#include "permitlab/rational.h"

namespace permitlab {

enum class MechanismKind { kIP, kPP, kPB, kCSIP, kRSPP, kSPB };

std::string MechanismKindName(MechanismKind kind);
MechanismKind ParseMechanismKind(const std::string& name);

// Family of buyer-item pair sets given by a membership table over all
// 2^(n*m) pair masks.
class PairConstraint {
 public:
  PairConstraint() = default;
  PairConstraint(int num_pairs, std::vector<bool> table);

  // The feasible allocations of the instance.
  static PairConstraint Allocations(const Instance& inst);
  // Feasible allocations giving each buyer at most one item.
  static PairConstraint UnitDemand(const Instance& inst);

  int num_pairs() const { return num_pairs_; }
  bool empty() const { return table_.empty(); }
  bool Contains(PairSet a) const { return table_[a]; }
  PairConstraint Intersect(const PairConstraint& other) const;
  // Removes every set that uses a pair of `excluded`.
  PairConstraint Without(PairSet excluded) const;
  std::vector<PairSet> Members() const;

 private:
  int num_pairs_ = 0;
  std::vector<bool> table_;
};

// Parameters of a simple mechanism. Buyers arrive in `order`. Item prices,
// tie acceptance and show probabilities are indexed [i][j][c]. A type whose
// value equals the item price keeps that item purchasable with probability
// tie_accept. In RSPP each available item is shown to the arriving buyer
// independently with probability show_probs; a permit whose expected net
// utility is exactly zero is wanted with probability permit_tie_accept.
struct MechanismSpec {
  MechanismKind kind = MechanismKind::kIP;
  std::vector<int> order;
  ThresholdMap item_prices;
  ThresholdMap tie_accept;
  ThresholdMap show_probs;
  std::vector<std::vector<Rational>> permit_prices;
  std::vector<std::vector<Rational>> permit_tie_accept;
  std::vector<Rational> bundle_prices;
  // Per cost atom; empty means the instance's feasible allocations.
  std::vector<PairConstraint> sub_constraint;
};

// Item prices equal to the costs, every tie accepted, nothing hidden, zero
// permit and bundle prices, identity order.
MechanismSpec DefaultSpec(const Instance& inst, MechanismKind kind);

// Checks dimensions, ranges and kind-specific buyer counts.
void ValidateSpec(const Instance& inst, const MechanismSpec& spec);

struct EvalResult {
  Rational profit;
  std::vector<Rational> revenue;
  std::vector<Rational> cost;
  // Probability that buyer i buys permit j (PP, RSPP) or accepts the bundle.
  std::vector<std::vector<Rational>> permit_prob;
  std::vector<Rational> bundle_accept_prob;
  // Joint probability of cost atom c and buyer i buying item j.
  std::vector<std::vector<std::vector<Rational>>> item_prob;
  // Pr[item j unsold when buyer i arrives | c].
  std::vector<std::vector<std::vector<Rational>>> availability;
  // First-stage choice of each buyer and type: permit sets with
  // probabilities. For PB/SPB the full set means the bundle was accepted.
  std::vector<std::vector<std::vector<std::pair<ItemSet, Rational>>>> decisions;
};

// Called when a buyer arrives, before its decisions are computed, with
// availability[j][c]; may adjust the spec (used to set show probabilities).
using ArrivalHook = std::function<void(
    int buyer, const std::vector<std::vector<Rational>>& availability,
    MechanismSpec* spec)>;

EvalResult Evaluate(const Instance& inst, const MechanismSpec& spec);
EvalResult EvaluateWithHook(const Instance& inst, MechanismSpec* spec,
                            const ArrivalHook& hook);

// Profit rebuilt from the event probabilities of an evaluation.
Rational ProfitFromTrace(const Instance& inst, const MechanismSpec& spec,
                         const EvalResult& result);

// Direct mechanism obtained by letting every buyer act on its reported type.
DirectMechanism InduceDirectMechanism(const Instance& inst,
                                      const MechanismSpec& spec);

// Distribution of the bundle bought in stage two by buyer i with type index
// k under cost atom c, already-allocated pairs `taken` and permits `permits`.
std::vector<std::pair<ItemSet, Rational>> Stage2Outcomes(
    const Instance& inst, const MechanismSpec& spec, int i, int k, int c,
    PairSet taken, ItemSet permits);

// Permit set chosen by buyer i with type values t, given availability[j][c]
// of each item. Ties favour buying (larger set, then smaller mask); RSPP
// permits at zero net utility are taken.
ItemSet BestResponsePermits(const Instance& inst, const MechanismSpec& spec,
                            int i, const std::vector<Rational>& t,
                            const std::vector<std::vector<Rational>>& availability);

struct MonteCarloResult {
  double mean = 0;
  double half_width = 0;
  double lower = 0;
  double upper = 0;
  long samples = 0;
};
// Seeded simulation with a 99% normal confidence interval.
MonteCarloResult MonteCarloProfit(const Instance& inst, const MechanismSpec& spec,
                                  long samples, std::uint64_t seed);

// CSIP (IP when n = 1) built per cost atom by exhaustive search over prices
// drawn from the support values at least the cost, with and without the
// at-most-one-item-per-buyer restriction; the better one is returned. Prices
// are tuned for the given arrival order (identity when empty).
MechanismSpec ConstructCsipFromCopies(const Instance& inst,
                                      const std::vector<int>& order = {});

// Single buyer: posts the monopoly price of each item's surplus distribution.
MechanismSpec ConstructSeparateIp(const Instance& inst);

// RSPP with permit price xi/2, item prices max(beta, c) rationed by rho, and
// show probabilities making every item visible with probability exactly 1/2.
// Throws PreconditionFailed when availability drops below 1/2 or when
// sum_j Pr[vbar_ij >= xi_ij] (with permit rationing) exceeds 1/2.
MechanismSpec ConstructRspp(const Instance& inst, const ExAnteProfile& exante,
                            const std::vector<std::vector<Rational>>& xi,
                            const std::vector<std::vector<Rational>>& permit_tie);
MechanismSpec ConstructRsppTail(const Instance& inst, const ExAnteProfile& exante,
                                const TailPrices& prices);
// Permit thresholds tau_i with a per-buyer tie probability making
// sum_j Pr[vbar_ij >= tau_i] exactly 1/2.
MechanismSpec ConstructRsppTau(const Instance& inst, const ExAnteProfile& exante,
                               const std::vector<Rational>& tau);
// SPB with item prices max(beta, c) rationed by rho and bundle prices delta.
MechanismSpec ConstructSpb(const Instance& inst, const ExAnteProfile& exante,
                           const std::vector<Rational>& delta);

// Single-buyer mechanism in the revenue setting where the buyer values a
// permit set P at vbar(t, P) with zero thresholds.
struct AuxiliaryMechanism {
  // lottery[k] = (permit set, probability); payment[k].
  std::vector<std::vector<std::pair<ItemSet, Rational>>> lottery;
  std::vector<Rational> payment;
};
// Throws InvalidInput unless the auxiliary mechanism is truthful and IR.
void CheckAuxiliaryTruthful(const Instance& inst, const AuxiliaryMechanism& aux);
Rational AuxiliaryRevenue(const Instance& inst, const AuxiliaryMechanism& aux);
AuxiliaryMechanism AuxiliaryFromPermitPrices(const Instance& inst,
                                             const std::vector<Rational>& prices);
AuxiliaryMechanism AuxiliaryFromBundlePrice(const Instance& inst,
                                            const Rational& price);
// Two-stage mechanism: permits from the auxiliary lottery, then items at cost.
DirectMechanism ConvertRevenueToPermit(const Instance& inst,
                                       const AuxiliaryMechanism& aux);

// Candidate prices for grid searches; empty lists are rejected.
struct CandidateGrid {
  // item[i][j] (prices searched per cost atom).
  std::vector<std::vector<std::vector<Rational>>> item;
  // permit[j] (single buyer).
  std::vector<std::vector<Rational>> permit;
  // bundle[i].
  std::vector<std::vector<Rational>> bundle;
};
// Item grids: support values plus a price nobody pays. Permit grids: values
// of vbar on singletons plus marginal values plus 0. Bundle grids: values of
// vbar(t, [m]).
CandidateGrid DefaultGrid(const Instance& inst);

struct SearchResult {
  MechanismSpec spec;
  Rational profit;
};
// IP, PP, PB (single buyer); CSIP (per-atom prices, feasible allocations);
// SPB (bundle prices per buyer, item prices at cost). Additive single-buyer
// searches decompose per item.
SearchResult SearchBest(const Instance& inst, MechanismKind kind,
                        const CandidateGrid& grid);

}  // namespace permitlab

#endif  // PERMITLAB_MECHANISMS_H_
