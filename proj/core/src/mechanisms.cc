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

#include "permitlab/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "permitlab/errors.h"
#include "permitlab/myerson.h"

namespace permitlab {

std::string MechanismKindName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kIP:
      return "IP";
    case MechanismKind::kPP:
      return "PP";
    case MechanismKind::kPB:
      return "PB";
    case MechanismKind::kCSIP:
      return "CSIP";
    case MechanismKind::kRSPP:
      return "RSPP";
    case MechanismKind::kSPB:
      return "SPB";
  }
  return "?";
}

MechanismKind ParseMechanismKind(const std::string& name) {
  for (MechanismKind k : {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB,
                          MechanismKind::kCSIP, MechanismKind::kRSPP,
                          MechanismKind::kSPB}) {
    if (MechanismKindName(k) == name) return k;
  }
  throw InvalidInput("unknown mechanism kind '" + name + "'");
}

PairConstraint::PairConstraint(int num_pairs, std::vector<bool> table)
    : num_pairs_(num_pairs), table_(std::move(table)) {
  if (num_pairs_ < 0 || num_pairs_ > kMaxPairs ||
      table_.size() != (size_t{1} << num_pairs_)) {
    throw InvalidInput("pair constraint table has the wrong size");
  }
}

PairConstraint PairConstraint::Allocations(const Instance& inst) {
  const int e = inst.num_buyers() * inst.num_items();
  std::vector<bool> table(size_t{1} << e);
  for (PairSet a = 0; a < (PairSet{1} << e); ++a) table[a] = IsFeasibleAllocation(inst, a);
  return PairConstraint(e, std::move(table));
}

PairConstraint PairConstraint::UnitDemand(const Instance& inst) {
  PairConstraint out = Allocations(inst);
  const int m = inst.num_items();
  for (PairSet a = 0; a < out.table_.size(); ++a) {
    for (int i = 0; i < inst.num_buyers() && out.table_[a]; ++i) {
      if (SetSize(BuyerBundle(a, m, i)) > 1) out.table_[a] = false;
    }
  }
  return out;
}

PairConstraint PairConstraint::Intersect(const PairConstraint& other) const {
  if (other.num_pairs_ != num_pairs_) {
    throw InvalidInput("intersecting pair constraints of different sizes");
  }
  std::vector<bool> table(table_.size());
  for (size_t a = 0; a < table.size(); ++a) table[a] = table_[a] && other.table_[a];
  return PairConstraint(num_pairs_, std::move(table));
}

PairConstraint PairConstraint::Without(PairSet excluded) const {
  std::vector<bool> table = table_;
  for (PairSet a = 0; a < table.size(); ++a) {
    if (a & excluded) table[a] = false;
  }
  return PairConstraint(num_pairs_, std::move(table));
}

std::vector<PairSet> PairConstraint::Members() const {
  std::vector<PairSet> out;
  for (PairSet a = 0; a < table_.size(); ++a) {
    if (table_[a]) out.push_back(a);
  }
  return out;
}

MechanismSpec DefaultSpec(const Instance& inst, MechanismKind kind) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  MechanismSpec spec;
  spec.kind = kind;
  for (int i = 0; i < n; ++i) spec.order.push_back(i);
  spec.item_prices = ThresholdMap(n, m, nc);
  spec.tie_accept = ThresholdMap(n, m, nc);
  spec.show_probs = ThresholdMap(n, m, nc);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < nc; ++c) {
        spec.item_prices.at(i, j, c) = inst.costs().cost(c, j);
        spec.tie_accept.at(i, j, c) = 1;
        spec.show_probs.at(i, j, c) = 1;
      }
    }
  }
  spec.permit_prices.assign(n, std::vector<Rational>(m, Rational(0)));
  spec.permit_tie_accept.assign(n, std::vector<Rational>(m, Rational(1)));
  spec.bundle_prices.assign(n, Rational(0));
  return spec;
}

void ValidateSpec(const Instance& inst, const MechanismSpec& spec) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  bool single = spec.kind == MechanismKind::kIP || spec.kind == MechanismKind::kPP ||
                spec.kind == MechanismKind::kPB;
  if (single && n != 1) {
    throw InvalidInput(MechanismKindName(spec.kind) + " needs a single buyer");
  }
  std::vector<int> seen(n, 0);
  if (static_cast<int>(spec.order.size()) != n) {
    throw InvalidInput("order must list every buyer once");
  }
  for (int i : spec.order) {
    if (i < 0 || i >= n || seen[i]++) {
      throw InvalidInput("order must list every buyer once");
    }
  }
  if (static_cast<int>(spec.permit_prices.size()) != n ||
      static_cast<int>(spec.permit_tie_accept.size()) != n ||
      static_cast<int>(spec.bundle_prices.size()) != n) {
    throw InvalidInput("spec needs permit and bundle prices for every buyer");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(spec.permit_prices[i].size()) != m ||
        static_cast<int>(spec.permit_tie_accept[i].size()) != m) {
      throw InvalidInput("spec needs a permit price for every item");
    }
    if (spec.bundle_prices[i] < 0) throw InvalidInput("negative bundle price");
    for (int j = 0; j < m; ++j) {
      if (spec.permit_prices[i][j] < 0) throw InvalidInput("negative permit price");
      const Rational& pt = spec.permit_tie_accept[i][j];
      if (pt < 0 || pt > 1) throw InvalidInput("permit tie probability outside [0,1]");
      for (int c = 0; c < nc; ++c) {
        if (spec.item_prices.at(i, j, c) < 0) throw InvalidInput("negative item price");
        const Rational& ta = spec.tie_accept.at(i, j, c);
        const Rational& sh = spec.show_probs.at(i, j, c);
        if (ta < 0 || ta > 1 || sh < 0 || sh > 1) {
          throw InvalidInput("tie or show probability outside [0,1]");
        }
      }
    }
  }
  if (!spec.sub_constraint.empty()) {
    if (static_cast<int>(spec.sub_constraint.size()) != nc) {
      throw InvalidInput("sub-constraint needs one family per cost atom");
    }
    for (const PairConstraint& pc : spec.sub_constraint) {
      if (pc.num_pairs() != n * m) {
        throw InvalidInput("sub-constraint has the wrong ground size");
      }
      for (PairSet a : pc.Members()) {
        if (!IsFeasibleAllocation(inst, a)) {
          throw InvalidInput("sub-constraint allows an infeasible allocation");
        }
      }
    }
  }
}

namespace {

ItemSet TakenItems(PairSet a, int n, int m) {
  ItemSet s = 0;
  for (int i = 0; i < n; ++i) s |= BuyerBundle(a, m, i);
  return s;
}

PairSet PairsOf(int i, ItemSet b, int m) { return static_cast<PairSet>(b) << (i * m); }

Rational Fee(const MechanismSpec& spec, int i, ItemSet permits) {
  if (permits == 0) return 0;
  if (spec.kind == MechanismKind::kPB || spec.kind == MechanismKind::kSPB) {
    return spec.bundle_prices[i];
  }
  if (spec.kind == MechanismKind::kPP || spec.kind == MechanismKind::kRSPP) {
    Rational fee = 0;
    for (size_t j = 0; j < spec.permit_prices[i].size(); ++j) {
      if (HasItem(permits, static_cast<int>(j))) fee += spec.permit_prices[i][j];
    }
    return fee;
  }
  return 0;
}

bool HasFirstStage(MechanismKind kind) {
  return kind != MechanismKind::kIP && kind != MechanismKind::kCSIP;
}

// Best bundle among `eligible` respecting F_i and the per-atom constraint;
// ties go to larger bundles, then smaller masks.
ItemSet ChooseBundle(const Instance& inst, const MechanismSpec& spec, int i,
                     const std::vector<Rational>& t, int c, PairSet taken,
                     ItemSet eligible) {
  const int m = inst.num_items();
  const FeasibilityFamily& family = inst.family(i);
  const PairConstraint* sub =
      spec.sub_constraint.empty() ? nullptr : &spec.sub_constraint[c];
  if (sub == nullptr && family.IsAdditive()) return eligible;
  ItemSet best = 0;
  Rational best_value = 0;
  Rational value;
  for (ItemSet s = eligible;; s = (s - 1) & eligible) {
    if (s != 0 && family.Contains(s) &&
        (sub == nullptr || sub->Contains(taken | PairsOf(i, s, m)))) {
      value = 0;
      for (int j = 0; j < m; ++j) {
        if (HasItem(s, j)) value += t[j] - spec.item_prices.at(i, j, c);
      }
      int order = cmp(value, best_value);
      bool better = order > 0;
      if (order == 0) {
        int ds = SetSize(s);
        int db = SetSize(best);
        better = ds > db || (ds == db && s < best);
      }
      if (better) {
        best = s;
        best_value = value;
      }
    }
    if (s == 0) break;
  }
  return best;
}

std::vector<std::pair<ItemSet, Rational>> OutcomesFor(
    const Instance& inst, const MechanismSpec& spec, int i,
    const std::vector<Rational>& t, int c, PairSet taken, ItemSet permits) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  ItemSet items = permits & ~TakenItems(taken, n, m) & FullSet(m);
  ItemSet sure = 0;
  std::vector<int> coin_items;
  std::vector<Rational> coin_probs;
  for (int j = 0; j < m; ++j) {
    if (!HasItem(items, j)) continue;
    const Rational& price = spec.item_prices.at(i, j, c);
    Rational p = spec.kind == MechanismKind::kRSPP ? spec.show_probs.at(i, j, c)
                                                   : Rational(1);
    if (t[j] < price) continue;
    if (t[j] == price) p *= spec.tie_accept.at(i, j, c);
    if (p == 0) continue;
    if (p == 1) {
      sure |= Singleton(j);
    } else {
      coin_items.push_back(j);
      coin_probs.push_back(p);
    }
  }
  std::map<ItemSet, Rational> merged;
  const int nc = static_cast<int>(coin_items.size());
  for (int mask = 0; mask < (1 << nc); ++mask) {
    Rational pr = 1;
    ItemSet eligible = sure;
    for (int b = 0; b < nc; ++b) {
      if ((mask >> b) & 1) {
        pr *= coin_probs[b];
        eligible |= Singleton(coin_items[b]);
      } else {
        pr *= 1 - coin_probs[b];
      }
    }
    merged[ChooseBundle(inst, spec, i, t, c, taken, eligible)] += pr;
  }
  return {merged.begin(), merged.end()};
}

using StateDist = std::map<std::pair<int, PairSet>, Rational>;

// Expected stage-two surplus of permit set P given the state distribution.
Rational ExpectedStage2(const Instance& inst, const MechanismSpec& spec, int i,
                        const std::vector<Rational>& t, const StateDist& dist,
                        ItemSet permits) {
  const int m = inst.num_items();
  Rational total = 0;
  for (const auto& [key, w] : dist) {
    const int c = key.first;
    for (const auto& [b, pr] : OutcomesFor(inst, spec, i, t, c, key.second, permits)) {
      Rational surplus = 0;
      for (int j = 0; j < m; ++j) {
        if (HasItem(b, j)) surplus += t[j] - spec.item_prices.at(i, j, c);
      }
      total += w * pr * surplus;
    }
  }
  return total;
}

std::vector<std::pair<ItemSet, Rational>> Decide(const Instance& inst,
                                                 const MechanismSpec& spec, int i,
                                                 const std::vector<Rational>& t,
                                                 const StateDist& dist) {
  const int m = inst.num_items();
  const ItemSet full = FullSet(m);
  switch (spec.kind) {
    case MechanismKind::kIP:
    case MechanismKind::kCSIP:
      return {{full, Rational(1)}};
    case MechanismKind::kPB:
    case MechanismKind::kSPB: {
      bool accept = ExpectedStage2(inst, spec, i, t, dist, full) >= spec.bundle_prices[i];
      return {{accept ? full : ItemSet{0}, Rational(1)}};
    }
    case MechanismKind::kPP: {
      ItemSet best = 0;
      Rational best_value = 0;
      for (ItemSet p = 1; p <= full; ++p) {
        Rational v = ExpectedStage2(inst, spec, i, t, dist, p) - Fee(spec, i, p);
        int order = cmp(v, best_value);
        if (order > 0 || (order == 0 && (SetSize(p) > SetSize(best) ||
                                         (SetSize(p) == SetSize(best) && p < best)))) {
          best = p;
          best_value = v;
        }
      }
      return {{best, Rational(1)}};
    }
    case MechanismKind::kRSPP: {
      std::vector<Rational> u(m);
      std::vector<int> zero;
      for (int j = 0; j < m; ++j) {
        u[j] = ExpectedStage2(inst, spec, i, t, dist, Singleton(j)) -
               spec.permit_prices[i][j];
        if (u[j] == 0 && spec.permit_tie_accept[i][j] != 0 &&
            spec.permit_tie_accept[i][j] != 1) {
          zero.push_back(j);
        }
      }
      std::map<ItemSet, Rational> merged;
      const int nz = static_cast<int>(zero.size());
      for (int mask = 0; mask < (1 << nz); ++mask) {
        Rational pr = 1;
        ItemSet coin_yes = 0;
        for (int b = 0; b < nz; ++b) {
          const Rational& a = spec.permit_tie_accept[i][zero[b]];
          if ((mask >> b) & 1) {
            pr *= a;
            coin_yes |= Singleton(zero[b]);
          } else {
            pr *= 1 - a;
          }
        }
        int pick = -1;
        for (int j = 0; j < m; ++j) {
          bool willing = u[j] > 0 ||
                         (u[j] == 0 && (spec.permit_tie_accept[i][j] == 1 ||
                                        HasItem(coin_yes, j)));
          if (willing && (pick < 0 || u[j] > u[pick])) pick = j;
        }
        merged[pick < 0 ? ItemSet{0} : Singleton(pick)] += pr;
      }
      return {merged.begin(), merged.end()};
    }
  }
  return {};
}

EvalResult RunEngine(const Instance& inst, MechanismSpec* spec,
                     const ArrivalHook* hook, int only_atom) {
  ValidateSpec(inst, *spec);
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  EvalResult out;
  out.revenue.assign(n, Rational(0));
  out.cost.assign(n, Rational(0));
  out.permit_prob.assign(n, std::vector<Rational>(m));
  out.bundle_accept_prob.assign(n, Rational(0));
  out.item_prob.assign(n, std::vector<std::vector<Rational>>(m, std::vector<Rational>(nc)));
  out.availability.assign(n, std::vector<std::vector<Rational>>(m, std::vector<Rational>(nc)));
  out.decisions.resize(n);
  StateDist dist;
  for (int c = 0; c < nc; ++c) {
    if (only_atom < 0 || only_atom == c) dist[{c, 0}] = inst.costs().prob(c);
  }
  const bool bundle_kind =
      spec->kind == MechanismKind::kPB || spec->kind == MechanismKind::kSPB;
  for (int i : spec->order) {
    std::vector<std::vector<Rational>> avail(m, std::vector<Rational>(nc));
    for (const auto& [key, w] : dist) {
      ItemSet taken = TakenItems(key.second, n, m);
      for (int j = 0; j < m; ++j) {
        if (!HasItem(taken, j)) avail[j][key.first] += w;
      }
    }
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < nc; ++c) {
        if (only_atom < 0 || only_atom == c) avail[j][c] /= inst.costs().prob(c);
      }
    }
    out.availability[i] = avail;
    if (hook != nullptr && *hook) (*hook)(i, avail, spec);
    const TypeSpace& types = inst.types(i);
    auto& decisions = out.decisions[i];
    decisions.resize(types.size());
    for (int k = 0; k < types.size(); ++k) {
      decisions[k] = Decide(inst, *spec, i, types.values(k), dist);
    }
    StateDist next;
    for (const auto& [key, w] : dist) {
      const int c = key.first;
      for (int k = 0; k < types.size(); ++k) {
        const auto& t = types.values(k);
        for (const auto& [permits, d] : decisions[k]) {
          Rational ww = w * types.prob(k) * d;
          if (permits != 0 && HasFirstStage(spec->kind)) {
            out.revenue[i] += ww * Fee(*spec, i, permits);
            if (bundle_kind) {
              out.bundle_accept_prob[i] += ww;
            } else {
              for (int j = 0; j < m; ++j) {
                if (HasItem(permits, j)) out.permit_prob[i][j] += ww;
              }
            }
          }
          for (const auto& [b, pr] : OutcomesFor(inst, *spec, i, t, c, key.second, permits)) {
            Rational www = ww * pr;
            for (int j = 0; j < m; ++j) {
              if (!HasItem(b, j)) continue;
              out.revenue[i] += www * spec->item_prices.at(i, j, c);
              out.cost[i] += www * inst.costs().cost(c, j);
              out.item_prob[i][j][c] += www;
            }
            next[{c, key.second | PairsOf(i, b, m)}] += www;
          }
        }
      }
    }
    dist.swap(next);
  }
  out.profit = 0;
  for (int i = 0; i < n; ++i) out.profit += out.revenue[i] - out.cost[i];
  return out;
}

}  // namespace

EvalResult Evaluate(const Instance& inst, const MechanismSpec& spec) {
  MechanismSpec copy = spec;
  return RunEngine(inst, &copy, nullptr, -1);
}

EvalResult EvaluateWithHook(const Instance& inst, MechanismSpec* spec,
                            const ArrivalHook& hook) {
  return RunEngine(inst, spec, &hook, -1);
}

Rational ProfitFromTrace(const Instance& inst, const MechanismSpec& spec,
                         const EvalResult& result) {
  Rational profit = 0;
  const int m = inst.num_items();
  for (int i = 0; i < inst.num_buyers(); ++i) {
    profit += result.bundle_accept_prob[i] * spec.bundle_prices[i];
    for (int j = 0; j < m; ++j) {
      profit += result.permit_prob[i][j] * spec.permit_prices[i][j];
      for (int c = 0; c < inst.costs().size(); ++c) {
        profit += result.item_prob[i][j][c] *
                  (spec.item_prices.at(i, j, c) - inst.costs().cost(c, j));
      }
    }
  }
  return profit;
}

std::vector<std::pair<ItemSet, Rational>> Stage2Outcomes(
    const Instance& inst, const MechanismSpec& spec, int i, int k, int c,
    PairSet taken, ItemSet permits) {
  return OutcomesFor(inst, spec, i, inst.types(i).values(k), c, taken, permits);
}

ItemSet BestResponsePermits(const Instance& inst, const MechanismSpec& spec,
                            int i, const std::vector<Rational>& t,
                            const std::vector<std::vector<Rational>>& availability) {
  // Sold items are recorded as pairs of buyer i; without a sub-constraint
  // only the set of sold items matters.
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  StateDist dist;
  for (int c = 0; c < inst.costs().size(); ++c) {
    for (ItemSet gone = 0; gone <= FullSet(m); ++gone) {
      Rational pr = inst.costs().prob(c);
      for (int j = 0; j < m && pr != 0; ++j) {
        pr *= HasItem(gone, j) ? 1 - availability[j][c] : availability[j][c];
      }
      if (pr == 0) continue;
      PairSet taken = PairsOf(i, gone, m);
      dist[{c, taken}] += pr;
    }
  }
  MechanismSpec copy = spec;
  copy.permit_tie_accept.assign(n, std::vector<Rational>(m, Rational(1)));
  copy.sub_constraint.clear();
  auto choice = Decide(inst, copy, i, t, dist);
  return choice.front().first;
}

DirectMechanism InduceDirectMechanism(const Instance& inst,
                                      const MechanismSpec& spec) {
  EvalResult eval = Evaluate(inst, spec);
  ProfileSpace space(inst);
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  DirectMechanism mech = EmptyMechanism(inst);
  std::map<PairSet, int> index;
  for (size_t a = 0; a < mech.allocations.size(); ++a) index[mech.allocations[a]] = a;
  for (int c = 0; c < nc; ++c) {
    for (int p = 0; p < space.size(); ++p) {
      std::map<PairSet, Rational> dist = {{0, Rational(1)}};
      std::vector<Rational> pay(n);
      for (int i : spec.order) {
        const int k = space.type_of(p, i);
        const auto& t = inst.types(i).values(k);
        std::map<PairSet, Rational> next;
        for (const auto& [taken, w] : dist) {
          for (const auto& [permits, d] : eval.decisions[i][k]) {
            Rational ww = w * d;
            if (HasFirstStage(spec.kind)) pay[i] += ww * Fee(spec, i, permits);
            for (const auto& [b, pr] : OutcomesFor(inst, spec, i, t, c, taken, permits)) {
              for (int j = 0; j < m; ++j) {
                if (HasItem(b, j)) pay[i] += ww * pr * spec.item_prices.at(i, j, c);
              }
              next[taken | PairsOf(i, b, m)] += ww * pr;
            }
          }
        }
        dist.swap(next);
      }
      for (const auto& [a, pr] : dist) {
        if (a != 0) mech.lottery[c][p].push_back({index.at(a), pr});
      }
      mech.payment[c][p] = pay;
    }
  }
  return mech;
}

MonteCarloResult MonteCarloProfit(const Instance& inst, const MechanismSpec& spec,
                                  long samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("Monte Carlo needs at least one sample");
  EvalResult eval = Evaluate(inst, spec);
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  std::mt19937_64 rng(seed);
  std::vector<double> cost_w;
  for (int c = 0; c < inst.costs().size(); ++c) cost_w.push_back(inst.costs().prob(c).get_d());
  std::discrete_distribution<int> cost_dist(cost_w.begin(), cost_w.end());
  std::vector<std::vector<std::discrete_distribution<int>>> item_dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<double> w;
      for (const Rational& p : inst.dist(i, j).probs()) w.push_back(p.get_d());
      item_dist[i].emplace_back(w.begin(), w.end());
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](const std::vector<std::pair<ItemSet, Rational>>& options) {
    double u = unit(rng);
    double acc = 0.0;
    for (const auto& [s, p] : options) {
      acc += p.get_d();
      if (u < acc) return s;
    }
    return options.back().first;
  };
  using Key = std::tuple<int, int, int, PairSet, ItemSet>;
  std::map<Key, std::vector<std::pair<ItemSet, Rational>>> cache;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    const int c = cost_dist(rng);
    PairSet taken = 0;
    Rational profit = 0;
    for (int i : spec.order) {
      const TypeSpace& types = inst.types(i);
      int k = 0;
      std::vector<int> digits(m);
      for (int j = 0; j < m; ++j) digits[j] = item_dist[i][j](rng);
      for (int j = 0; j < m; ++j) k = types.WithDigit(k, j, digits[j]);
      ItemSet permits = pick(eval.decisions[i][k]);
      if (HasFirstStage(spec.kind)) profit += Fee(spec, i, permits);
      Key key{i, k, c, taken, permits};
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, OutcomesFor(inst, spec, i, types.values(k), c, taken,
                                            permits)).first;
      }
      ItemSet b = pick(it->second);
      for (int j = 0; j < m; ++j) {
        if (HasItem(b, j)) {
          profit += spec.item_prices.at(i, j, c) - inst.costs().cost(c, j);
        }
      }
      taken |= PairsOf(i, b, m);
    }
    double v = profit.get_d();
    sum += v;
    sum_sq += v * v;
  }
  MonteCarloResult out;
  out.samples = samples;
  out.mean = sum / samples;
  double var =
      samples > 1 ? (sum_sq - samples * out.mean * out.mean) / (samples - 1) : 0.0;
  if (var < 0) var = 0;
  out.half_width = 2.5758293035489004 * std::sqrt(var / samples);
  out.lower = out.mean - out.half_width;
  out.upper = out.mean + out.half_width;
  return out;
}

namespace {

Rational ProhibitivePrice(const Instance& inst) { return inst.MaxSupportValue() + 1; }

void SetThresholdPrices(const Instance& inst, const ExAnteProfile& exante,
                        MechanismSpec* spec) {
  for (int i = 0; i < inst.num_buyers(); ++i) {
    for (int j = 0; j < inst.num_items(); ++j) {
      for (int c = 0; c < inst.costs().size(); ++c) {
        spec->item_prices.at(i, j, c) = EffectivePrice(inst, exante.beta, i, j, c);
        spec->tie_accept.at(i, j, c) = exante.rho.at(i, j, c);
      }
    }
  }
}

// Exhaustive search over a per-pair candidate list for one cost atom, with
// coordinate ascent when the product is too large.
void SearchAtom(const Instance& inst, MechanismSpec* spec, int c,
                const std::vector<std::vector<Rational>>& cands, Rational* best) {
  const int m = inst.num_items();
  const int e = static_cast<int>(cands.size());
  auto apply = [&](const std::vector<int>& idx) {
    for (int x = 0; x < e; ++x) spec->item_prices.at(x / m, x % m, c) = cands[x][idx[x]];
  };
  auto value = [&](const std::vector<int>& idx) {
    apply(idx);
    return RunEngine(inst, spec, nullptr, c).profit;
  };
  double combos = 1;
  for (const auto& list : cands) combos *= list.size();
  std::vector<int> idx(e, 0);
  std::vector<int> best_idx = idx;
  *best = value(idx);
  if (combos <= 20000) {
    while (true) {
      int x = 0;
      while (x < e && ++idx[x] == static_cast<int>(cands[x].size())) idx[x++] = 0;
      if (x == e) break;
      Rational v = value(idx);
      if (v > *best) {
        *best = v;
        best_idx = idx;
      }
    }
  } else {
    for (int x = 0; x < e; ++x) best_idx[x] = static_cast<int>(cands[x].size()) - 1;
    *best = value(best_idx);
    for (int round = 0; round < 50; ++round) {
      bool improved = false;
      for (int x = 0; x < e; ++x) {
        std::vector<int> trial = best_idx;
        for (int a = 0; a < static_cast<int>(cands[x].size()); ++a) {
          trial[x] = a;
          Rational v = value(trial);
          if (v > *best) {
            *best = v;
            best_idx = trial;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }
  apply(best_idx);
}

}  // namespace

MechanismSpec ConstructCsipFromCopies(const Instance& inst, const std::vector<int>& order) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kCSIP);
  if (!order.empty()) spec.order = order;
  const PairConstraint all = PairConstraint::Allocations(inst);
  const PairConstraint unit = PairConstraint::UnitDemand(inst);
  spec.sub_constraint.assign(nc, all);
  const Rational high = ProhibitivePrice(inst);
  for (int c = 0; c < nc; ++c) {
    std::vector<std::vector<Rational>> cands;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        std::vector<Rational> list;
        for (const Rational& v : inst.dist(i, j).support()) {
          if (v >= inst.costs().cost(c, j)) list.push_back(v);
        }
        list.push_back(high);
        cands.push_back(list);
      }
    }
    MechanismSpec trial = spec;
    Rational best_all;
    Rational best_unit;
    SearchAtom(inst, &spec, c, cands, &best_all);
    for (auto& pc : trial.sub_constraint) pc = unit;
    SearchAtom(inst, &trial, c, cands, &best_unit);
    if (best_unit > best_all) {
      spec.sub_constraint[c] = unit;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
          spec.item_prices.at(i, j, c) = trial.item_prices.at(i, j, c);
        }
      }
    }
  }
  return spec;
}

MechanismSpec ConstructSeparateIp(const Instance& inst) {
  if (inst.num_buyers() != 1) throw InvalidInput("separate pricing needs one buyer");
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kIP);
  const Rational high = ProhibitivePrice(inst);
  for (int j = 0; j < inst.num_items(); ++j) {
    const DiscreteDist& d = inst.dist(0, j);
    for (int c = 0; c < inst.costs().size(); ++c) {
      const Rational& cost = inst.costs().cost(c, j);
      Rational best = 0;
      Rational price = high;
      for (const Rational& p : d.support()) {
        if (p < cost) continue;
        Rational v = (p - cost) * d.ProbAtLeast(p);
        if (v > best) {
          best = v;
          price = p;
        }
      }
      spec.item_prices.at(0, j, c) = price;
    }
  }
  return spec;
}

MechanismSpec ConstructRspp(const Instance& inst, const ExAnteProfile& exante,
                            const std::vector<std::vector<Rational>>& xi,
                            const std::vector<std::vector<Rational>>& permit_tie) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kRSPP);
  SetThresholdPrices(inst, exante, &spec);
  VbarTable table = VbarSingleTable(inst, exante.beta);
  for (int i = 0; i < n; ++i) {
    Rational mass = 0;
    for (int j = 0; j < m; ++j) {
      spec.permit_prices[i][j] = xi[i][j] / 2;
      spec.permit_tie_accept[i][j] = permit_tie[i][j];
      const DiscreteDist& d = inst.dist(i, j);
      for (int s = 0; s < d.size(); ++s) {
        if (table[i][j][s] > xi[i][j]) {
          mass += d.prob(s);
        } else if (table[i][j][s] == xi[i][j]) {
          mass += d.prob(s) * permit_tie[i][j];
        }
      }
    }
    if (mass > Rational(1, 2)) {
      throw PreconditionFailed("permit prices of buyer " + std::to_string(i) +
                               " are purchased with total probability above 1/2");
    }
  }
  return spec;
}

MechanismSpec ConstructRsppTail(const Instance& inst, const ExAnteProfile& exante,
                                const TailPrices& prices) {
  std::vector<std::vector<Rational>> tie(
      inst.num_buyers(), std::vector<Rational>(inst.num_items(), Rational(1)));
  return ConstructRspp(inst, exante, prices.xi_strict, tie);
}

MechanismSpec ConstructRsppTau(const Instance& inst, const ExAnteProfile& exante,
                               const std::vector<Rational>& tau) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  VbarTable table = VbarSingleTable(inst, exante.beta);
  std::vector<std::vector<Rational>> xi(n, std::vector<Rational>(m));
  std::vector<std::vector<Rational>> tie(n, std::vector<Rational>(m));
  for (int i = 0; i < n; ++i) {
    Rational above = 0;
    Rational at = 0;
    for (int j = 0; j < m; ++j) {
      xi[i][j] = tau[i];
      const DiscreteDist& d = inst.dist(i, j);
      for (int s = 0; s < d.size(); ++s) {
        if (table[i][j][s] > tau[i]) above += d.prob(s);
        if (table[i][j][s] == tau[i]) at += d.prob(s);
      }
    }
    Rational rho = 1;
    if (at > 0) rho = Min(Rational(1), PositivePart((Rational(1, 2) - above) / at));
    for (int j = 0; j < m; ++j) tie[i][j] = rho;
  }
  return ConstructRspp(inst, exante, xi, tie);
}

MechanismSpec ConstructSpb(const Instance& inst, const ExAnteProfile& exante,
                           const std::vector<Rational>& delta) {
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kSPB);
  SetThresholdPrices(inst, exante, &spec);
  spec.bundle_prices = delta;
  return spec;
}

namespace {

std::vector<std::vector<Rational>> PermitValues(const Instance& inst) {
  const TypeSpace& types = inst.types(0);
  const ThresholdMap zero = ThresholdMap::Zero(inst);
  const ItemSet full = FullSet(inst.num_items());
  std::vector<std::vector<Rational>> v(types.size(), std::vector<Rational>(full + 1));
  for (int k = 0; k < types.size(); ++k) {
    for (ItemSet p = 0; p <= full; ++p) v[k][p] = Vbar(inst, 0, types.values(k), p, zero);
  }
  return v;
}

void RequireSingleBuyer(const Instance& inst) {
  if (inst.num_buyers() != 1) throw InvalidInput("auxiliary mechanisms need one buyer");
}

}  // namespace

void CheckAuxiliaryTruthful(const Instance& inst, const AuxiliaryMechanism& aux) {
  RequireSingleBuyer(inst);
  const int nt = inst.types(0).size();
  if (static_cast<int>(aux.lottery.size()) != nt ||
      static_cast<int>(aux.payment.size()) != nt) {
    throw InvalidInput("auxiliary mechanism needs one entry per type");
  }
  auto v = PermitValues(inst);
  auto utility = [&](int k, int r) {
    Rational u = -aux.payment[r];
    for (const auto& [p, pr] : aux.lottery[r]) u += pr * v[k][p];
    return u;
  };
  for (int k = 0; k < nt; ++k) {
    Rational truth = utility(k, k);
    if (truth < 0) {
      throw VerificationError("auxiliary mechanism is not individually rational for type " +
                              std::to_string(k));
    }
    for (int r = 0; r < nt; ++r) {
      if (utility(k, r) > truth) {
        throw VerificationError("type " + std::to_string(k) + " gains by reporting " +
                                std::to_string(r));
      }
    }
  }
}

Rational AuxiliaryRevenue(const Instance& inst, const AuxiliaryMechanism& aux) {
  RequireSingleBuyer(inst);
  const TypeSpace& types = inst.types(0);
  Rational total = 0;
  for (int k = 0; k < types.size(); ++k) total += types.prob(k) * aux.payment[k];
  return total;
}

AuxiliaryMechanism AuxiliaryFromPermitPrices(const Instance& inst,
                                             const std::vector<Rational>& prices) {
  RequireSingleBuyer(inst);
  auto v = PermitValues(inst);
  const ItemSet full = FullSet(inst.num_items());
  AuxiliaryMechanism aux;
  for (size_t k = 0; k < v.size(); ++k) {
    ItemSet best = 0;
    Rational best_u = 0;
    Rational best_fee = 0;
    for (ItemSet p = 1; p <= full; ++p) {
      Rational fee = 0;
      for (int j = 0; j < inst.num_items(); ++j) {
        if (HasItem(p, j)) fee += prices[j];
      }
      Rational u = v[k][p] - fee;
      int order = cmp(u, best_u);
      if (order > 0 || (order == 0 && (SetSize(p) > SetSize(best) ||
                                       (SetSize(p) == SetSize(best) && p < best)))) {
        best = p;
        best_u = u;
        best_fee = fee;
      }
    }
    aux.lottery.push_back({{best, Rational(1)}});
    aux.payment.push_back(best_fee);
  }
  return aux;
}

AuxiliaryMechanism AuxiliaryFromBundlePrice(const Instance& inst,
                                            const Rational& price) {
  RequireSingleBuyer(inst);
  auto v = PermitValues(inst);
  const ItemSet full = FullSet(inst.num_items());
  AuxiliaryMechanism aux;
  for (size_t k = 0; k < v.size(); ++k) {
    bool accept = v[k][full] >= price;
    aux.lottery.push_back({{accept ? full : ItemSet{0}, Rational(1)}});
    aux.payment.push_back(accept ? price : Rational(0));
  }
  return aux;
}

DirectMechanism ConvertRevenueToPermit(const Instance& inst,
                                       const AuxiliaryMechanism& aux) {
  RequireSingleBuyer(inst);
  const TypeSpace& types = inst.types(0);
  const int m = inst.num_items();
  DirectMechanism mech = EmptyMechanism(inst);
  std::map<PairSet, int> index;
  for (size_t a = 0; a < mech.allocations.size(); ++a) index[mech.allocations[a]] = a;
  for (int c = 0; c < inst.costs().size(); ++c) {
    std::vector<Rational> cost_prices(m);
    for (int j = 0; j < m; ++j) cost_prices[j] = inst.costs().cost(c, j);
    for (int k = 0; k < types.size(); ++k) {
      std::map<ItemSet, Rational> lottery;
      Rational pay = aux.payment[k];
      for (const auto& [p, pr] : aux.lottery[k]) {
        ItemSet b = Stage2Utility(inst, 0, types.values(k), cost_prices, p).set;
        if (b == 0) continue;
        lottery[b] += pr;
        for (int j = 0; j < m; ++j) {
          if (HasItem(b, j)) pay += pr * cost_prices[j];
        }
      }
      for (const auto& [b, pr] : lottery) mech.lottery[c][k].push_back({index.at(b), pr});
      mech.payment[c][k][0] = pay;
    }
  }
  return mech;
}

namespace {

void AddUnique(std::vector<Rational>* list, const Rational& v) {
  if (std::find(list->begin(), list->end(), v) == list->end()) list->push_back(v);
}

// Distribution of vbar_i(t, [m]) with zero thresholds.
std::map<Rational, Rational> FullVbarDistribution(const Instance& inst, int i) {
  const ThresholdMap zero = ThresholdMap::Zero(inst);
  std::map<Rational, Rational> dist;
  if (inst.family(i).IsAdditive()) {
    dist[Rational(0)] = 1;
    for (int j = 0; j < inst.num_items(); ++j) {
      const DiscreteDist& d = inst.dist(i, j);
      std::map<Rational, Rational> next;
      for (int s = 0; s < d.size(); ++s) {
        Rational v = VbarSingle(inst, i, j, d.value(s), zero);
        for (const auto& [x, p] : dist) next[x + v] += p * d.prob(s);
      }
      dist.swap(next);
    }
    return dist;
  }
  const TypeSpace& types = inst.types(i);
  for (int k = 0; k < types.size(); ++k) {
    dist[Vbar(inst, i, types.values(k), FullSet(inst.num_items()), zero)] += types.prob(k);
  }
  return dist;
}

void RequireGrid(const std::vector<Rational>& list) {
  if (list.empty()) throw InvalidInput("empty candidate grid");
}

ItemSet PermitChoice(const std::vector<Rational>& v, const std::vector<Rational>& prices,
                     int m, Rational* fee_out) {
  ItemSet best = 0;
  Rational best_u = 0;
  Rational best_fee = 0;
  for (ItemSet p = 1; p < v.size(); ++p) {
    Rational fee = 0;
    for (int j = 0; j < m; ++j) {
      if (HasItem(p, j)) fee += prices[j];
    }
    Rational u = v[p] - fee;
    int order = cmp(u, best_u);
    if (order > 0 || (order == 0 && (SetSize(p) > SetSize(best) ||
                                     (SetSize(p) == SetSize(best) && p < best)))) {
      best = p;
      best_u = u;
      best_fee = fee;
    }
  }
  *fee_out = best_fee;
  return best;
}

bool NextIndex(std::vector<int>* idx, const std::vector<int>& radix) {
  size_t x = 0;
  while (x < idx->size() && ++(*idx)[x] == radix[x]) (*idx)[x++] = 0;
  return x < idx->size();
}

double ProductSize(const std::vector<int>& radix) {
  double total = 1;
  for (int r : radix) total *= r;
  return total;
}

constexpr double kSearchGuard = 1e6;

}  // namespace

CandidateGrid DefaultGrid(const Instance& inst) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  CandidateGrid grid;
  grid.item.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<Rational> list = {Rational(0)};
      for (const Rational& v : inst.dist(i, j).support()) AddUnique(&list, v);
      for (int c = 0; c < inst.costs().size(); ++c) {
        AddUnique(&list, inst.costs().cost(c, j));
      }
      AddUnique(&list, ProhibitivePrice(inst));
      std::sort(list.begin(), list.end());
      grid.item[i].push_back(list);
    }
  }
  const ThresholdMap zero = ThresholdMap::Zero(inst);
  if (n == 1) {
    grid.permit.assign(m, std::vector<Rational>{Rational(0)});
    if (inst.family(0).IsAdditive()) {
      for (int j = 0; j < m; ++j) {
        for (const Rational& v : inst.dist(0, j).support()) {
          AddUnique(&grid.permit[j], VbarSingle(inst, 0, j, v, zero));
        }
      }
    } else {
      const TypeSpace& types = inst.types(0);
      for (int k = 0; k < types.size(); ++k) {
        for (int j = 0; j < m; ++j) {
          for (ItemSet s = 0; s <= FullSet(m); ++s) {
            if (HasItem(s, j)) continue;
            AddUnique(&grid.permit[j], Vbar(inst, 0, types.values(k), s | Singleton(j), zero) -
                                           Vbar(inst, 0, types.values(k), s, zero));
          }
        }
      }
    }
    for (auto& list : grid.permit) std::sort(list.begin(), list.end());
  }
  grid.bundle.resize(n);
  for (int i = 0; i < n; ++i) {
    grid.bundle[i].push_back(Rational(0));
    for (const auto& [v, p] : FullVbarDistribution(inst, i)) AddUnique(&grid.bundle[i], v);
    std::sort(grid.bundle[i].begin(), grid.bundle[i].end());
  }
  return grid;
}

SearchResult SearchBest(const Instance& inst, MechanismKind kind,
                        const CandidateGrid& grid) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  SearchResult out;
  out.spec = DefaultSpec(inst, kind);
  MechanismSpec& spec = out.spec;
  ValidateSpec(inst, spec);
  switch (kind) {
    case MechanismKind::kIP: {
      if (static_cast<int>(grid.item.size()) != 1) throw InvalidInput("IP grid needs one buyer");
      for (const auto& list : grid.item[0]) RequireGrid(list);
      if (inst.family(0).IsAdditive()) {
        out.profit = 0;
        for (int c = 0; c < nc; ++c) {
          for (int j = 0; j < m; ++j) {
            const DiscreteDist& d = inst.dist(0, j);
            const Rational& cost = inst.costs().cost(c, j);
            Rational best;
            bool first = true;
            for (const Rational& p : grid.item[0][j]) {
              Rational v = (p - cost) * d.ProbAtLeast(p);
              if (first || v > best) {
                best = v;
                spec.item_prices.at(0, j, c) = p;
                first = false;
              }
            }
            out.profit += inst.costs().prob(c) * best;
          }
        }
        break;
      }
      const TypeSpace& types = inst.types(0);
      std::vector<int> radix;
      for (const auto& list : grid.item[0]) radix.push_back(list.size());
      if (ProductSize(radix) * types.size() > kSearchGuard * 100) {
        throw SizeGuardExceeded("IP price grid is too large");
      }
      out.profit = 0;
      for (int c = 0; c < nc; ++c) {
        std::vector<int> idx(m, 0);
        Rational best;
        std::vector<int> best_idx;
        std::vector<Rational> w(m);
        do {
          Rational total = 0;
          for (int k = 0; k < types.size(); ++k) {
            const auto& t = types.values(k);
            ItemSet eligible = 0;
            for (int j = 0; j < m; ++j) {
              w[j] = t[j] - grid.item[0][j][idx[j]];
              if (w[j] >= 0) eligible |= Singleton(j);
            }
            ItemSet b = BestBundle(inst.family(0), w, eligible,
                                   TieBreak::kLargerThenSmallestMask).set;
            for (int j = 0; j < m; ++j) {
              if (HasItem(b, j)) {
                total += types.prob(k) *
                         (grid.item[0][j][idx[j]] - inst.costs().cost(c, j));
              }
            }
          }
          if (best_idx.empty() || total > best) {
            best = total;
            best_idx = idx;
          }
        } while (NextIndex(&idx, radix));
        for (int j = 0; j < m; ++j) spec.item_prices.at(0, j, c) = grid.item[0][j][best_idx[j]];
        out.profit += inst.costs().prob(c) * best;
      }
      break;
    }
    case MechanismKind::kPP: {
      if (n != 1 || static_cast<int>(grid.permit.size()) != m) {
        throw InvalidInput("PP grid needs one buyer and a list per item");
      }
      for (const auto& list : grid.permit) RequireGrid(list);
      if (inst.family(0).IsAdditive()) {
        const ThresholdMap zero = ThresholdMap::Zero(inst);
        out.profit = 0;
        for (int j = 0; j < m; ++j) {
          const DiscreteDist& d = inst.dist(0, j);
          Rational best;
          bool first = true;
          for (const Rational& l : grid.permit[j]) {
            Rational mass = 0;
            for (int s = 0; s < d.size(); ++s) {
              if (VbarSingle(inst, 0, j, d.value(s), zero) >= l) mass += d.prob(s);
            }
            if (first || l * mass > best) {
              best = l * mass;
              spec.permit_prices[0][j] = l;
              first = false;
            }
          }
          out.profit += best;
        }
        break;
      }
      auto v = PermitValues(inst);
      const TypeSpace& types = inst.types(0);
      std::vector<int> radix;
      for (const auto& list : grid.permit) radix.push_back(list.size());
      if (ProductSize(radix) > kSearchGuard) throw SizeGuardExceeded("PP grid is too large");
      std::vector<int> idx(m, 0);
      std::vector<int> best_idx;
      std::vector<Rational> prices(m);
      do {
        for (int j = 0; j < m; ++j) prices[j] = grid.permit[j][idx[j]];
        Rational total = 0;
        Rational fee;
        for (int k = 0; k < types.size(); ++k) {
          PermitChoice(v[k], prices, m, &fee);
          total += types.prob(k) * fee;
        }
        if (best_idx.empty() || total > out.profit) {
          out.profit = total;
          best_idx = idx;
        }
      } while (NextIndex(&idx, radix));
      for (int j = 0; j < m; ++j) spec.permit_prices[0][j] = grid.permit[j][best_idx[j]];
      break;
    }
    case MechanismKind::kPB: {
      if (n != 1 || grid.bundle.size() != 1) throw InvalidInput("PB grid needs one buyer");
      RequireGrid(grid.bundle[0]);
      auto dist = FullVbarDistribution(inst, 0);
      bool first = true;
      for (const Rational& delta : grid.bundle[0]) {
        Rational mass = 0;
        for (const auto& [x, p] : dist) {
          if (x >= delta) mass += p;
        }
        if (first || delta * mass > out.profit) {
          out.profit = delta * mass;
          spec.bundle_prices[0] = delta;
          first = false;
        }
      }
      break;
    }
    case MechanismKind::kCSIP: {
      if (static_cast<int>(grid.item.size()) != n) throw InvalidInput("CSIP grid needs every buyer");
      std::vector<std::vector<Rational>> cands;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
          RequireGrid(grid.item[i][j]);
          cands.push_back(grid.item[i][j]);
        }
      }
      out.profit = 0;
      for (int c = 0; c < nc; ++c) {
        Rational best;
        SearchAtom(inst, &spec, c, cands, &best);
        out.profit += best;
      }
      break;
    }
    case MechanismKind::kRSPP:
      throw InvalidInput("RSPP is built from ex-ante thresholds, not searched");
    case MechanismKind::kSPB: {
      if (static_cast<int>(grid.bundle.size()) != n) throw InvalidInput("SPB grid needs every buyer");
      std::vector<int> radix;
      for (const auto& list : grid.bundle) {
        RequireGrid(list);
        radix.push_back(list.size());
      }
      if (ProductSize(radix) > kSearchGuard) throw SizeGuardExceeded("SPB grid is too large");
      std::vector<int> idx(n, 0);
      std::vector<int> best_idx;
      do {
        for (int i = 0; i < n; ++i) spec.bundle_prices[i] = grid.bundle[i][idx[i]];
        Rational v = Evaluate(inst, spec).profit;
        if (best_idx.empty() || v > out.profit) {
          out.profit = v;
          best_idx = idx;
        }
      } while (NextIndex(&idx, radix));
      for (int i = 0; i < n; ++i) spec.bundle_prices[i] = grid.bundle[i][best_idx[i]];
      break;
    }
  }
  if (inst.HasTypeSpaces()) {
    Rational check = Evaluate(inst, spec).profit;
    if (check != out.profit) {
      throw VerificationError("search profit " + FormatRational(out.profit) +
                              " disagrees with evaluation " + FormatRational(check));
    }
  }
  return out;
}

}  // namespace permitlab
