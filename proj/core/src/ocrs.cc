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

#include "permitlab/ocrs.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "permitlab/errors.h"
#include "permitlab/linear_program.h"

namespace permitlab {

namespace {

int Popcount(PairSet s) { return __builtin_popcount(s); }

std::vector<int> RankTable(const PairConstraint& family) {
  const PairSet size = PairSet{1} << family.num_pairs();
  std::vector<int> rank(size, 0);
  for (PairSet s = 0; s < size; ++s) {
    if (family.Contains(s)) {
      rank[s] = Popcount(s);
      continue;
    }
    for (int e = 0; e < family.num_pairs(); ++e) {
      if ((s >> e) & 1) rank[s] = std::max(rank[s], rank[s & ~(PairSet{1} << e)]);
    }
  }
  return rank;
}

void CheckVector(const PairConstraint& family, const std::vector<Rational>& y) {
  if (static_cast<int>(y.size()) != family.num_pairs()) {
    throw InvalidInput("activity vector has the wrong length");
  }
  for (const Rational& v : y) {
    if (v < 0 || v > 1) throw InvalidInput("activity probabilities must lie in [0,1]");
  }
}

// Pr[active set = mask] for independent activity.
std::vector<Rational> PatternProbs(const std::vector<Rational>& y) {
  const int e = static_cast<int>(y.size());
  std::vector<Rational> p(size_t{1} << e);
  p[0] = 1;
  for (const Rational& v : y) p[0] *= 1 - v;
  for (PairSet mask = 1; mask < p.size(); ++mask) {
    int low = __builtin_ctz(mask);
    PairSet rest = mask & (mask - 1);
    // Swap the factor of the lowest element from inactive to active.
    if (y[low] == 1) {
      p[mask] = 1;
      for (int x = 0; x < e; ++x) p[mask] *= ((mask >> x) & 1) ? y[x] : 1 - y[x];
    } else {
      p[mask] = p[rest] * y[low] / (1 - y[low]);
    }
  }
  return p;
}

bool Selectable(const PairConstraint& sub, PairSet active, int e) {
  const PairSet bit = PairSet{1} << e;
  const PairSet others = active & ~bit;
  for (PairSet a = others;; a = (a - 1) & others) {
    if (sub.Contains(a) && !sub.Contains(a | bit)) return false;
    if (a == 0) break;
  }
  return true;
}

PairSet GreedyRun(const PairConstraint& sub, PairSet active,
                  const std::vector<int>& order) {
  PairSet chosen = 0;
  for (int e : order) {
    PairSet bit = PairSet{1} << e;
    if ((active & bit) && sub.Contains(chosen | bit)) chosen |= bit;
  }
  return chosen;
}

bool InMatroidPolytope(const std::vector<int>& rank, const std::vector<Rational>& y,
                       const Rational& scale) {
  for (PairSet s = 1; s < rank.size(); ++s) {
    Rational total = 0;
    for (size_t e = 0; e < y.size(); ++e) {
      if ((s >> e) & 1) total += y[e];
    }
    if (total > scale * rank[s]) return false;
  }
  return true;
}

std::vector<std::vector<Rational>> GridPoints(int e, const Rational& b, int steps) {
  std::vector<std::vector<Rational>> out;
  std::vector<int> idx(e, 0);
  while (true) {
    std::vector<Rational> y(e);
    for (int x = 0; x < e; ++x) y[x] = b * idx[x] / steps;
    out.push_back(y);
    int x = 0;
    while (x < e && ++idx[x] > steps) idx[x++] = 0;
    if (x == e) break;
  }
  return out;
}

Rational CertifyOnGrid(const GreedyOcrs& ocrs, const PairConstraint& matroid) {
  const int e = matroid.num_pairs();
  const int steps = e <= 6 ? 2 : 1;
  const std::vector<int> rank = RankTable(matroid);
  Rational worst = 1;
  for (const auto& y : GridPoints(e, ocrs.b, steps)) {
    if (!InMatroidPolytope(rank, y, ocrs.b)) continue;
    SelectabilityReport rep = Selectability(ocrs, y);
    worst = Min(worst, rep.min_value);
  }
  return worst;
}

}  // namespace

bool IsMatroidFamily(const PairConstraint& family) {
  if (family.empty() || !family.Contains(0)) return false;
  std::vector<PairSet> members = family.Members();
  for (PairSet s : members) {
    for (int e = 0; e < family.num_pairs(); ++e) {
      if (((s >> e) & 1) && !family.Contains(s & ~(PairSet{1} << e))) return false;
    }
  }
  for (PairSet a : members) {
    for (PairSet b : members) {
      if (Popcount(a) >= Popcount(b)) continue;
      bool found = false;
      PairSet diff = b & ~a;
      for (int e = 0; e < family.num_pairs() && !found; ++e) {
        if (((diff >> e) & 1) && family.Contains(a | (PairSet{1} << e))) found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

int FamilyRank(const PairConstraint& family, PairSet s) {
  int best = 0;
  for (PairSet a = s;; a = (a - 1) & s) {
    if (family.Contains(a)) best = std::max(best, Popcount(a));
    if (a == 0) break;
  }
  return best;
}

PairConstraint Subfamily(const GreedyOcrs& ocrs, const std::vector<Rational>& y) {
  switch (ocrs.rule) {
    case OcrsRule::kPlain:
      return ocrs.family;
    case OcrsRule::kTruncated: {
      std::vector<bool> table(size_t{1} << ocrs.family.num_pairs());
      for (PairSet s = 0; s < table.size(); ++s) {
        table[s] = ocrs.family.Contains(s) && Popcount(s) <= ocrs.truncation_rank;
      }
      return PairConstraint(ocrs.family.num_pairs(), std::move(table));
    }
    case OcrsRule::kComposite: {
      PairConstraint out = Subfamily(ocrs.parts.front(), y);
      for (size_t k = 1; k < ocrs.parts.size(); ++k) {
        out = out.Intersect(Subfamily(ocrs.parts[k], y));
      }
      return out;
    }
  }
  return ocrs.family;
}

MembershipResult PolytopeMembership(const PairConstraint& family,
                                    const std::vector<Rational>& y,
                                    const Rational& scale) {
  CheckVector(family, y);
  if (scale <= 0) throw InvalidInput("polytope scale must be positive");
  MembershipResult out;
  std::vector<PairSet> members = family.Members();
  LinearProgram lp;
  for (PairSet s : members) lp.AddColumn("w" + std::to_string(s), 0);
  std::vector<std::pair<int, Rational>> total;
  for (size_t k = 0; k < members.size(); ++k) total.push_back({static_cast<int>(k), 1});
  lp.AddRow("convex", total, RowSense::kEqual, 1);
  for (int e = 0; e < family.num_pairs(); ++e) {
    std::vector<std::pair<int, Rational>> cover;
    for (size_t k = 0; k < members.size(); ++k) {
      if ((members[k] >> e) & 1) cover.push_back({static_cast<int>(k), 1});
    }
    lp.AddRow("cover" + std::to_string(e), cover, RowSense::kGreaterEqual, y[e] / scale);
  }
  LpSolution sol = SolveLinearProgram(lp);
  if (sol.status == LpStatus::kOptimal) {
    out.member = true;
    for (size_t k = 0; k < members.size(); ++k) {
      if (sol.x[k] != 0) out.decomposition.push_back({members[k], sol.x[k]});
    }
    return out;
  }
  out.member = false;
  if (IsMatroidFamily(family)) {
    for (PairSet s = 1; s < (PairSet{1} << family.num_pairs()); ++s) {
      Rational sum = 0;
      for (int e = 0; e < family.num_pairs(); ++e) {
        if ((s >> e) & 1) sum += y[e];
      }
      int r = FamilyRank(family, s);
      if (sum > scale * r) {
        out.witness = "y(" + std::to_string(s) + ") = " + FormatRational(sum) +
                      " exceeds " + FormatRational(scale) + " * rank " + std::to_string(r);
        return out;
      }
    }
  }
  out.witness = "no convex combination of members covers y / " + FormatRational(scale);
  return out;
}

SelectabilityReport Selectability(const GreedyOcrs& ocrs, const std::vector<Rational>& y,
                                  long samples, std::uint64_t seed) {
  const PairConstraint& family = ocrs.family;
  CheckVector(family, y);
  MembershipResult mem = PolytopeMembership(family, y, ocrs.b);
  if (!mem.member) throw InvalidInput("activity vector outside the scaled polytope: " + mem.witness);
  const PairConstraint sub = Subfamily(ocrs, y);
  const int e = family.num_pairs();
  SelectabilityReport rep;
  if (e <= 12) {
    rep.exact = true;
    std::vector<Rational> probs = PatternProbs(y);
    rep.value.assign(e, Rational(0));
    for (int x = 0; x < e; ++x) {
      const PairSet bit = PairSet{1} << x;
      for (PairSet r = 0; r < probs.size(); ++r) {
        if (r & bit) continue;
        if (Selectable(sub, r, x)) rep.value[x] += probs[r] + probs[r | bit];
      }
    }
    rep.min_value = 1;
    for (int x = 0; x < e; ++x) {
      if (y[x] > 0) rep.min_value = Min(rep.min_value, rep.value[x]);
    }
    for (const Rational& v : rep.value) rep.estimate.push_back(v.get_d());
    return rep;
  }
  if (samples < 1) throw InvalidInput("sampled selectability needs samples");
  rep.exact = false;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<long> hits(e, 0);
  for (long s = 0; s < samples; ++s) {
    PairSet r = 0;
    for (int x = 0; x < e; ++x) {
      if (unit(rng) < y[x].get_d()) r |= PairSet{1} << x;
    }
    for (int x = 0; x < e; ++x) {
      if (Selectable(sub, r, x)) ++hits[x];
    }
  }
  double worst = 1.0;
  for (int x = 0; x < e; ++x) {
    double p = static_cast<double>(hits[x]) / samples;
    rep.estimate.push_back(p);
    if (y[x] > 0) worst = std::min(worst, p);
  }
  rep.half_width = 2.5758293035489004 * std::sqrt(0.25 / samples);
  rep.min_value = Rational(worst);
  return rep;
}

std::vector<Rational> GreedySelectionProbs(const GreedyOcrs& ocrs,
                                           const std::vector<Rational>& y,
                                           const std::vector<int>& order) {
  CheckVector(ocrs.family, y);
  const int e = ocrs.family.num_pairs();
  if (e > 16) throw SizeGuardExceeded("too many elements for exact replay");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(e);
  std::iota(expected.begin(), expected.end(), 0);
  if (sorted != expected) throw InvalidInput("order must be a permutation of the elements");
  const PairConstraint sub = Subfamily(ocrs, y);
  std::vector<Rational> probs = PatternProbs(y);
  std::vector<Rational> out(e);
  for (PairSet r = 0; r < probs.size(); ++r) {
    if (probs[r] == 0) continue;
    PairSet chosen = GreedyRun(sub, r, order);
    for (int x = 0; x < e; ++x) {
      if ((chosen >> x) & 1) out[x] += probs[r];
    }
  }
  return out;
}

std::vector<Rational> AdaptiveSelectionProbs(const GreedyOcrs& ocrs,
                                             const std::vector<Rational>& y) {
  CheckVector(ocrs.family, y);
  const int e = ocrs.family.num_pairs();
  if (e > 7) throw SizeGuardExceeded("too many elements for order enumeration");
  const PairConstraint sub = Subfamily(ocrs, y);
  std::vector<Rational> probs = PatternProbs(y);
  std::vector<Rational> out(e);
  for (PairSet r = 0; r < probs.size(); ++r) {
    if (probs[r] == 0) continue;
    PairSet always = r;
    std::vector<int> order(e);
    std::iota(order.begin(), order.end(), 0);
    do {
      always &= GreedyRun(sub, r, order);
    } while (always != 0 && std::next_permutation(order.begin(), order.end()));
    for (int x = 0; x < e; ++x) {
      if ((always >> x) & 1) out[x] += probs[r];
    }
  }
  return out;
}

std::vector<std::vector<Rational>> ScaledPolytopeGrid(const PairConstraint& family,
                                                      const Rational& b, int steps) {
  if (steps < 1) throw InvalidInput("grid needs at least one step");
  std::vector<std::vector<Rational>> out;
  const bool matroid = IsMatroidFamily(family);
  std::vector<int> rank;
  if (matroid) rank = RankTable(family);
  for (auto& y : GridPoints(family.num_pairs(), b, steps)) {
    bool inside = matroid ? InMatroidPolytope(rank, y, b)
                          : PolytopeMembership(family, y, b).member;
    if (inside) out.push_back(std::move(y));
  }
  return out;
}

GreedyOcrs MatroidOcrs(const PairConstraint& matroid, const Rational& b,
                       MatroidClass cls) {
  if (b <= 0 || b >= 1) throw InvalidInput("OCRS parameter b must lie in (0,1)");
  if (!IsMatroidFamily(matroid)) throw InvalidInput("family is not a matroid");
  GreedyOcrs plain;
  plain.family = matroid;
  plain.b = b;
  plain.rule = OcrsRule::kPlain;
  const Rational target = 1 - b;
  Rational achieved = CertifyOnGrid(plain, matroid);
  if (cls != MatroidClass::kExplicit) {
    if (achieved < target) {
      throw VerificationError("plain greedy misses 1 - b on a uniform or partition matroid");
    }
    plain.constant = target;
    return plain;
  }
  if (achieved >= target) {
    plain.constant = target;
    return plain;
  }
  GreedyOcrs best = plain;
  best.constant = achieved;
  const int full_rank = FamilyRank(matroid, (PairSet{1} << matroid.num_pairs()) - 1);
  for (int r = full_rank - 1; r >= 1; --r) {
    GreedyOcrs trial = plain;
    trial.rule = OcrsRule::kTruncated;
    trial.truncation_rank = r;
    Rational value = CertifyOnGrid(trial, matroid);
    if (value > best.constant) {
      best = trial;
      best.constant = value;
    }
    if (value >= target) {
      best.constant = target;
      break;
    }
  }
  return best;
}

GreedyOcrs Compose(const GreedyOcrs& first, const GreedyOcrs& second) {
  if (first.family.num_pairs() != second.family.num_pairs()) {
    throw InvalidInput("composed OCRS need the same ground set");
  }
  if (first.b != second.b) throw InvalidInput("composed OCRS need the same b");
  GreedyOcrs out;
  out.family = first.family.Intersect(second.family);
  out.b = first.b;
  out.constant = first.constant * second.constant;
  out.rule = OcrsRule::kComposite;
  out.parts = {first, second};
  return out;
}

PairConstraint ItemPartitionFamily(const Instance& inst) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int e = n * m;
  std::vector<bool> table(size_t{1} << e);
  for (PairSet a = 0; a < table.size(); ++a) {
    ItemSet seen = 0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      ItemSet s = BuyerBundle(a, m, i);
      ok = (s & seen) == 0;
      seen |= s;
    }
    table[a] = ok;
  }
  return PairConstraint(e, std::move(table));
}

PairConstraint BuyerFeasibilityFamily(const Instance& inst) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int e = n * m;
  std::vector<bool> table(size_t{1} << e);
  for (PairSet a = 0; a < table.size(); ++a) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = inst.family(i).Contains(BuyerBundle(a, m, i));
    table[a] = ok;
  }
  return PairConstraint(e, std::move(table));
}

GreedyOcrs AuctionOcrs(const Instance& inst, const Rational& b) {
  if (!inst.AllMatroids()) {
    throw PreconditionFailed("the auction OCRS needs matroid feasibility families");
  }
  if (inst.num_buyers() * inst.num_items() > kMaxPairs) {
    throw SizeGuardExceeded("too many buyer-item pairs");
  }
  bool simple = true;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    FamilyKind k = inst.family(i).kind();
    if (k != FamilyKind::kUniform && k != FamilyKind::kPartition) simple = false;
  }
  GreedyOcrs items = MatroidOcrs(ItemPartitionFamily(inst), b, MatroidClass::kPartition);
  GreedyOcrs buyers = MatroidOcrs(BuyerFeasibilityFamily(inst), b,
                                  simple ? MatroidClass::kPartition : MatroidClass::kExplicit);
  return Compose(items, buyers);
}

MechanismSpec ProphetCsip(const Instance& inst, const ExAnteProfile& exante) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  GreedyOcrs ocrs = AuctionOcrs(inst, Rational(1, 2));
  MechanismSpec spec = DefaultSpec(inst, MechanismKind::kCSIP);
  for (int c = 0; c < nc; ++c) {
    std::vector<Rational> y(n * m);
    PairSet excluded = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        y[PairBit(m, i, j)] = exante.q.at(i, j, c);
        if (!exante.above_cost[i][j][c]) excluded |= PairSet{1} << PairBit(m, i, j);
        spec.item_prices.at(i, j, c) = EffectivePrice(inst, exante.beta, i, j, c);
        spec.tie_accept.at(i, j, c) = exante.rho.at(i, j, c);
      }
    }
    MembershipResult mem = PolytopeMembership(ocrs.family, y, ocrs.b);
    if (!mem.member) {
      throw PreconditionFailed("ex-ante probabilities of cost atom " + std::to_string(c) +
                               " are outside half the polytope: " + mem.witness);
    }
    spec.sub_constraint.push_back(Subfamily(ocrs, y).Without(excluded));
  }
  return spec;
}

}  // namespace permitlab
