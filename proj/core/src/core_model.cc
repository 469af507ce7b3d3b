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

#include "permitlab/core_model.h"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

#include "permitlab/errors.h"

namespace permitlab {

int SetSize(std::uint32_t s) { return std::popcount(s); }

DiscreteDist::DiscreteDist(std::vector<Rational> support,
                           std::vector<Rational> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.empty() || support_.size() != probs_.size()) {
    throw InvalidInput("distribution needs equally many values and probs");
  }
  Rational total = 0;
  for (size_t k = 0; k < support_.size(); ++k) {
    if (support_[k] < 0) {
      throw InvalidInput("negative support value " +
                         FormatRational(support_[k]));
    }
    if (k > 0 && !(support_[k - 1] < support_[k])) {
      throw InvalidInput("support must be strictly increasing");
    }
    if (probs_[k] <= 0 || probs_[k] > 1) {
      throw InvalidInput("probability outside (0,1]: " +
                         FormatRational(probs_[k]));
    }
    total += probs_[k];
  }
  if (total != 1) {
    throw InvalidInput("probabilities sum to " + FormatRational(total));
  }
}

DiscreteDist DiscreteDist::PointMass(const Rational& value) {
  return DiscreteDist({value}, {Rational(1)});
}

DiscreteDist DiscreteDist::Uniform(const std::vector<Rational>& support) {
  std::vector<Rational> probs(support.size(),
                              Rational(1, static_cast<long>(support.size())));
  return DiscreteDist(support, probs);
}

Rational DiscreteDist::ProbAtLeast(const Rational& x) const {
  Rational p = 0;
  for (int k = size() - 1; k >= 0 && support_[k] >= x; --k) p += probs_[k];
  return p;
}

Rational DiscreteDist::ProbGreater(const Rational& x) const {
  Rational p = 0;
  for (int k = size() - 1; k >= 0 && support_[k] > x; --k) p += probs_[k];
  return p;
}

int DiscreteDist::IndexOf(const Rational& v) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), v);
  if (it == support_.end() || *it != v) return -1;
  return static_cast<int>(it - support_.begin());
}

Rational DiscreteDist::Mean() const {
  Rational mean = 0;
  for (int k = 0; k < size(); ++k) mean += support_[k] * probs_[k];
  return mean;
}

CostModel::CostModel(int m, std::vector<CostAtom> atoms)
    : m_(m), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InvalidInput("cost model needs at least one atom");
  Rational total = 0;
  for (const CostAtom& a : atoms_) {
    if (static_cast<int>(a.costs.size()) != m_) {
      throw InvalidInput("cost vector length differs from item count");
    }
    for (const Rational& c : a.costs) {
      if (c < 0) throw InvalidInput("negative cost " + FormatRational(c));
    }
    if (a.prob <= 0 || a.prob > 1) {
      throw InvalidInput("cost atom probability outside (0,1]");
    }
    total += a.prob;
  }
  if (total != 1) {
    throw InvalidInput("cost probabilities sum to " + FormatRational(total));
  }
}

CostModel CostModel::Zero(int m) {
  return CostModel(m, {CostAtom{std::vector<Rational>(m, Rational(0)), 1}});
}

std::string FamilyKindName(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kExplicit:
      return "explicit";
    case FamilyKind::kUniform:
      return "uniform";
    case FamilyKind::kPartition:
      return "partition";
    case FamilyKind::kBases:
      return "bases";
  }
  return "unknown";
}

namespace {

void CheckGround(int m) {
  if (m < 1 || m > kMaxItems) {
    throw InvalidInput("item count must be in [1," +
                       std::to_string(kMaxItems) + "], got " +
                       std::to_string(m));
  }
}

void CheckSubset(int m, ItemSet s) {
  if ((s & ~FullSet(m)) != 0) {
    throw InvalidInput("set mentions an item outside the ground set");
  }
}

}  // namespace

FeasibilityFamily FeasibilityFamily::Additive(int m) { return Uniform(m, m); }

FeasibilityFamily FeasibilityFamily::Uniform(int m, int rank) {
  CheckGround(m);
  if (rank < 0 || rank > m) throw InvalidInput("uniform rank out of range");
  FeasibilityFamily f;
  f.kind_ = FamilyKind::kUniform;
  f.m_ = m;
  f.rank_ = rank;
  f.member_.assign(size_t{1} << m, false);
  for (ItemSet s = 0; s <= FullSet(m); ++s) f.member_[s] = SetSize(s) <= rank;
  return f;
}

FeasibilityFamily FeasibilityFamily::Partition(int m, std::vector<ItemSet> parts,
                                               std::vector<int> capacities) {
  CheckGround(m);
  if (parts.size() != capacities.size()) {
    throw InvalidInput("partition needs one capacity per part");
  }
  ItemSet covered = 0;
  for (size_t p = 0; p < parts.size(); ++p) {
    CheckSubset(m, parts[p]);
    if (parts[p] == 0) throw InvalidInput("empty part in partition family");
    if (covered & parts[p]) throw InvalidInput("partition parts overlap");
    if (capacities[p] < 0) throw InvalidInput("negative part capacity");
    covered |= parts[p];
  }
  if (covered != FullSet(m)) {
    throw InvalidInput("partition parts must cover every item");
  }
  FeasibilityFamily f;
  f.kind_ = FamilyKind::kPartition;
  f.m_ = m;
  f.parts_ = std::move(parts);
  f.capacities_ = std::move(capacities);
  f.member_.assign(size_t{1} << m, false);
  for (ItemSet s = 0; s <= FullSet(m); ++s) {
    bool ok = true;
    for (size_t p = 0; p < f.parts_.size() && ok; ++p) {
      ok = SetSize(s & f.parts_[p]) <= f.capacities_[p];
    }
    f.member_[s] = ok;
  }
  return f;
}

FeasibilityFamily FeasibilityFamily::FromBases(int m, std::vector<ItemSet> bases) {
  CheckGround(m);
  if (bases.empty()) throw InvalidInput("basis list is empty");
  FeasibilityFamily f;
  f.kind_ = FamilyKind::kBases;
  f.m_ = m;
  f.member_.assign(size_t{1} << m, false);
  for (ItemSet b : bases) {
    CheckSubset(m, b);
    for (ItemSet s = b;; s = (s - 1) & b) {
      f.member_[s] = true;
      if (s == 0) break;
    }
  }
  f.bases_ = std::move(bases);
  return f;
}

FeasibilityFamily FeasibilityFamily::Explicit(int m,
                                              std::vector<ItemSet> members) {
  CheckGround(m);
  std::vector<bool> table(size_t{1} << m, false);
  for (ItemSet s : members) {
    CheckSubset(m, s);
    table[s] = true;
  }
  return FromTable(m, std::move(table));
}

FeasibilityFamily FeasibilityFamily::FromTable(int m, std::vector<bool> table) {
  CheckGround(m);
  if (table.size() != (size_t{1} << m)) {
    throw InvalidInput("membership table has the wrong size");
  }
  FeasibilityFamily f;
  f.kind_ = FamilyKind::kExplicit;
  f.m_ = m;
  f.member_ = std::move(table);
  f.CheckDownwardClosed();
  return f;
}

void FeasibilityFamily::CheckDownwardClosed() const {
  if (!member_[0]) throw InvalidInput("family must contain the empty set");
  for (ItemSet s = 1; s <= FullSet(m_); ++s) {
    if (!member_[s]) continue;
    for (int j = 0; j < m_; ++j) {
      if (HasItem(s, j) && !member_[s & ~Singleton(j)]) {
        throw InvalidInput("family is not downward closed: contains mask " +
                           std::to_string(s) + " but not mask " +
                           std::to_string(s & ~Singleton(j)));
      }
    }
  }
}

bool FeasibilityFamily::IsAdditive() const { return member_[FullSet(m_)]; }

bool FeasibilityFamily::IsMatroid() const {
  if (kind_ == FamilyKind::kUniform || kind_ == FamilyKind::kPartition) {
    return true;
  }
  for (ItemSet i = 0; i <= FullSet(m_); ++i) {
    if (!member_[i]) continue;
    for (ItemSet j = 0; j <= FullSet(m_); ++j) {
      if (!member_[j] || SetSize(j) != SetSize(i) + 1) continue;
      bool augmentable = false;
      for (int e = 0; e < m_ && !augmentable; ++e) {
        augmentable = HasItem(j & ~i, e) && member_[i | Singleton(e)];
      }
      if (!augmentable) return false;
    }
  }
  return true;
}

int FeasibilityFamily::Rank(ItemSet s) const {
  int best = 0;
  for (ItemSet t = s;; t = (t - 1) & s) {
    if (member_[t]) best = std::max(best, SetSize(t));
    if (t == 0) break;
  }
  return best;
}

std::vector<ItemSet> FeasibilityFamily::Members() const {
  std::vector<ItemSet> out;
  for (ItemSet s = 0; s <= FullSet(m_); ++s) {
    if (member_[s]) out.push_back(s);
  }
  return out;
}

std::vector<ItemSet> FeasibilityFamily::MaximalMembers() const {
  std::vector<ItemSet> out;
  for (ItemSet s = 0; s <= FullSet(m_); ++s) {
    if (!member_[s]) continue;
    bool maximal = true;
    for (int j = 0; j < m_ && maximal; ++j) {
      maximal = HasItem(s, j) || !member_[s | Singleton(j)];
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

TypeSpace::TypeSpace(const std::vector<DiscreteDist>& dists) {
  const int m = static_cast<int>(dists.size());
  long total = 1;
  radix_.resize(m);
  stride_.resize(m);
  for (int j = 0; j < m; ++j) {
    radix_[j] = dists[j].size();
    stride_[j] = static_cast<int>(total);
    total *= radix_[j];
    if (total > kMaxTypesPerBuyer) {
      throw SizeGuardExceeded("type space has more than " +
                              std::to_string(kMaxTypesPerBuyer) + " types");
    }
  }
  values_.resize(total);
  probs_.resize(total);
  for (long k = 0; k < total; ++k) {
    values_[k].resize(m);
    Rational p = 1;
    for (int j = 0; j < m; ++j) {
      int d = (k / stride_[j]) % radix_[j];
      values_[k][j] = dists[j].value(d);
      p *= dists[j].prob(d);
    }
    probs_[k] = p;
  }
}

Instance::Instance(int n, int m, std::vector<std::vector<DiscreteDist>> dists,
                   CostModel costs, std::vector<FeasibilityFamily> families)
    : n_(n),
      m_(m),
      dists_(std::move(dists)),
      costs_(std::move(costs)),
      families_(std::move(families)) {
  if (n_ < 1) throw InvalidInput("need at least one buyer");
  CheckGround(m_);
  if (n_ * m_ > kMaxPairs) {
    throw SizeGuardExceeded("n*m = " + std::to_string(n_ * m_) +
                            " exceeds the pair limit " +
                            std::to_string(kMaxPairs));
  }
  if (static_cast<int>(dists_.size()) != n_ ||
      static_cast<int>(families_.size()) != n_) {
    throw InvalidInput("need one distribution row and one family per buyer");
  }
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(dists_[i].size()) != m_) {
      throw InvalidInput("buyer " + std::to_string(i) +
                         " needs one distribution per item");
    }
    for (const DiscreteDist& d : dists_[i]) {
      if (d.size() == 0) throw InvalidInput("empty distribution");
    }
    if (families_[i].ground_size() != m_) {
      throw InvalidInput("family ground set differs from item count");
    }
  }
  if (costs_.num_items() != m_) {
    throw InvalidInput("cost vectors differ from item count");
  }
  bool small = true;
  for (int i = 0; i < n_; ++i) small = small && TypeCount(i) <= kMaxTypesPerBuyer;
  if (small) {
    for (int i = 0; i < n_; ++i) types_.emplace_back(dists_[i]);
    types_built_ = true;
  }
}

long Instance::TypeCount(int i) const {
  long total = 1;
  for (const DiscreteDist& d : dists_[i]) {
    total *= d.size();
    if (total > kMaxTypesPerBuyer * 1000L) break;
  }
  return total;
}

const TypeSpace& Instance::types(int i) const {
  if (!types_built_) {
    throw SizeGuardExceeded("type spaces were not enumerated: a buyer has " +
                            std::to_string(TypeCount(i)) + " types");
  }
  return types_[i];
}

Rational Instance::MaxSupportValue() const {
  Rational best = 0;
  for (const auto& row : dists_) {
    for (const DiscreteDist& d : row) best = Max(best, d.support().back());
  }
  return best;
}

bool Instance::AllAdditive() const {
  for (const FeasibilityFamily& f : families_) {
    if (!f.IsAdditive()) return false;
  }
  return true;
}

bool Instance::AllMatroids() const {
  for (const FeasibilityFamily& f : families_) {
    if (!f.IsMatroid()) return false;
  }
  return true;
}

ThresholdMap::ThresholdMap(int n, int m, int num_costs)
    : m_(m), c_(num_costs), data_(static_cast<size_t>(n) * m * num_costs) {}

ThresholdMap ThresholdMap::Zero(const Instance& inst) {
  return ThresholdMap(inst.num_buyers(), inst.num_items(), inst.costs().size());
}

Rational EffectivePrice(const Instance& inst, const ThresholdMap& beta, int i,
                        int j, int c) {
  return Max(beta.at(i, j, c), inst.costs().cost(c, j));
}

BundleChoice BestBundle(const FeasibilityFamily& family,
                        const std::vector<Rational>& weights, ItemSet allowed,
                        TieBreak tie) {
  BundleChoice best;
  best.value = 0;
  best.set = 0;
  const int m = family.ground_size();
  allowed &= FullSet(m);
  if (family.IsAdditive()) {
    for (int j = 0; j < m; ++j) {
      if (!HasItem(allowed, j)) continue;
      int sign = sgn(weights[j]);
      if (sign > 0 || (sign == 0 && tie == TieBreak::kLargerThenSmallestMask)) {
        best.value += weights[j];
        best.set |= Singleton(j);
      }
    }
    return best;
  }
  Rational value;
  for (ItemSet s = allowed;; s = (s - 1) & allowed) {
    if (s != 0 && family.Contains(s)) {
      value = 0;
      for (int j = 0; j < m; ++j) {
        if (HasItem(s, j)) value += weights[j];
      }
      int order = cmp(value, best.value);
      bool better = order > 0;
      if (order == 0) {
        if (tie == TieBreak::kSmallestMask) {
          better = s < best.set;
        } else {
          int ds = SetSize(s);
          int db = SetSize(best.set);
          better = ds > db || (ds == db && s < best.set);
        }
      }
      if (better) {
        best.value = value;
        best.set = s;
      }
    }
    if (s == 0) break;
  }
  return best;
}

Rational Value(const Instance& inst, int i, const std::vector<Rational>& t,
               ItemSet s) {
  return BestBundle(inst.family(i), t, s).value;
}

Rational VbarSingle(const Instance& inst, int i, int j, const Rational& t_ij,
                    const ThresholdMap& beta) {
  Rational total = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    total += inst.costs().prob(c) *
             PositivePart(t_ij - EffectivePrice(inst, beta, i, j, c));
  }
  return total;
}

Rational Vbar(const Instance& inst, int i, const std::vector<Rational>& t,
              ItemSet p, const ThresholdMap& beta) {
  const int m = inst.num_items();
  std::vector<Rational> w(m);
  Rational total = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    for (int j = 0; j < m; ++j) w[j] = t[j] - EffectivePrice(inst, beta, i, j, c);
    total += inst.costs().prob(c) * BestBundle(inst.family(i), w, p).value;
  }
  return total;
}

BundleChoice Stage2Utility(const Instance& inst, int i,
                           const std::vector<Rational>& t,
                           const std::vector<Rational>& prices, ItemSet p,
                           TieBreak tie) {
  const int m = inst.num_items();
  std::vector<Rational> w(m);
  for (int j = 0; j < m; ++j) w[j] = t[j] - prices[j];
  return BestBundle(inst.family(i), w, p, tie);
}

std::vector<Rational> SupportingPrices(const Instance& inst, int i,
                                       const std::vector<Rational>& t,
                                       const std::vector<Rational>& prices,
                                       ItemSet p) {
  BundleChoice choice = Stage2Utility(inst, i, t, prices, p);
  std::vector<Rational> out(inst.num_items(), Rational(0));
  for (int j = 0; j < inst.num_items(); ++j) {
    if (HasItem(choice.set, j)) out[j] = t[j] - prices[j];
  }
  return out;
}

ItemSet CoreItems(const Instance& inst, int i, const std::vector<Rational>& t,
                  const ThresholdMap& beta, const Rational& tau) {
  ItemSet core = 0;
  for (int j = 0; j < inst.num_items(); ++j) {
    if (VbarSingle(inst, i, j, t[j], beta) <= tau) core |= Singleton(j);
  }
  return core;
}

Rational Mu(const Instance& inst, int i, const std::vector<Rational>& t,
            ItemSet s, const ThresholdMap& beta, const Rational& tau) {
  return Vbar(inst, i, t, CoreItems(inst, i, t, beta, tau) & s, beta);
}

ItemSet BuyerBundle(PairSet a, int m, int i) {
  return (a >> (i * m)) & FullSet(m);
}

bool IsFeasibleAllocation(const Instance& inst, PairSet a) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  ItemSet used = 0;
  for (int i = 0; i < n; ++i) {
    ItemSet b = BuyerBundle(a, m, i);
    if (used & b) return false;
    if (!inst.family(i).Contains(b)) return false;
    used |= b;
  }
  return true;
}

std::vector<PairSet> EnumerateAllocations(const Instance& inst) {
  const int total = inst.num_buyers() * inst.num_items();
  std::vector<PairSet> out;
  for (PairSet a = 0; a < (PairSet{1} << total); ++a) {
    if (IsFeasibleAllocation(inst, a)) out.push_back(a);
  }
  return out;
}

}  // namespace permitlab
