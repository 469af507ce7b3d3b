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

#ifndef PERMITLAB_CORE_MODEL_H_
#define PERMITLAB_CORE_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "permitlab/rational.h"

namespace permitlab {

// Bitmask over items; bit j set means item j is in the set.
using ItemSet = std::uint32_t;
// Bitmask over buyer-item pairs; pair (i, j) uses bit i * m + j.
using PairSet = std::uint32_t;

inline bool HasItem(ItemSet s, int j) { return (s >> j) & 1u; }
inline ItemSet Singleton(int j) { return ItemSet{1} << j; }
inline ItemSet FullSet(int m) { return m >= 32 ? ~ItemSet{0} : (ItemSet{1} << m) - 1; }
int SetSize(std::uint32_t s);

inline constexpr int kMaxItems = 16;
inline constexpr int kMaxPairs = 16;
inline constexpr long kMaxTypesPerBuyer = 200000;

class DiscreteDist {
 public:
  DiscreteDist() = default;
  // Support must be strictly increasing and nonnegative, probabilities
  // positive and summing to one.
  DiscreteDist(std::vector<Rational> support, std::vector<Rational> probs);
  static DiscreteDist PointMass(const Rational& value);
  static DiscreteDist Uniform(const std::vector<Rational>& support);

  int size() const { return static_cast<int>(support_.size()); }
  const Rational& value(int k) const { return support_[k]; }
  const Rational& prob(int k) const { return probs_[k]; }
  const std::vector<Rational>& support() const { return support_; }
  const std::vector<Rational>& probs() const { return probs_; }

  Rational ProbAtLeast(const Rational& x) const;
  Rational ProbGreater(const Rational& x) const;
  // Index of `v` in the support, or -1.
  int IndexOf(const Rational& v) const;
  Rational Mean() const;

 private:
  std::vector<Rational> support_;
  std::vector<Rational> probs_;
};

struct CostAtom {
  std::vector<Rational> costs;
  Rational prob;
};

class CostModel {
 public:
  CostModel() = default;
  CostModel(int m, std::vector<CostAtom> atoms);
  static CostModel Zero(int m);

  int size() const { return static_cast<int>(atoms_.size()); }
  int num_items() const { return m_; }
  const CostAtom& atom(int c) const { return atoms_[c]; }
  const Rational& cost(int c, int j) const { return atoms_[c].costs[j]; }
  const Rational& prob(int c) const { return atoms_[c].prob; }
  const std::vector<CostAtom>& atoms() const { return atoms_; }

 private:
  int m_ = 0;
  std::vector<CostAtom> atoms_;
};

enum class FamilyKind { kExplicit, kUniform, kPartition, kBases };

std::string FamilyKindName(FamilyKind kind);

// A downward-closed family of feasible item sets over a ground set of size m.
class FeasibilityFamily {
 public:
  FeasibilityFamily() = default;

  static FeasibilityFamily Additive(int m);
  static FeasibilityFamily Uniform(int m, int rank);
  // `parts` must partition {0..m-1}; each part j may hold capacities[j] items.
  static FeasibilityFamily Partition(int m, std::vector<ItemSet> parts,
                                     std::vector<int> capacities);
  // Downward closure of the given sets.
  static FeasibilityFamily FromBases(int m, std::vector<ItemSet> bases);
  // Members listed explicitly; the list must be downward closed.
  static FeasibilityFamily Explicit(int m, std::vector<ItemSet> members);
  // Any membership table of size 2^m; validated for downward closure.
  static FeasibilityFamily FromTable(int m, std::vector<bool> table);

  FamilyKind kind() const { return kind_; }
  int ground_size() const { return m_; }
  bool Contains(ItemSet s) const { return member_[s]; }
  bool IsAdditive() const;
  // Exhaustive check of the exchange property.
  bool IsMatroid() const;
  int Rank(ItemSet s) const;
  std::vector<ItemSet> Members() const;
  std::vector<ItemSet> MaximalMembers() const;

  int uniform_rank() const { return rank_; }
  const std::vector<ItemSet>& parts() const { return parts_; }
  const std::vector<int>& capacities() const { return capacities_; }
  const std::vector<ItemSet>& bases() const { return bases_; }

 private:
  void CheckDownwardClosed() const;

  FamilyKind kind_ = FamilyKind::kExplicit;
  int m_ = 0;
  std::vector<bool> member_;
  int rank_ = 0;
  std::vector<ItemSet> parts_;
  std::vector<int> capacities_;
  std::vector<ItemSet> bases_;
};

// Enumerated type space of one buyer: all combinations of per-item support
// indices, in mixed-radix order with item 0 varying fastest.
class TypeSpace {
 public:
  TypeSpace() = default;
  explicit TypeSpace(const std::vector<DiscreteDist>& dists);

  int size() const { return static_cast<int>(probs_.size()); }
  int num_items() const { return static_cast<int>(radix_.size()); }
  const std::vector<Rational>& values(int k) const { return values_[k]; }
  const Rational& prob(int k) const { return probs_[k]; }
  int digit(int k, int j) const { return (k / stride_[j]) % radix_[j]; }
  // Type index obtained from k by moving item j to support index d.
  int WithDigit(int k, int j, int d) const {
    return k + (d - digit(k, j)) * stride_[j];
  }

 private:
  std::vector<int> radix_;
  std::vector<int> stride_;
  std::vector<std::vector<Rational>> values_;
  std::vector<Rational> probs_;
};

class Instance {
 public:
  Instance() = default;
  Instance(int n, int m, std::vector<std::vector<DiscreteDist>> dists,
           CostModel costs, std::vector<FeasibilityFamily> families);

  int num_buyers() const { return n_; }
  int num_items() const { return m_; }
  const DiscreteDist& dist(int i, int j) const { return dists_[i][j]; }
  const std::vector<DiscreteDist>& dists(int i) const { return dists_[i]; }
  const CostModel& costs() const { return costs_; }
  const FeasibilityFamily& family(int i) const { return families_[i]; }
  // Throws SizeGuardExceeded when the type space of buyer i is too large.
  const TypeSpace& types(int i) const;
  bool HasTypeSpaces() const { return types_built_; }
  long TypeCount(int i) const;
  Rational MaxSupportValue() const;
  bool AllAdditive() const;
  bool AllMatroids() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<DiscreteDist>> dists_;
  CostModel costs_;
  std::vector<FeasibilityFamily> families_;
  std::vector<TypeSpace> types_;
  bool types_built_ = false;
};

// Per (buyer, item, cost atom) thresholds; zero by default.
class ThresholdMap {
 public:
  ThresholdMap() = default;
  ThresholdMap(int n, int m, int num_costs);
  static ThresholdMap Zero(const Instance& inst);

  Rational& at(int i, int j, int c) { return data_[(i * m_ + j) * c_ + c]; }
  const Rational& at(int i, int j, int c) const {
    return data_[(i * m_ + j) * c_ + c];
  }

 private:
  int m_ = 0;
  int c_ = 0;
  std::vector<Rational> data_;
};

// max(beta_ij(c), c_j).
Rational EffectivePrice(const Instance& inst, const ThresholdMap& beta, int i,
                        int j, int c);

enum class TieBreak {
  kSmallestMask,
  kLargerThenSmallestMask,
};

struct BundleChoice {
  Rational value;
  ItemSet set = 0;
};

// Maximum of sum_{j in S} weights[j] over feasible S contained in `allowed`.
BundleChoice BestBundle(const FeasibilityFamily& family,
                        const std::vector<Rational>& weights, ItemSet allowed,
                        TieBreak tie = TieBreak::kSmallestMask);

// v_i(t, S).
Rational Value(const Instance& inst, int i, const std::vector<Rational>& t,
               ItemSet s);

// E_c[(t_ij - max(beta_ij(c), c_j))^+].
Rational VbarSingle(const Instance& inst, int i, int j, const Rational& t_ij,
                    const ThresholdMap& beta);

// E_c[max_{S in F_i, S within p} sum_{j in S} (t_j - max(beta_ij(c), c_j))].
Rational Vbar(const Instance& inst, int i, const std::vector<Rational>& t,
              ItemSet p, const ThresholdMap& beta);

// Utility-maximizing bundle among items of `p` at the given item prices.
BundleChoice Stage2Utility(const Instance& inst, int i,
                           const std::vector<Rational>& t,
                           const std::vector<Rational>& prices, ItemSet p,
                           TieBreak tie = TieBreak::kSmallestMask);

// Additive prices supporting the stage-2 utility at S = p: the surplus of each
// item of the chosen bundle, zero elsewhere.
std::vector<Rational> SupportingPrices(const Instance& inst, int i,
                                       const std::vector<Rational>& t,
                                       const std::vector<Rational>& prices,
                                       ItemSet p);

// {j : VbarSingle(t_j) <= tau}.
ItemSet CoreItems(const Instance& inst, int i, const std::vector<Rational>& t,
                  const ThresholdMap& beta, const Rational& tau);

// Vbar(t, CoreItems(t) intersect s).
Rational Mu(const Instance& inst, int i, const std::vector<Rational>& t,
            ItemSet s, const ThresholdMap& beta, const Rational& tau);

inline int PairBit(int m, int i, int j) { return i * m + j; }
ItemSet BuyerBundle(PairSet a, int m, int i);
// True iff every item appears at most once and each buyer's bundle is in F_i.
bool IsFeasibleAllocation(const Instance& inst, PairSet a);
// All feasible pair sets, including the empty one, in increasing mask order.
std::vector<PairSet> EnumerateAllocations(const Instance& inst);

}  // namespace permitlab

#endif  // PERMITLAB_CORE_MODEL_H_
