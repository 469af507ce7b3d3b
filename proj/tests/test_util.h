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

#ifndef PERMITLAB_TESTS_TEST_UTIL_H_
#define PERMITLAB_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "permitlab/core_model.h"
#include "permitlab/rational.h"

namespace permitlab::testing {

inline Rational R(long p, long q = 1) { return Frac(p, q); }

inline CostModel Costs(int m, std::vector<std::pair<std::vector<Rational>, Rational>> atoms) {
  std::vector<CostAtom> out;
  for (auto& [v, p] : atoms) out.push_back({v, p});
  return CostModel(m, out);
}

// One buyer, one item, values uniform on {1, 2}, cost 0 or 1 each with probability 1/2.
inline Instance ThreeQuarter() {
  return Instance(1, 1, {{DiscreteDist::Uniform({R(1), R(2)})}},
                  Costs(1, {{{R(0)}, R(1, 2)}, {{R(1)}, R(1, 2)}}),
                  {FeasibilityFamily::Additive(1)});
}

inline Instance SingleItem(const DiscreteDist& d, std::vector<std::pair<Rational, Rational>> costs) {
  std::vector<std::pair<std::vector<Rational>, Rational>> atoms;
  for (auto& [c, p] : costs) atoms.push_back({{c}, p});
  return Instance(1, 1, {{d}}, Costs(1, atoms), {FeasibilityFamily::Additive(1)});
}

// Brute-force pieces written against the definitions only.

inline Rational BruteBest(const FeasibilityFamily& f, const std::vector<Rational>& w, ItemSet allowed) {
  Rational best = 0;
  const int m = f.ground_size();
  for (ItemSet s = 0; s < (ItemSet{1} << m); ++s) {
    if ((s & ~allowed) != 0 || !f.Contains(s)) continue;
    Rational sum = 0;
    for (int j = 0; j < m; ++j) {
      if ((s >> j) & 1u) sum += w[j];
    }
    best = Max(best, sum);
  }
  return best;
}

inline Rational BruteVbar(const Instance& inst, int i, const std::vector<Rational>& t, ItemSet p,
                          const ThresholdMap& beta) {
  Rational total = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    std::vector<Rational> w(inst.num_items());
    for (int j = 0; j < inst.num_items(); ++j) {
      w[j] = t[j] - Max(beta.at(i, j, c), inst.costs().cost(c, j));
    }
    total += inst.costs().prob(c) * BruteBest(inst.family(i), w, p);
  }
  return total;
}

inline Rational BrutePostedPrice(const DiscreteDist& d, const Rational& cost) {
  Rational best = 0;
  for (int k = 0; k < d.size(); ++k) {
    Rational tail = 0;
    for (int s = k; s < d.size(); ++s) tail += d.prob(s);
    best = Max(best, (d.value(k) - cost) * tail);
  }
  return best;
}

// Ironed virtual values from the upper concave hull of (q, q * price) points.
inline std::vector<Rational> BruteIroned(const DiscreteDist& d) {
  const int k = d.size();
  std::vector<Rational> q(k + 1), rev(k + 1);
  // Point s (s = 0..k) sells to the top s values.
  for (int s = 1; s <= k; ++s) {
    q[s] = q[s - 1] + d.prob(k - s);
    rev[s] = q[s] * d.value(k - s);
  }
  std::vector<Rational> out(k);
  for (int s = 1; s <= k; ++s) {
    // Hull slope over (q[s-1], q[s]): min over a < s of max over b >= s of chord slope.
    Rational slope;
    bool first = true;
    for (int a = 0; a < s; ++a) {
      Rational best;
      bool inner = true;
      for (int b = s; b <= k; ++b) {
        Rational chord = (rev[b] - rev[a]) / (q[b] - q[a]);
        if (inner || chord > best) best = chord;
        inner = false;
      }
      if (first || best < slope) slope = best;
      first = false;
    }
    out[k - s] = slope;
  }
  return out;
}

// Hand-rolled random instance generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  DiscreteDist Dist(int max_support) {
    const int size = Int(1, max_support);
    std::vector<int> picks;
    while (static_cast<int>(picks.size()) < size) {
      int v = Int(1, 8);
      if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
    }
    std::sort(picks.begin(), picks.end());
    std::vector<Rational> support, probs;
    long total = 0;
    std::vector<int> w;
    for (int v : picks) {
      support.push_back(R(v, 2));
      w.push_back(Int(1, 4));
      total += w.back();
    }
    for (int x : w) probs.push_back(R(x, total));
    return DiscreteDist(support, probs);
  }

  CostModel CostAtoms(int m, int max_atoms) {
    const int count = Int(1, max_atoms);
    std::vector<std::vector<Rational>> seen;
    std::vector<int> w;
    for (int a = 0; a < count; ++a) {
      std::vector<Rational> v;
      for (int j = 0; j < m; ++j) v.push_back(R(Int(0, 5), 2));
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
      seen.push_back(v);
      w.push_back(Int(1, 3));
    }
    long total = 0;
    for (int x : w) total += x;
    std::vector<CostAtom> atoms;
    for (size_t a = 0; a < seen.size(); ++a) atoms.push_back({seen[a], R(w[a], total)});
    return CostModel(m, atoms);
  }

  FeasibilityFamily Family(int m, bool matroid_only) {
    const int pick = Int(0, 2);
    if (pick == 0) return FeasibilityFamily::Additive(m);
    if (pick == 1 || matroid_only) return FeasibilityFamily::Uniform(m, Int(1, m));
    std::vector<ItemSet> bases;
    for (int b = Int(1, 2); b > 0; --b) bases.push_back(static_cast<ItemSet>(Int(1, (1 << m) - 1)));
    return FeasibilityFamily::FromBases(m, bases);
  }

  Instance Make(int n, int m, int max_support, int max_atoms, bool matroid_only = false) {
    std::vector<std::vector<DiscreteDist>> dists(n);
    std::vector<FeasibilityFamily> fams;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) dists[i].push_back(Dist(max_support));
      fams.push_back(Family(m, matroid_only));
    }
    return Instance(n, m, dists, CostAtoms(m, max_atoms), fams);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace permitlab::testing

#endif  // PERMITLAB_TESTS_TEST_UTIL_H_
