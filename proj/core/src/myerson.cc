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

#include "permitlab/myerson.h"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "permitlab/errors.h"

namespace permitlab {
namespace {

struct Point {
  Rational q;
  Rational r;
};

// Cross product sign of (b - a) x (c - a).
int Turn(const Point& a, const Point& b, const Point& c) {
  Rational v = (b.q - a.q) * (c.r - a.r) - (b.r - a.r) * (c.q - a.q);
  return sgn(v);
}

}  // namespace

VirtualValueTable VirtualValues(const DiscreteDist& dist) {
  const int k = dist.size();
  VirtualValueTable table;
  table.raw.resize(k);
  table.ironed.resize(k);
  // q[s] = Pr[T >= value(s)], q[k] = 0.
  std::vector<Rational> q(k + 1);
  q[k] = 0;
  for (int s = k - 1; s >= 0; --s) q[s] = q[s + 1] + dist.prob(s);
  for (int s = 0; s < k; ++s) {
    if (s == k - 1) {
      table.raw[s] = dist.value(s);
    } else {
      table.raw[s] = dist.value(s) - (dist.value(s + 1) - dist.value(s)) *
                                         q[s + 1] / dist.prob(s);
    }
  }
  // Points sorted by increasing quantile: (0,0), then values from the top.
  std::vector<Point> pts;
  pts.push_back({Rational(0), Rational(0)});
  for (int s = k - 1; s >= 0; --s) pts.push_back({q[s], q[s] * dist.value(s)});
  std::vector<int> hull;
  for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
    while (hull.size() >= 2 &&
           Turn(pts[hull[hull.size() - 2]], pts[hull.back()], pts[p]) >= 0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  // Support index s covers the quantile interval between points k-1-s and
  // k-s in `pts`.
  size_t seg = 0;
  for (int p = 1; p < static_cast<int>(pts.size()); ++p) {
    while (hull[seg + 1] < p) ++seg;
    const Point& a = pts[hull[seg]];
    const Point& b = pts[hull[seg + 1]];
    int s = k - p;
    table.ironed[s] = (b.r - a.r) / (b.q - a.q);
  }
  return table;
}

std::vector<std::vector<std::vector<Rational>>> IronedTables(
    const Instance& inst) {
  std::vector<std::vector<std::vector<Rational>>> out(inst.num_buyers());
  for (int i = 0; i < inst.num_buyers(); ++i) {
    for (int j = 0; j < inst.num_items(); ++j) {
      out[i].push_back(VirtualValues(inst.dist(i, j)).ironed);
    }
  }
  return out;
}

Rational BestPostedPriceProfit(const DiscreteDist& dist, const Rational& cost) {
  Rational best = 0;
  for (int s = 0; s < dist.size(); ++s) {
    best = Max(best, (dist.value(s) - cost) * dist.ProbAtLeast(dist.value(s)));
  }
  return best;
}

namespace {

// Distribution of (ironed - cost)^+ as value -> probability.
std::map<Rational, Rational> SurplusDist(const DiscreteDist& dist,
                                         const std::vector<Rational>& ironed,
                                         const Rational& cost) {
  std::map<Rational, Rational> out;
  for (int s = 0; s < dist.size(); ++s) {
    out[PositivePart(ironed[s] - cost)] += dist.prob(s);
  }
  return out;
}

void RequireSingleBuyer(const Instance& inst) {
  if (inst.num_buyers() != 1) {
    throw InvalidInput("single-buyer routine called with " +
                       std::to_string(inst.num_buyers()) + " buyers");
  }
}

}  // namespace

Rational CopiesOptUnitDemand(const Instance& inst, int c) {
  RequireSingleBuyer(inst);
  const int m = inst.num_items();
  std::vector<std::map<Rational, Rational>> parts;
  std::map<Rational, bool> values;
  for (int j = 0; j < m; ++j) {
    if (!inst.family(0).Contains(Singleton(j))) continue;
    parts.push_back(SurplusDist(inst.dist(0, j),
                                VirtualValues(inst.dist(0, j)).ironed,
                                inst.costs().cost(c, j)));
    for (const auto& [v, p] : parts.back()) values[v] = true;
  }
  Rational expectation = 0;
  Rational prev_cdf = 0;
  for (const auto& [v, unused] : values) {
    Rational cdf = 1;
    for (const auto& part : parts) {
      Rational below = 0;
      for (const auto& [x, p] : part) {
        if (x > v) break;
        below += p;
      }
      cdf *= below;
    }
    expectation += v * (cdf - prev_cdf);
    prev_cdf = cdf;
  }
  return expectation;
}

Rational CopiesOptAdditive(const Instance& inst, int c) {
  RequireSingleBuyer(inst);
  const int m = inst.num_items();
  std::vector<std::vector<Rational>> ironed;
  for (int j = 0; j < m; ++j) ironed.push_back(VirtualValues(inst.dist(0, j)).ironed);
  const FeasibilityFamily& family = inst.family(0);
  if (family.IsAdditive()) {
    Rational total = 0;
    for (int j = 0; j < m; ++j) {
      for (const auto& [v, p] :
           SurplusDist(inst.dist(0, j), ironed[j], inst.costs().cost(c, j))) {
        total += v * p;
      }
    }
    return total;
  }
  const TypeSpace& types = inst.types(0);
  Rational total = 0;
  std::vector<Rational> w(m);
  for (int k = 0; k < types.size(); ++k) {
    for (int j = 0; j < m; ++j) {
      w[j] = PositivePart(ironed[j][types.digit(k, j)] - inst.costs().cost(c, j));
    }
    total += types.prob(k) * BestBundle(family, w, FullSet(m)).value;
  }
  return total;
}

Rational CopiesOptUnitDemandMulti(const Instance& inst, int c) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  if (n * m > 12) {
    throw SizeGuardExceeded("unit-demand copies routine needs n*m <= 12, got " +
                            std::to_string(n * m));
  }
  // Surplus distributions of every pair; pairs whose singleton is infeasible
  // never contribute.
  std::vector<std::vector<std::pair<Rational, Rational>>> pair_dist(n * m);
  long combos = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      auto& pd = pair_dist[i * m + j];
      if (!inst.family(i).Contains(Singleton(j))) {
        pd.push_back({Rational(0), Rational(1)});
        continue;
      }
      auto dist = SurplusDist(inst.dist(i, j),
                              VirtualValues(inst.dist(i, j)).ironed,
                              inst.costs().cost(c, j));
      for (const auto& e : dist) pd.push_back(e);
      combos *= static_cast<long>(pd.size());
      if (combos > 2000000) {
        throw SizeGuardExceeded("too many joint surplus profiles");
      }
    }
  }
  std::vector<Rational> w(n * m);
  std::vector<int> digit(n * m, 0);
  // best[i][used] = best matching value of buyers i.. given used items.
  std::vector<Rational> memo;
  std::vector<bool> known;
  const ItemSet full = FullSet(m);
  std::function<Rational(int, ItemSet)> best = [&](int i, ItemSet used) {
    if (i == n) return Rational(0);
    size_t key = static_cast<size_t>(i) * (full + 1) + used;
    if (known[key]) return memo[key];
    Rational value = best(i + 1, used);
    for (int j = 0; j < m; ++j) {
      if (HasItem(used, j) || w[i * m + j] <= 0) continue;
      value = Max(value, w[i * m + j] + best(i + 1, used | Singleton(j)));
    }
    known[key] = true;
    memo[key] = value;
    return value;
  };
  Rational total = 0;
  const size_t states = static_cast<size_t>(n) * (full + 1);
  while (true) {
    Rational p = 1;
    for (int e = 0; e < n * m; ++e) {
      w[e] = pair_dist[e][digit[e]].first;
      p *= pair_dist[e][digit[e]].second;
    }
    memo.assign(states, Rational(0));
    known.assign(states, false);
    total += p * best(0, 0);
    int e = 0;
    while (e < n * m && ++digit[e] == static_cast<int>(pair_dist[e].size())) {
      digit[e] = 0;
      ++e;
    }
    if (e == n * m) break;
  }
  return total;
}

}  // namespace permitlab
