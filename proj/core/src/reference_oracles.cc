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

#include "permitlab/reference_oracles.h"

#include <algorithm>
#include <map>
#include <vector>

#include "permitlab/errors.h"

namespace permitlab {

namespace {

constexpr double kGuard = 1e6;

struct Types {
  std::vector<std::vector<Rational>> values;
  std::vector<Rational> probs;
};

// All type vectors of buyer i, last item varying fastest.
Types EnumerateTypes(const Instance& inst, int i) {
  Types out;
  out.values.push_back({});
  out.probs.push_back(1);
  for (int j = 0; j < inst.num_items(); ++j) {
    const DiscreteDist& d = inst.dist(i, j);
    Types next;
    for (size_t k = 0; k < out.values.size(); ++k) {
      for (int s = 0; s < d.size(); ++s) {
        auto v = out.values[k];
        v.push_back(d.value(s));
        next.values.push_back(std::move(v));
        next.probs.push_back(out.probs[k] * d.prob(s));
      }
    }
    out = std::move(next);
    if (out.values.size() > kGuard) throw SizeGuardExceeded("type space too large for the oracle");
  }
  return out;
}

bool Prefer(ItemSet s, const Rational& value, ItemSet best, const Rational& best_value) {
  if (value != best_value) return value > best_value;
  int a = __builtin_popcount(s);
  int b = __builtin_popcount(best);
  return a > b || (a == b && s < best);
}

// max over members S of P of sum_{j in S} w_j, ties to larger then smaller mask.
std::pair<ItemSet, Rational> Best(const FeasibilityFamily& f, const std::vector<Rational>& w,
                                  ItemSet p) {
  ItemSet best = 0;
  Rational best_value = 0;
  for (ItemSet s = p;; s = (s - 1) & p) {
    if (s != 0 && f.Contains(s)) {
      Rational v = 0;
      for (size_t j = 0; j < w.size(); ++j) {
        if ((s >> j) & 1) v += w[j];
      }
      if (Prefer(s, v, best, best_value)) {
        best = s;
        best_value = v;
      }
    }
    if (s == 0) break;
  }
  return {best, best_value};
}

// E_c[max_{S subset P} sum_{j in S} (t_j - max(beta_j(c), c_j))], beta[j][c].
Rational LiteralVbar(const Instance& inst, int i, const std::vector<Rational>& t,
                     ItemSet p, const std::vector<std::vector<Rational>>& beta) {
  const int m = inst.num_items();
  Rational total = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    std::vector<Rational> w(m);
    for (int j = 0; j < m; ++j) {
      Rational price = inst.costs().cost(c, j);
      if (!beta.empty() && beta[j][c] > price) price = beta[j][c];
      w[j] = t[j] - price;
    }
    total += inst.costs().prob(c) * Best(inst.family(i), w, p).second;
  }
  return total;
}

void Add(std::vector<Rational>* list, const Rational& v) {
  if (std::find(list->begin(), list->end(), v) == list->end()) list->push_back(v);
}

bool Advance(std::vector<int>* idx, const std::vector<int>& radix) {
  size_t x = 0;
  while (x < idx->size() && ++(*idx)[x] == radix[x]) (*idx)[x++] = 0;
  return x < idx->size();
}

double Product(const std::vector<int>& radix) {
  double p = 1;
  for (int r : radix) p *= r;
  return p;
}

std::map<Rational, Rational> GrandBundleDistribution(const Instance& inst) {
  const int m = inst.num_items();
  std::map<Rational, Rational> dist;
  if (inst.family(0).IsAdditive()) {
    dist[Rational(0)] = 1;
    for (int j = 0; j < m; ++j) {
      std::map<Rational, Rational> next;
      const DiscreteDist& d = inst.dist(0, j);
      for (int s = 0; s < d.size(); ++s) {
        Rational v = 0;
        for (int c = 0; c < inst.costs().size(); ++c) {
          v += inst.costs().prob(c) * PositivePart(d.value(s) - inst.costs().cost(c, j));
        }
        for (const auto& [x, p] : dist) next[x + v] += p * d.prob(s);
      }
      dist.swap(next);
    }
    return dist;
  }
  Types types = EnumerateTypes(inst, 0);
  for (size_t k = 0; k < types.values.size(); ++k) {
    dist[LiteralVbar(inst, 0, types.values[k], FullSet(m), {})] += types.probs[k];
  }
  return dist;
}

OracleResult BruteIp(const Instance& inst) {
  const int m = inst.num_items();
  const Rational high = inst.MaxSupportValue() + 1;
  std::vector<std::vector<Rational>> grid(m);
  for (int j = 0; j < m; ++j) {
    Add(&grid[j], Rational(0));
    for (const Rational& v : inst.dist(0, j).support()) Add(&grid[j], v);
    for (int c = 0; c < inst.costs().size(); ++c) Add(&grid[j], inst.costs().cost(c, j));
    Add(&grid[j], high);
  }
  OracleResult out;
  out.quantity = "IP";
  out.value = 0;
  if (inst.family(0).IsAdditive()) {
    out.method = "per-item price enumeration (additive)";
    for (int c = 0; c < inst.costs().size(); ++c) {
      for (int j = 0; j < m; ++j) {
        const DiscreteDist& d = inst.dist(0, j);
        Rational best = 0;
        bool first = true;
        for (const Rational& p : grid[j]) {
          Rational v = 0;
          for (int s = 0; s < d.size(); ++s) {
            if (d.value(s) >= p) v += d.prob(s) * (p - inst.costs().cost(c, j));
          }
          if (first || v > best) best = v;
          first = false;
          ++out.enumeration_size;
        }
        out.value += inst.costs().prob(c) * best;
      }
    }
    return out;
  }
  out.method = "product price grid per cost atom";
  std::vector<int> radix;
  for (const auto& g : grid) radix.push_back(g.size());
  Types types = EnumerateTypes(inst, 0);
  if (Product(radix) * inst.costs().size() > kGuard) {
    throw SizeGuardExceeded("IP price grid too large for the oracle");
  }
  for (int c = 0; c < inst.costs().size(); ++c) {
    std::vector<int> idx(m, 0);
    Rational best = 0;
    bool first = true;
    do {
      Rational total = 0;
      std::vector<Rational> w(m);
      for (size_t k = 0; k < types.values.size(); ++k) {
        for (int j = 0; j < m; ++j) w[j] = types.values[k][j] - grid[j][idx[j]];
        ItemSet b = Best(inst.family(0), w, FullSet(m)).first;
        for (int j = 0; j < m; ++j) {
          if ((b >> j) & 1) total += types.probs[k] * (grid[j][idx[j]] - inst.costs().cost(c, j));
        }
      }
      if (first || total > best) best = total;
      first = false;
      ++out.enumeration_size;
    } while (Advance(&idx, radix));
    out.value += inst.costs().prob(c) * best;
  }
  return out;
}

OracleResult BrutePp(const Instance& inst) {
  const int m = inst.num_items();
  const ItemSet full = FullSet(m);
  Types types = EnumerateTypes(inst, 0);
  std::vector<std::vector<Rational>> v(types.values.size(), std::vector<Rational>(full + 1));
  for (size_t k = 0; k < types.values.size(); ++k) {
    for (ItemSet p = 0; p <= full; ++p) v[k][p] = LiteralVbar(inst, 0, types.values[k], p, {});
  }
  std::vector<std::vector<Rational>> grid(m, std::vector<Rational>{Rational(0)});
  for (size_t k = 0; k < v.size(); ++k) {
    for (int j = 0; j < m; ++j) {
      for (ItemSet s = 0; s <= full; ++s) {
        if (!((s >> j) & 1)) Add(&grid[j], v[k][s | Singleton(j)] - v[k][s]);
      }
    }
  }
  std::vector<int> radix;
  for (const auto& g : grid) radix.push_back(g.size());
  if (Product(radix) > kGuard) throw SizeGuardExceeded("PP price grid too large for the oracle");
  OracleResult out;
  out.quantity = "PP";
  out.method = "product permit price grid";
  std::vector<int> idx(m, 0);
  bool first = true;
  do {
    Rational total = 0;
    for (size_t k = 0; k < v.size(); ++k) {
      ItemSet best = 0;
      Rational best_u = 0;
      Rational best_fee = 0;
      for (ItemSet p = 1; p <= full; ++p) {
        Rational fee = 0;
        for (int j = 0; j < m; ++j) {
          if ((p >> j) & 1) fee += grid[j][idx[j]];
        }
        if (Prefer(p, v[k][p] - fee, best, best_u)) {
          best = p;
          best_u = v[k][p] - fee;
          best_fee = fee;
        }
      }
      total += types.probs[k] * best_fee;
    }
    if (first || total > out.value) out.value = total;
    first = false;
    ++out.enumeration_size;
  } while (Advance(&idx, radix));
  return out;
}

OracleResult BrutePb(const Instance& inst) {
  auto dist = GrandBundleDistribution(inst);
  OracleResult out;
  out.quantity = "PB";
  out.method = "bundle price grid";
  out.value = 0;
  for (const auto& [delta, unused] : dist) {
    (void)unused;
    Rational mass = 0;
    for (const auto& [x, p] : dist) {
      if (x >= delta) mass += p;
    }
    out.value = Max(out.value, delta * mass);
    ++out.enumeration_size;
  }
  return out;
}

// Ironed virtual values by pooling adjacent violators, weights = masses.
std::vector<Rational> PoolIroned(const DiscreteDist& d) {
  const int k = d.size();
  std::vector<Rational> phi(k);
  for (int s = 0; s < k; ++s) {
    Rational above = 0;
    for (int r = s + 1; r < k; ++r) above += d.prob(r);
    phi[s] = s + 1 < k ? d.value(s) - (d.value(s + 1) - d.value(s)) * above / d.prob(s)
                       : d.value(s);
  }
  struct Block {
    Rational mean;
    Rational weight;
    int count;
  };
  std::vector<Block> blocks;
  for (int s = 0; s < k; ++s) {
    blocks.push_back({phi[s], d.prob(s), 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      Rational w = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
    }
  }
  std::vector<Rational> out;
  for (const Block& b : blocks) {
    for (int x = 0; x < b.count; ++x) out.push_back(b.mean);
  }
  return out;
}

}  // namespace

OracleResult BrutePostedPriceOpt(const Instance& inst, MechanismKind kind) {
  if (inst.num_buyers() != 1) throw InvalidInput("the posted price oracle needs one buyer");
  switch (kind) {
    case MechanismKind::kIP:
      return BruteIp(inst);
    case MechanismKind::kPP:
      return BrutePp(inst);
    case MechanismKind::kPB:
      return BrutePb(inst);
    default:
      throw InvalidInput("the posted price oracle covers IP, PP and PB");
  }
}

Instance BundleGapInstance(int m, int K) {
  if (m < 2 || K < 1) throw InvalidInput("BundleGapInstance needs m >= 2 and K >= 1");
  std::vector<Rational> support;
  std::vector<Rational> probs;
  for (int k = 0; k <= K; ++k) {
    support.push_back(Rational(mpz_class(1) << k));
    probs.push_back(k < K ? Rational(1, mpz_class(2) << k) : Rational(1, mpz_class(1) << K));
  }
  DiscreteDist d(support, probs);
  const Rational high = support.back() * m + 1;
  std::vector<CostAtom> atoms;
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> cost(m, high);
    cost[j] = 0;
    atoms.push_back({cost, Rational(1, m)});
  }
  return Instance(1, m, {std::vector<DiscreteDist>(m, d)}, CostModel(m, atoms),
                  {FeasibilityFamily::Additive(m)});
}

BenchmarkRecompute DirectBenchmarkRecompute(const Instance& inst,
                                            const DirectMechanism& mech,
                                            bool zero_thresholds) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  std::vector<Types> types;
  for (int i = 0; i < n; ++i) types.push_back(EnumerateTypes(inst, i));
  // Profiles with buyer n-1 varying fastest in this enumeration; map them to
  // the mechanism's profile order (buyer 0 fastest).
  std::vector<long> stride(n, 1);
  for (int i = 1; i < n; ++i) stride[i] = stride[i - 1] * types[i - 1].values.size();
  // Interim allocation pi[i][k][c][j].
  std::vector<std::vector<std::vector<std::vector<Rational>>>> pi(n);
  for (int i = 0; i < n; ++i) {
    pi[i].assign(types[i].values.size(),
                 std::vector<std::vector<Rational>>(nc, std::vector<Rational>(m)));
  }
  long profiles = 1;
  for (int i = 0; i < n; ++i) profiles *= types[i].values.size();
  // Own type index k (last item fastest) to the library's index (item 0 fastest).
  std::vector<std::vector<long>> to_lib(n);
  for (int i = 0; i < n; ++i) {
    for (size_t k = 0; k < types[i].values.size(); ++k) {
      long lib = 0;
      long mult = 1;
      for (int j = 0; j < m; ++j) {
        lib += inst.dist(i, j).IndexOf(types[i].values[k][j]) * mult;
        mult *= inst.dist(i, j).size();
      }
      to_lib[i].push_back(lib);
    }
  }
  std::vector<size_t> own(n, 0);
  for (long p = 0; p < profiles; ++p) {
    long rest = p;
    Rational prob = 1;
    long lib_profile = 0;
    for (int i = 0; i < n; ++i) {
      own[i] = rest % types[i].values.size();
      rest /= types[i].values.size();
      prob *= types[i].probs[own[i]];
      lib_profile += to_lib[i][own[i]] * stride[i];
    }
    for (int c = 0; c < nc; ++c) {
      for (const auto& [a, w] : mech.lottery[c][lib_profile]) {
        PairSet alloc = mech.allocations[a];
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < m; ++j) {
            if ((alloc >> (i * m + j)) & 1) {
              pi[i][own[i]][c][j] += w * prob / types[i].probs[own[i]];
            }
          }
        }
      }
    }
  }
  BenchmarkRecompute out;
  out.most_surplus = {"most_surplus", Rational(0), profiles * nc, "literal triple sum"};
  out.prophet = {"prophet", Rational(0), n * m * nc, "literal triple sum"};
  out.less_surplus = {"less_surplus", Rational(0), 0, "literal triple sum"};
  for (int i = 0; i < n; ++i) {
    // beta[j][c] from q = half the ex-ante allocation probability.
    std::vector<std::vector<Rational>> beta(m, std::vector<Rational>(nc));
    for (int j = 0; j < m; ++j) {
      const DiscreteDist& d = inst.dist(i, j);
      for (int c = 0; c < nc; ++c) {
        Rational q = 0;
        for (size_t k = 0; k < types[i].values.size(); ++k) {
          q += types[i].probs[k] * pi[i][k][c][j];
        }
        q /= 2;
        const Rational& cost = inst.costs().cost(c, j);
        Rational at_cost = 0;
        for (int s = 0; s < d.size(); ++s) {
          if (d.value(s) >= cost) at_cost += d.prob(s);
        }
        Rational price = cost;
        if (at_cost > q && !zero_thresholds) {
          if (q == 0) {
            beta[j][c] = d.value(d.size() - 1);
          } else {
            Rational tail = 0;
            for (int s = d.size() - 1; s >= 0; --s) {
              tail += d.prob(s);
              if (tail >= q) {
                beta[j][c] = d.value(s);
                break;
              }
            }
          }
          price = Max(beta[j][c], cost);
        }
        out.prophet.value += 2 * inst.costs().prob(c) * q * (price - cost);
      }
    }
    std::vector<std::vector<Rational>> ironed;
    for (int j = 0; j < m; ++j) ironed.push_back(PoolIroned(inst.dist(i, j)));
    for (size_t k = 0; k < types[i].values.size(); ++k) {
      const auto& t = types[i].values[k];
      int fav = 0;
      Rational fav_value;
      for (int j = 0; j < m; ++j) {
        // Single-item surplus, feasibility ignored.
        Rational v = 0;
        for (int c = 0; c < nc; ++c) {
          v += inst.costs().prob(c) *
               PositivePart(t[j] - Max(beta[j][c], inst.costs().cost(c, j)));
        }
        if (j == 0 || v > fav_value) {
          fav = j;
          fav_value = v;
        }
      }
      const Rational& phi = ironed[fav][inst.dist(i, fav).IndexOf(t[fav])];
      for (int c = 0; c < nc; ++c) {
        out.most_surplus.value += types[i].probs[k] * inst.costs().prob(c) * pi[i][k][c][fav] *
                                  (phi - inst.costs().cost(c, fav));
      }
      out.less_surplus.value +=
          types[i].probs[k] * LiteralVbar(inst, i, t, FullSet(m) & ~Singleton(fav), beta);
      ++out.less_surplus.enumeration_size;
    }
  }
  return out;
}

}  // namespace permitlab
