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

#include "permitlab/benchmark.h"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "permitlab/errors.h"
#include "permitlab/myerson.h"

namespace permitlab {

Threshold ThresholdFor(const DiscreteDist& dist, const Rational& q,
                       const Rational& cost) {
  Threshold th;
  if (dist.ProbAtLeast(cost) <= q) {
    th.beta = 0;
    th.rho = 1;
    th.above_cost = false;
    return th;
  }
  th.above_cost = true;
  if (q <= 0) {
    th.beta = dist.support().back();
    th.rho = 0;
    return th;
  }
  int s = dist.size() - 1;
  while (dist.ProbAtLeast(dist.value(s)) < q) --s;
  th.beta = dist.value(s);
  th.rho = (q - dist.ProbGreater(th.beta)) / dist.prob(s);
  return th;
}

Rational SaleProbability(const DiscreteDist& dist, const Threshold& th,
                         const Rational& cost) {
  if (!th.above_cost) return dist.ProbAtLeast(cost);
  int s = dist.IndexOf(th.beta);
  Rational p = dist.ProbGreater(th.beta);
  if (s >= 0) p += th.rho * dist.prob(s);
  return p;
}

ExAnteProfile ExAnteFromProbabilities(const Instance& inst,
                                      const ThresholdMap& q) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  ExAnteProfile out;
  out.q = q;
  out.beta = ThresholdMap(n, m, nc);
  out.rho = ThresholdMap(n, m, nc);
  out.above_cost.assign(n, std::vector<std::vector<bool>>(m, std::vector<bool>(nc)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < nc; ++c) {
        if (q.at(i, j, c) < 0 || q.at(i, j, c) > 1) {
          throw InvalidInput("ex-ante probability outside [0,1]");
        }
        Threshold th = ThresholdFor(inst.dist(i, j), q.at(i, j, c),
                                    inst.costs().cost(c, j));
        out.beta.at(i, j, c) = th.beta;
        out.rho.at(i, j, c) = th.rho;
        out.above_cost[i][j][c] = th.above_cost;
      }
    }
  }
  return out;
}

namespace {

ThresholdMap HalfInterim(const Instance& inst, const DirectMechanism& mech) {
  InterimTable pi = InterimAllocation(inst, mech);
  const int nc = inst.costs().size();
  ThresholdMap q(inst.num_buyers(), inst.num_items(), nc);
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    for (int k = 0; k < types.size(); ++k) {
      for (int c = 0; c < nc; ++c) {
        for (int j = 0; j < inst.num_items(); ++j) {
          q.at(i, j, c) += types.prob(k) * pi[i][k][c][j] / 2;
        }
      }
    }
  }
  return q;
}

}  // namespace

ExAnteProfile ExAnteFromMechanism(const Instance& inst,
                                  const DirectMechanism& mech) {
  return ExAnteFromProbabilities(inst, HalfInterim(inst, mech));
}

ExAnteProfile ZeroThresholds(const Instance& inst, const DirectMechanism& mech) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  ExAnteProfile out;
  out.q = HalfInterim(inst, mech);
  out.beta = ThresholdMap(n, m, nc);
  out.rho = ThresholdMap(n, m, nc);
  out.above_cost.assign(n, std::vector<std::vector<bool>>(m, std::vector<bool>(nc)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < nc; ++c) out.rho.at(i, j, c) = 1;
    }
  }
  return out;
}

VbarTable VbarSingleTable(const Instance& inst, const ThresholdMap& beta) {
  VbarTable out(inst.num_buyers());
  for (int i = 0; i < inst.num_buyers(); ++i) {
    out[i].resize(inst.num_items());
    for (int j = 0; j < inst.num_items(); ++j) {
      for (const Rational& v : inst.dist(i, j).support()) {
        out[i][j].push_back(VbarSingle(inst, i, j, v, beta));
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> FavoriteLabels(const Instance& inst,
                                             const ThresholdMap& beta) {
  VbarTable vb = VbarSingleTable(inst, beta);
  std::vector<std::vector<int>> label(inst.num_buyers());
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    label[i].resize(types.size());
    for (int k = 0; k < types.size(); ++k) {
      int best = 0;
      for (int j = 1; j < inst.num_items(); ++j) {
        if (vb[i][j][types.digit(k, j)] > vb[i][best][types.digit(k, best)]) {
          best = j;
        }
      }
      label[i][k] = best;
    }
  }
  return label;
}

FlowSpec BuildFlow(const Instance& inst, const ThresholdMap& beta) {
  FlowSpec out;
  out.label = FavoriteLabels(inst, beta);
  auto ironed = IronedTables(inst);
  const int n = inst.num_buyers();
  out.flow.weight.resize(n);
  out.ironed_phi.resize(n);
  for (int i = 0; i < n; ++i) {
    const TypeSpace& types = inst.types(i);
    out.ironed_phi[i].resize(types.size());
    for (int k = 0; k < types.size(); ++k) {
      const int j = out.label[i][k];
      const int s = types.digit(k, j);
      Rational through = 0;
      for (int s2 = s; s2 < inst.dist(i, j).size(); ++s2) {
        through += types.prob(types.WithDigit(k, j, s2));
      }
      int to = -1;
      if (s > 0) {
        int below = types.WithDigit(k, j, s - 1);
        if (out.label[i][below] == j) to = below;
      }
      out.flow.weight[i][{k, to}] = through;
      out.ironed_phi[i][k] = types.values(k);
      out.ironed_phi[i][k][j] = ironed[i][j][s];
    }
  }
  FlowBalance balance = CheckFlowConservation(inst, out.flow);
  if (!balance.ok) {
    throw VerificationError("canonical flow not conserved at buyer " +
                            std::to_string(balance.buyer) + " type " +
                            std::to_string(balance.type));
  }
  return out;
}

BenchmarkReport EvaluateBenchmarkTerms(const Instance& inst,
                                       const DirectMechanism& mech,
                                       const ExAnteProfile& exante) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  BenchmarkReport out;
  out.profit = Profit(inst, mech);
  InterimTable pi = InterimAllocation(inst, mech);
  auto label = FavoriteLabels(inst, exante.beta);
  auto ironed = IronedTables(inst);
  out.most_surplus = 0;
  out.less_surplus = 0;
  out.prophet = 0;
  for (int i = 0; i < n; ++i) {
    const TypeSpace& types = inst.types(i);
    for (int k = 0; k < types.size(); ++k) {
      const int j = label[i][k];
      const Rational& phi = ironed[i][j][types.digit(k, j)];
      for (int c = 0; c < nc; ++c) {
        out.most_surplus += types.prob(k) * inst.costs().prob(c) * pi[i][k][c][j] *
                            (phi - inst.costs().cost(c, j));
      }
      out.less_surplus += types.prob(k) * Vbar(inst, i, types.values(k),
                                               FullSet(m) & ~Singleton(j),
                                               exante.beta);
    }
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < nc; ++c) {
        out.prophet += 2 * inst.costs().prob(c) * exante.q.at(i, j, c) *
                       (EffectivePrice(inst, exante.beta, i, j, c) -
                        inst.costs().cost(c, j));
      }
    }
  }
  out.holds = out.profit <= out.most_surplus + out.prophet + out.less_surplus;
  return out;
}

BenchmarkReport BenchmarkTerms(const Instance& inst, const DirectMechanism& mech,
                               const ExAnteProfile& exante) {
  BenchmarkReport out = EvaluateBenchmarkTerms(inst, mech, exante);
  if (!out.holds) {
    throw VerificationError(
        "profit " + FormatRational(out.profit) + " exceeds benchmark " +
        FormatRational(out.most_surplus + out.prophet + out.less_surplus));
  }
  return out;
}

std::vector<Rational> CoreThresholds(const Instance& inst,
                                     const ThresholdMap& beta) {
  VbarTable vb = VbarSingleTable(inst, beta);
  std::vector<Rational> tau(inst.num_buyers());
  for (int i = 0; i < inst.num_buyers(); ++i) {
    std::vector<Rational> grid = {Rational(0)};
    for (const auto& row : vb[i]) grid.insert(grid.end(), row.begin(), row.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const Rational& g : grid) {
      Rational mass = 0;
      for (int j = 0; j < inst.num_items(); ++j) {
        for (int s = 0; s < inst.dist(i, j).size(); ++s) {
          if (vb[i][j][s] > g) mass += inst.dist(i, j).prob(s);
        }
      }
      if (mass <= Rational(1, 2)) {
        tau[i] = g;
        break;
      }
    }
  }
  return tau;
}

CoreTailReport EvaluateCoreTail(const Instance& inst, const ThresholdMap& beta) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  CoreTailReport out;
  out.tau = CoreThresholds(inst, beta);
  VbarTable vb = VbarSingleTable(inst, beta);
  auto label = FavoriteLabels(inst, beta);
  out.tail = 0;
  out.core = 0;
  out.less_surplus = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int s = 0; s < inst.dist(i, j).size(); ++s) {
        const Rational& v = vb[i][j][s];
        if (v <= out.tau[i]) continue;
        Rational none = 1;
        for (int k = 0; k < m; ++k) {
          if (k == j) continue;
          Rational below = 0;
          for (int s2 = 0; s2 < inst.dist(i, k).size(); ++s2) {
            if (vb[i][k][s2] < v) below += inst.dist(i, k).prob(s2);
          }
          none *= below;
        }
        out.tail += inst.dist(i, j).prob(s) * v * (1 - none);
      }
    }
    const TypeSpace& types = inst.types(i);
    for (int k = 0; k < types.size(); ++k) {
      ItemSet core = 0;
      for (int j = 0; j < m; ++j) {
        if (vb[i][j][types.digit(k, j)] <= out.tau[i]) core |= Singleton(j);
      }
      out.core += types.prob(k) * Vbar(inst, i, types.values(k), core, beta);
      out.less_surplus +=
          types.prob(k) *
          Vbar(inst, i, types.values(k), FullSet(m) & ~Singleton(label[i][k]), beta);
    }
  }
  out.holds = out.less_surplus <= out.tail + out.core;
  return out;
}

CoreTailReport CoreTail(const Instance& inst, const ThresholdMap& beta) {
  CoreTailReport out = EvaluateCoreTail(inst, beta);
  if (!out.holds) {
    throw VerificationError("less-surplus " + FormatRational(out.less_surplus) +
                            " exceeds tail + core " +
                            FormatRational(out.tail + out.core));
  }
  return out;
}

TailPrices ComputeTailPrices(const Instance& inst, const ThresholdMap& beta,
                             const std::vector<Rational>& tau) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  VbarTable vb = VbarSingleTable(inst, beta);
  TailPrices out;
  out.xi.assign(n, std::vector<Rational>(m));
  out.r.assign(n, std::vector<Rational>(m));
  out.xi_strict.assign(n, std::vector<Rational>(m));
  out.r_strict.assign(n, std::vector<Rational>(m));
  out.r_sum = 0;
  out.r_strict_sum = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> grid;
    for (const auto& row : vb[i]) grid.insert(grid.end(), row.begin(), row.end());
    grid.push_back(tau[i]);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (int j = 0; j < m; ++j) {
      auto tail_mass = [&](const Rational& a) {
        Rational p = 0;
        for (int s = 0; s < inst.dist(i, j).size(); ++s) {
          if (vb[i][j][s] >= a) p += inst.dist(i, j).prob(s);
        }
        return p;
      };
      bool found = false;
      bool found_strict = false;
      for (const Rational& a : grid) {
        if (a < tau[i]) continue;
        Rational rev = a * tail_mass(a);
        if (!found || rev > out.r[i][j]) {
          out.r[i][j] = rev;
          out.xi[i][j] = a;
          found = true;
        }
        if (a > tau[i] && (!found_strict || rev > out.r_strict[i][j])) {
          out.r_strict[i][j] = rev;
          out.xi_strict[i][j] = a;
          found_strict = true;
        }
      }
      if (!found_strict) {
        out.xi_strict[i][j] = grid.back() + 1;
        out.r_strict[i][j] = 0;
      }
      out.r_sum += out.r[i][j];
      out.r_strict_sum += out.r_strict[i][j];
    }
  }
  return out;
}

Rational LowerMedian(std::vector<std::pair<Rational, Rational>> dist) {
  if (dist.empty()) throw InvalidInput("median of an empty distribution");
  std::sort(dist.begin(), dist.end());
  Rational cdf = 0;
  for (const auto& [v, p] : dist) {
    cdf += p;
    if (cdf >= Rational(1, 2)) return v;
  }
  return dist.back().first;
}

ConcentrationReport CoreConcentration(const Instance& inst,
                                      const ThresholdMap& beta,
                                      const std::vector<Rational>& tau) {
  ConcentrationReport out;
  out.holds = true;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    std::vector<std::pair<Rational, Rational>> dist;
    Rational mean = 0;
    for (int k = 0; k < types.size(); ++k) {
      Rational v = Mu(inst, i, types.values(k), FullSet(inst.num_items()), beta,
                      tau[i]);
      dist.push_back({v, types.prob(k)});
      mean += types.prob(k) * v;
    }
    Rational delta = LowerMedian(dist) / 2;
    out.delta.push_back(delta);
    out.core_mean.push_back(mean);
    out.holds = out.holds && mean <= 4 * delta + Rational(5, 2) * tau[i];
  }
  return out;
}

}  // namespace permitlab
