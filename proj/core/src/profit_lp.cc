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

#include "permitlab/profit_lp.h"

#include <string>
#include <utility>

#include "permitlab/errors.h"

namespace permitlab {
namespace {

constexpr long kMaxProfiles = 2000000;

Rational BundleValue(const std::vector<Rational>& t, ItemSet bundle) {
  Rational v = 0;
  for (size_t j = 0; j < t.size(); ++j) {
    if (HasItem(bundle, static_cast<int>(j))) v += t[j];
  }
  return v;
}

Rational AllocationCost(const Instance& inst, PairSet a, int c) {
  Rational total = 0;
  const int m = inst.num_items();
  for (int i = 0; i < inst.num_buyers(); ++i) {
    ItemSet b = BuyerBundle(a, m, i);
    for (int j = 0; j < m; ++j) {
      if (HasItem(b, j)) total += inst.costs().cost(c, j);
    }
  }
  return total;
}

}  // namespace

ProfileSpace::ProfileSpace(const Instance& inst) {
  const int n = inst.num_buyers();
  long total = 1;
  radix_.resize(n);
  stride_.resize(n);
  for (int i = 0; i < n; ++i) {
    radix_[i] = inst.types(i).size();
    stride_[i] = static_cast<int>(total);
    total *= radix_[i];
    if (total > kMaxProfiles) {
      throw SizeGuardExceeded("more than " + std::to_string(kMaxProfiles) +
                              " type profiles");
    }
  }
  probs_.resize(total);
  for (long p = 0; p < total; ++p) {
    Rational pr = 1;
    for (int i = 0; i < n; ++i) {
      pr *= inst.types(i).prob((p / stride_[i]) % radix_[i]);
    }
    probs_[p] = pr;
  }
}

DirectMechanism EmptyMechanism(const Instance& inst) {
  ProfileSpace space(inst);
  DirectMechanism mech;
  mech.allocations = EnumerateAllocations(inst);
  const int nc = inst.costs().size();
  mech.lottery.assign(nc, std::vector<std::vector<std::pair<int, Rational>>>(
                              space.size()));
  mech.payment.assign(nc, std::vector<std::vector<Rational>>(
                              space.size(),
                              std::vector<Rational>(inst.num_buyers())));
  return mech;
}

void ValidateMechanism(const Instance& inst, const DirectMechanism& mech) {
  ProfileSpace space(inst);
  const int nc = inst.costs().size();
  for (PairSet a : mech.allocations) {
    if (!IsFeasibleAllocation(inst, a)) {
      throw InvalidInput("mechanism uses infeasible allocation mask " +
                         std::to_string(a));
    }
  }
  if (static_cast<int>(mech.lottery.size()) != nc ||
      static_cast<int>(mech.payment.size()) != nc) {
    throw InvalidInput("mechanism needs one block per cost atom");
  }
  for (int c = 0; c < nc; ++c) {
    if (static_cast<int>(mech.lottery[c].size()) != space.size() ||
        static_cast<int>(mech.payment[c].size()) != space.size()) {
      throw InvalidInput("mechanism needs one entry per type profile");
    }
    for (int p = 0; p < space.size(); ++p) {
      Rational total = 0;
      for (const auto& [a, pr] : mech.lottery[c][p]) {
        if (a < 0 || a >= static_cast<int>(mech.allocations.size()) || pr < 0) {
          throw InvalidInput("bad lottery entry");
        }
        total += pr;
      }
      if (total > 1) throw InvalidInput("lottery mass exceeds one");
      if (static_cast<int>(mech.payment[c][p].size()) != inst.num_buyers()) {
        throw InvalidInput("payment vector needs one entry per buyer");
      }
    }
  }
}

Rational Profit(const Instance& inst, const DirectMechanism& mech) {
  ProfileSpace space(inst);
  Rational profit = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    Rational block = 0;
    for (int p = 0; p < space.size(); ++p) {
      Rational v = 0;
      for (const Rational& pay : mech.payment[c][p]) v += pay;
      for (const auto& [a, pr] : mech.lottery[c][p]) {
        v -= pr * AllocationCost(inst, mech.allocations[a], c);
      }
      block += space.prob(p) * v;
    }
    profit += inst.costs().prob(c) * block;
  }
  return profit;
}

InterimTable InterimAllocation(const Instance& inst, const DirectMechanism& mech) {
  ProfileSpace space(inst);
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  InterimTable pi(n);
  for (int i = 0; i < n; ++i) {
    pi[i].assign(inst.types(i).size(),
                 std::vector<std::vector<Rational>>(nc, std::vector<Rational>(m)));
  }
  for (int c = 0; c < nc; ++c) {
    for (int p = 0; p < space.size(); ++p) {
      for (const auto& [a, pr] : mech.lottery[c][p]) {
        for (int i = 0; i < n; ++i) {
          ItemSet b = BuyerBundle(mech.allocations[a], m, i);
          if (b == 0) continue;
          int k = space.type_of(p, i);
          Rational w = pr * space.prob(p) / inst.types(i).prob(k);
          for (int j = 0; j < m; ++j) {
            if (HasItem(b, j)) pi[i][k][c][j] += w;
          }
        }
      }
    }
  }
  return pi;
}

namespace {

// Expected allocation (over c and others' types) and expected payment for
// each report of buyer i.
void ReportOutcomes(const Instance& inst, const DirectMechanism& mech, int i,
                    std::vector<std::vector<Rational>>* alloc,
                    std::vector<Rational>* pay) {
  ProfileSpace space(inst);
  const int m = inst.num_items();
  const TypeSpace& types = inst.types(i);
  alloc->assign(types.size(), std::vector<Rational>(m));
  pay->assign(types.size(), Rational(0));
  for (int c = 0; c < inst.costs().size(); ++c) {
    for (int p = 0; p < space.size(); ++p) {
      int k = space.type_of(p, i);
      Rational w = inst.costs().prob(c) * space.prob(p) / types.prob(k);
      (*pay)[k] += w * mech.payment[c][p][i];
      for (const auto& [a, pr] : mech.lottery[c][p]) {
        ItemSet b = BuyerBundle(mech.allocations[a], m, i);
        for (int j = 0; j < m; ++j) {
          if (HasItem(b, j)) (*alloc)[k][j] += w * pr;
        }
      }
    }
  }
}

Rational Dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

}  // namespace

Rational InterimUtility(const Instance& inst, const DirectMechanism& mech, int i,
                        int truth, int report) {
  if (report < 0) return 0;
  std::vector<std::vector<Rational>> alloc;
  std::vector<Rational> pay;
  ReportOutcomes(inst, mech, i, &alloc, &pay);
  return Dot(inst.types(i).values(truth), alloc[report]) - pay[report];
}

BicReport CheckBic(const Instance& inst, const DirectMechanism& mech) {
  BicReport report;
  report.worst_gain = 0;
  bool first = true;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    std::vector<std::vector<Rational>> alloc;
    std::vector<Rational> pay;
    ReportOutcomes(inst, mech, i, &alloc, &pay);
    const TypeSpace& types = inst.types(i);
    for (int k = 0; k < types.size(); ++k) {
      Rational truthful = Dot(types.values(k), alloc[k]) - pay[k];
      for (int r = -1; r < types.size(); ++r) {
        if (r == k) continue;
        Rational u = r < 0 ? Rational(0) : Dot(types.values(k), alloc[r]) - pay[r];
        Rational gain = u - truthful;
        if (first || gain > report.worst_gain) {
          report.worst_gain = gain;
          report.buyer = i;
          report.truth = k;
          report.report = r;
          first = false;
        }
      }
    }
  }
  report.ok = report.worst_gain <= 0;
  return report;
}

FlowBalance CheckFlowConservation(const Instance& inst,
                                  const FlowMultipliers& flow) {
  FlowBalance out;
  if (static_cast<int>(flow.weight.size()) != inst.num_buyers()) {
    throw InvalidInput("flow needs one weight map per buyer");
  }
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    std::vector<Rational> balance(types.size());
    for (int k = 0; k < types.size(); ++k) balance[k] = types.prob(k);
    for (const auto& [edge, w] : flow.weight[i]) {
      if (w < 0) {
        throw InvalidInput("negative flow weight on buyer " + std::to_string(i));
      }
      balance[edge.first] -= w;
      if (edge.second >= 0) balance[edge.second] += w;
    }
    for (int k = 0; k < types.size(); ++k) {
      if (balance[k] != 0) {
        out.ok = false;
        out.buyer = i;
        out.type = k;
        out.imbalance = balance[k];
        return out;
      }
    }
  }
  return out;
}

std::vector<std::vector<std::vector<Rational>>> FlowVirtualValues(
    const Instance& inst, const FlowMultipliers& flow) {
  const int m = inst.num_items();
  std::vector<std::vector<std::vector<Rational>>> phi(inst.num_buyers());
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    std::vector<std::vector<Rational>> acc(types.size(), std::vector<Rational>(m));
    for (const auto& [edge, w] : flow.weight[i]) {
      if (edge.second < 0 || w == 0) continue;
      const auto& from = types.values(edge.first);
      const auto& to = types.values(edge.second);
      for (int j = 0; j < m; ++j) acc[edge.second][j] += w * (from[j] - to[j]);
    }
    phi[i].resize(types.size());
    for (int k = 0; k < types.size(); ++k) {
      phi[i][k].resize(m);
      for (int j = 0; j < m; ++j) {
        phi[i][k][j] = types.values(k)[j] - acc[k][j] / types.prob(k);
      }
    }
  }
  return phi;
}

VirtualBoundReport VerifyVirtualBound(const Instance& inst,
                                      const DirectMechanism& mech,
                                      const FlowMultipliers& flow) {
  FlowBalance balance = CheckFlowConservation(inst, flow);
  if (!balance.ok) {
    throw InvalidInput("flow is not conserved at buyer " +
                       std::to_string(balance.buyer) + " type " +
                       std::to_string(balance.type) + " (imbalance " +
                       FormatRational(balance.imbalance) + ")");
  }
  auto phi = FlowVirtualValues(inst, flow);
  InterimTable pi = InterimAllocation(inst, mech);
  VirtualBoundReport out;
  out.profit = Profit(inst, mech);
  out.bound = 0;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    for (int k = 0; k < types.size(); ++k) {
      for (int c = 0; c < inst.costs().size(); ++c) {
        Rational w = types.prob(k) * inst.costs().prob(c);
        for (int j = 0; j < inst.num_items(); ++j) {
          if (pi[i][k][c][j] == 0) continue;
          out.bound += w * pi[i][k][c][j] * (phi[i][k][j] - inst.costs().cost(c, j));
        }
      }
    }
  }
  out.holds = out.profit <= out.bound;
  return out;
}

ProfitLp BuildProfitLp(const Instance& inst, long max_variables) {
  ProfileSpace space(inst);
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  ProfitLp out;
  out.allocations = EnumerateAllocations(inst);
  const long na = static_cast<long>(out.allocations.size()) - 1;
  long variables = static_cast<long>(nc) * space.size() * na;
  for (int i = 0; i < n; ++i) variables += inst.types(i).size();
  if (variables > max_variables) {
    throw SizeGuardExceeded("profit LP needs " + std::to_string(variables) +
                            " variables (limit " + std::to_string(max_variables) +
                            "): " + std::to_string(space.size()) + " profiles, " +
                            std::to_string(nc) + " cost atoms, " +
                            std::to_string(na) + " nonempty allocations");
  }
  LinearProgram& lp = out.lp;
  out.alloc_columns.assign(nc, std::vector<std::vector<std::pair<int, int>>>(space.size()));
  for (int c = 0; c < nc; ++c) {
    for (int p = 0; p < space.size(); ++p) {
      Rational w = inst.costs().prob(c) * space.prob(p);
      for (int a = 1; a <= na; ++a) {
        int col = lp.AddColumn(
            "x_c" + std::to_string(c) + "_p" + std::to_string(p) + "_a" +
                std::to_string(a),
            -w * AllocationCost(inst, out.allocations[a], c));
        out.alloc_columns[c][p].push_back({a, col});
      }
    }
  }
  out.payment_column.resize(n);
  for (int i = 0; i < n; ++i) {
    const TypeSpace& types = inst.types(i);
    for (int k = 0; k < types.size(); ++k) {
      out.payment_column[i].push_back(lp.AddColumn(
          "P_b" + std::to_string(i) + "_t" + std::to_string(k), types.prob(k),
          /*free=*/true));
    }
  }
  for (int c = 0; c < nc; ++c) {
    for (int p = 0; p < space.size(); ++p) {
      std::vector<std::pair<int, Rational>> coeffs;
      for (const auto& [a, col] : out.alloc_columns[c][p]) coeffs.push_back({col, 1});
      lp.AddRow("cvx_c" + std::to_string(c) + "_p" + std::to_string(p),
                std::move(coeffs), RowSense::kLessEqual, 1);
      out.row_flow_edge.push_back({-1, -1});
      out.row_buyer.push_back(-1);
    }
  }
  // Profiles grouped by buyer i's type.
  for (int i = 0; i < n; ++i) {
    const TypeSpace& types = inst.types(i);
    const int nt = types.size();
    out.bic_constraints_total += static_cast<long>(nt) * (nt + 1);
    std::vector<std::vector<int>> by_type(nt);
    for (int p = 0; p < space.size(); ++p) by_type[space.type_of(p, i)].push_back(p);
    for (int k = 0; k < nt; ++k) {
      const auto& tk = types.values(k);
      // Coefficients of the truthful side, negated.
      std::vector<std::pair<int, Rational>> truthful;
      for (int c = 0; c < nc; ++c) {
        for (int p : by_type[k]) {
          Rational w = inst.costs().prob(c) * space.prob(p) / types.prob(k);
          for (const auto& [a, col] : out.alloc_columns[c][p]) {
            Rational v = BundleValue(tk, BuyerBundle(out.allocations[a], m, i));
            if (v != 0) truthful.push_back({col, -w * v});
          }
        }
      }
      truthful.push_back({out.payment_column[i][k], 1});
      for (int r = -1; r < nt; ++r) {
        if (r == k) continue;
        std::vector<std::pair<int, Rational>> coeffs = truthful;
        if (r >= 0) {
          for (int c = 0; c < nc; ++c) {
            for (int p : by_type[r]) {
              Rational w = inst.costs().prob(c) * space.prob(p) / types.prob(r);
              for (const auto& [a, col] : out.alloc_columns[c][p]) {
                Rational v = BundleValue(tk, BuyerBundle(out.allocations[a], m, i));
                if (v != 0) coeffs.push_back({col, w * v});
              }
            }
          }
          coeffs.push_back({out.payment_column[i][r], -1});
        }
        lp.AddRow("bic_b" + std::to_string(i) + "_t" + std::to_string(k) + "_r" +
                      (r < 0 ? std::string("out") : std::to_string(r)),
                  std::move(coeffs), RowSense::kLessEqual, 0);
        out.row_flow_edge.push_back({k, r});
        out.row_buyer.push_back(i);
        ++out.bic_constraints_materialized;
      }
    }
  }
  return out;
}

LpOptimum SolveProfitLp(const Instance& inst, long max_variables,
                        const SolverOptions& options) {
  ProfitLp built = BuildProfitLp(inst, max_variables);
  LpOptimum out;
  out.solution = SolveLinearProgram(built.lp, options);
  if (out.solution.status != LpStatus::kOptimal) {
    throw VerificationError("profit LP did not reach an optimum");
  }
  out.opt = out.solution.objective;
  ProfileSpace space(inst);
  DirectMechanism& mech = out.mechanism;
  mech.allocations = built.allocations;
  const int nc = inst.costs().size();
  const int n = inst.num_buyers();
  mech.lottery.assign(nc, std::vector<std::vector<std::pair<int, Rational>>>(space.size()));
  mech.payment.assign(nc, std::vector<std::vector<Rational>>(space.size(),
                                                            std::vector<Rational>(n)));
  for (int c = 0; c < nc; ++c) {
    for (int p = 0; p < space.size(); ++p) {
      for (const auto& [a, col] : built.alloc_columns[c][p]) {
        const Rational& v = out.solution.x[col];
        if (v != 0) mech.lottery[c][p].push_back({a, v});
      }
      for (int i = 0; i < n; ++i) {
        mech.payment[c][p][i] =
            out.solution.x[built.payment_column[i][space.type_of(p, i)]];
      }
    }
  }
  out.flow.weight.resize(n);
  for (int r = 0; r < built.lp.num_rows(); ++r) {
    int i = built.row_buyer[r];
    if (i < 0 || out.solution.duals[r] == 0) continue;
    out.flow.weight[i][built.row_flow_edge[r]] = out.solution.duals[r];
  }
  return out;
}

}  // namespace permitlab
