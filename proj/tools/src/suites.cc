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

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <numeric>
#include <thread>

#include "permitlab/benchmark.h"
#include "permitlab/errors.h"
#include "permitlab/harness.h"
#include "permitlab/instance_io.h"
#include "permitlab/mechanisms.h"
#include "permitlab/myerson.h"
#include "permitlab/ocrs.h"
#include "permitlab/profit_lp.h"
#include "permitlab/reference_oracles.h"

namespace permitlab::harness {

namespace {

void Check(InstanceRow* row, const std::string& name, bool passed, const Rational& lhs,
           const Rational& rhs) {
  row->checks.push_back({name, passed, FormatRational(lhs), FormatRational(rhs)});
}
void Le(InstanceRow* row, const std::string& name, const Rational& lhs, const Rational& rhs) {
  Check(row, name, lhs <= rhs, lhs, rhs);
}
void Eq(InstanceRow* row, const std::string& name, const Rational& lhs, const Rational& rhs) {
  Check(row, name, lhs == rhs, lhs, rhs);
}
void Zero(InstanceRow* row, const std::string& name, long violations) {
  Check(row, name, violations == 0, Rational(violations), Rational(0));
}

// q_ij(c) summed over buyers stays at most 1/2.
void CheckItemHalving(InstanceRow* row, const Instance& inst, const ExAnteProfile& ex) {
  for (int j = 0; j < inst.num_items(); ++j) {
    for (int c = 0; c < inst.costs().size(); ++c) {
      Rational total = 0;
      for (int i = 0; i < inst.num_buyers(); ++i) total += ex.q.at(i, j, c);
      Le(row, "exante_item_" + std::to_string(j) + "_atom_" + std::to_string(c), total,
         Rational(1, 2));
    }
  }
}

void AddBenchmarkColumns(InstanceRow* row, const BenchmarkReport& bt) {
  row->columns["most_surplus"] = bt.most_surplus;
  row->columns["prophet"] = bt.prophet;
  row->columns["less_surplus"] = bt.less_surplus;
}

void BenchmarkSuite(const Instance& inst, InstanceRow* row) {
  LpOptimum lp = SolveProfitLp(inst);
  row->columns["opt_profit"] = lp.opt;
  BicReport bic = CheckBic(inst, lp.mechanism);
  Check(row, "lp_mechanism_bic", bic.ok, bic.worst_gain, Rational(0));
  FlowBalance balance = CheckFlowConservation(inst, lp.flow);
  Check(row, "lp_dual_flow_conserved", balance.ok, balance.imbalance, Rational(0));
  VirtualBoundReport dual = VerifyVirtualBound(inst, lp.mechanism, lp.flow);
  Le(row, "lp_dual_virtual_bound", dual.profit, dual.bound);
  ExAnteProfile ex = ExAnteFromMechanism(inst, lp.mechanism);
  CheckItemHalving(row, inst, ex);
  FlowSpec canonical = BuildFlow(inst, ex.beta);
  VirtualBoundReport cb = VerifyVirtualBound(inst, lp.mechanism, canonical.flow);
  Le(row, "canonical_flow_bound", cb.profit, cb.bound);
  BenchmarkReport bt = EvaluateBenchmarkTerms(inst, lp.mechanism, ex);
  Le(row, "benchmark_bound", lp.opt, bt.most_surplus + bt.prophet + bt.less_surplus);
  BenchmarkRecompute rc = DirectBenchmarkRecompute(inst, lp.mechanism);
  Eq(row, "recompute_most_surplus", bt.most_surplus, rc.most_surplus.value);
  Eq(row, "recompute_prophet", bt.prophet, rc.prophet.value);
  Eq(row, "recompute_less_surplus", bt.less_surplus, rc.less_surplus.value);
  if (inst.num_buyers() == 1) {
    ExAnteProfile zero = ZeroThresholds(inst, lp.mechanism);
    BenchmarkReport b0 = EvaluateBenchmarkTerms(inst, lp.mechanism, zero);
    Le(row, "benchmark_bound_zero_beta", lp.opt, b0.most_surplus + b0.prophet + b0.less_surplus);
    Eq(row, "zero_beta_prophet", b0.prophet, Rational(0));
    BenchmarkRecompute r0 = DirectBenchmarkRecompute(inst, lp.mechanism, true);
    Eq(row, "recompute_zero_beta_most_surplus", b0.most_surplus, r0.most_surplus.value);
    Eq(row, "recompute_zero_beta_less_surplus", b0.less_surplus, r0.less_surplus.value);
    AddBenchmarkColumns(row, b0);
  } else {
    AddBenchmarkColumns(row, bt);
  }
}

void CheckConversion(InstanceRow* row, const Instance& inst, const std::string& tag,
                     const AuxiliaryMechanism& aux, const Rational& expected,
                     const Rational& opt) {
  bool truthful = true;
  try {
    CheckAuxiliaryTruthful(inst, aux);
  } catch (const VerificationError&) {
    truthful = false;
  }
  Rational revenue = AuxiliaryRevenue(inst, aux);
  Check(row, "conversion_" + tag + "_auxiliary_truthful", truthful, revenue, revenue);
  DirectMechanism converted = ConvertRevenueToPermit(inst, aux);
  ValidateMechanism(inst, converted);
  Eq(row, "conversion_" + tag + "_profit_equals_revenue", Profit(inst, converted), revenue);
  Eq(row, "conversion_" + tag + "_revenue_equals_family_profit", revenue, expected);
  BicReport bic = CheckBic(inst, converted);
  Check(row, "conversion_" + tag + "_bic", bic.ok, bic.worst_gain, Rational(0));
  Le(row, "conversion_" + tag + "_below_opt", Profit(inst, converted), opt);
}

void SingleBuyerSuite(const Instance& inst, InstanceRow* row, bool additive) {
  LpOptimum lp = SolveProfitLp(inst);
  const Rational& opt = lp.opt;
  row->columns["opt_profit"] = opt;
  CandidateGrid grid = DefaultGrid(inst);
  Rational value[3];
  SearchResult found[3];
  const MechanismKind kinds[3] = {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB};
  const char* names[3] = {"ip", "pp", "pb"};
  for (int x = 0; x < 3; ++x) {
    value[x] = BrutePostedPriceOpt(inst, kinds[x]).value;
    found[x] = SearchBest(inst, kinds[x], grid);
    Eq(row, std::string("search_matches_oracle_") + names[x], found[x].profit, value[x]);
    Le(row, std::string(names[x]) + "_below_opt", value[x], opt);
    row->columns[names[x]] = value[x];
  }
  Rational best = Max(value[0], Max(value[1], value[2]));
  if (additive) {
    Le(row, "opt_le_ip_3pp_2pb", opt, value[0] + 3 * value[1] + 2 * value[2]);
    Le(row, "opt_le_6_max", opt, 6 * best);
  } else {
    Le(row, "opt_le_2ip_5pp_4pb", opt, 2 * value[0] + 5 * value[1] + 4 * value[2]);
    Le(row, "opt_le_11_max", opt, 11 * best);
  }
  CheckConversion(row, inst, "pp", AuxiliaryFromPermitPrices(inst, found[1].spec.permit_prices[0]),
                  value[1], opt);
  CheckConversion(row, inst, "pb", AuxiliaryFromBundlePrice(inst, found[2].spec.bundle_prices[0]),
                  value[2], opt);
  ExAnteProfile zero = ZeroThresholds(inst, lp.mechanism);
  AddBenchmarkColumns(row, EvaluateBenchmarkTerms(inst, lp.mechanism, zero));
}

void CopiesBoundSuite(const Instance& inst, InstanceRow* row) {
  LpOptimum lp = SolveProfitLp(inst);
  row->columns["opt_profit"] = lp.opt;
  ExAnteProfile zero = ZeroThresholds(inst, lp.mechanism);
  BenchmarkReport bt = EvaluateBenchmarkTerms(inst, lp.mechanism, zero);
  AddBenchmarkColumns(row, bt);
  Rational copies = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    copies += inst.costs().prob(c) * CopiesOptUnitDemand(inst, c);
  }
  row->columns["copies_unit_demand"] = copies;
  MechanismSpec csip = ConstructCsipFromCopies(inst);
  Rational csip_profit = Evaluate(inst, csip).profit;
  row->columns["csip"] = csip_profit;
  Le(row, "most_surplus_le_copies", bt.most_surplus, copies);
  Le(row, "copies_le_2_csip", copies, 2 * csip_profit);
  Le(row, "csip_below_opt", csip_profit, lp.opt);
  if (inst.family(0).IsAdditive()) {
    Rational ip = Evaluate(inst, ConstructSeparateIp(inst)).profit;
    row->columns["ip"] = ip;
    Le(row, "most_surplus_le_separate_ip", bt.most_surplus, ip);
    Rational additive = 0;
    for (int c = 0; c < inst.costs().size(); ++c) {
      additive += inst.costs().prob(c) * CopiesOptAdditive(inst, c);
    }
    Eq(row, "separate_ip_equals_copies_additive", ip, additive);
  }
}

ThresholdMap PropertyQ(const Instance& inst) {
  ThresholdMap q(inst.num_buyers(), inst.num_items(), inst.costs().size());
  for (int i = 0; i < inst.num_buyers(); ++i) {
    for (int j = 0; j < inst.num_items(); ++j) {
      for (int c = 0; c < inst.costs().size(); ++c) q.at(i, j, c) = Frac(1 + (i + j + c) % 3, 8);
    }
  }
  return q;
}

void PropertySuite(const Instance& inst, InstanceRow* row) {
  const int m = inst.num_items();
  const ItemSet full = FullSet(m);
  ExAnteProfile ex = ExAnteFromProbabilities(inst, PropertyQ(inst));
  std::vector<Rational> tau = CoreThresholds(inst, ex.beta);
  long mono = 0, sub = 0, ext = 0, mu_mono = 0, mu_sub = 0, mu_ext = 0, lipschitz = 0;
  long xos = 0, consistency = 0;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const TypeSpace& types = inst.types(i);
    const int nt = types.size();
    std::vector<std::vector<Rational>> vb(nt, std::vector<Rational>(full + 1));
    std::vector<std::vector<Rational>> mu(nt, std::vector<Rational>(full + 1));
    for (int k = 0; k < nt; ++k) {
      const auto& t = types.values(k);
      for (ItemSet s = 0; s <= full; ++s) {
        vb[k][s] = Vbar(inst, i, t, s, ex.beta);
        mu[k][s] = Mu(inst, i, t, s, ex.beta, tau[i]);
        Rational direct = 0;
        for (int c = 0; c < inst.costs().size(); ++c) {
          std::vector<Rational> prices(m);
          for (int j = 0; j < m; ++j) prices[j] = EffectivePrice(inst, ex.beta, i, j, c);
          BundleChoice choice = Stage2Utility(inst, i, t, prices, s);
          direct += inst.costs().prob(c) * choice.value;
          std::vector<Rational> support = SupportingPrices(inst, i, t, prices, s);
          Rational sum = std::accumulate(support.begin(), support.end(), Rational(0));
          if (sum != choice.value) ++xos;
          for (ItemSet s2 = s;; s2 = (s2 - 1) & s) {
            Rational part = 0;
            for (int j = 0; j < m; ++j) {
              if (HasItem(s2, j)) part += support[j];
            }
            if (part > Stage2Utility(inst, i, t, prices, s2).value) ++xos;
            if (s2 == 0) break;
          }
        }
        if (direct != vb[k][s]) ++consistency;
      }
    }
    for (int k = 0; k < nt; ++k) {
      for (ItemSet u = 0; u <= full; ++u) {
        for (ItemSet v = 0; v <= full; ++v) {
          if ((u & v) == u) {
            if (vb[k][u] > vb[k][v]) ++mono;
            if (mu[k][u] > mu[k][v]) ++mu_mono;
          }
          if (vb[k][u | v] > vb[k][u] + vb[k][v]) ++sub;
          if (mu[k][u | v] > mu[k][u] + mu[k][v]) ++mu_sub;
        }
      }
      for (int k2 = 0; k2 < nt; ++k2) {
        ItemSet differ = 0;
        for (int j = 0; j < m; ++j) {
          if (types.digit(k, j) != types.digit(k2, j)) differ |= Singleton(j);
        }
        for (ItemSet x = 0; x <= full; ++x) {
          if ((x & differ) == 0) {
            if (vb[k][x] != vb[k2][x]) ++ext;
            if (mu[k][x] != mu[k2][x]) ++mu_ext;
          }
          for (ItemSet y = 0; y <= full; ++y) {
            int dist = SetSize(x ^ y) + SetSize(x & y & differ);
            Rational gap = mu[k][x] - mu[k2][y];
            if (gap < 0) gap = -gap;
            if (gap > tau[i] * dist) ++lipschitz;
          }
        }
      }
    }
  }
  Zero(row, "vbar_monotone_violations", mono);
  Zero(row, "vbar_subadditive_violations", sub);
  Zero(row, "vbar_no_externalities_violations", ext);
  Zero(row, "mu_monotone_violations", mu_mono);
  Zero(row, "mu_subadditive_violations", mu_sub);
  Zero(row, "mu_no_externalities_violations", mu_ext);
  Zero(row, "mu_lipschitz_violations", lipschitz);
  Zero(row, "supporting_prices_violations", xos);
  Zero(row, "vbar_stage2_consistency_violations", consistency);
}

EvalResult EvaluateRspp(const Instance& inst, MechanismSpec* spec) {
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  ArrivalHook hook = [m, nc](int i, const std::vector<std::vector<Rational>>& avail,
                             MechanismSpec* s) {
    for (int j = 0; j < m; ++j) {
      for (int c = 0; c < nc; ++c) {
        if (avail[j][c] < Rational(1, 2)) {
          throw PreconditionFailed("item " + std::to_string(j) +
                                   " is available with probability below 1/2");
        }
        s->show_probs.at(i, j, c) = Rational(1, 2) / avail[j][c];
      }
    }
  };
  return EvaluateWithHook(inst, spec, hook);
}

Rational AtLeastMass(const Instance& inst, const VbarTable& table, int i, int j,
                     const Rational& xi, const Rational& tie) {
  Rational mass = 0;
  const DiscreteDist& d = inst.dist(i, j);
  for (int s = 0; s < d.size(); ++s) {
    if (table[i][j][s] > xi) mass += d.prob(s);
    if (table[i][j][s] == xi) mass += d.prob(s) * tie;
  }
  return mass;
}

void MultiBuyerSuite(const Instance& inst, InstanceRow* row) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  const int nc = inst.costs().size();
  LpOptimum lp = SolveProfitLp(inst);
  row->columns["opt_profit"] = lp.opt;
  ExAnteProfile ex = ExAnteFromMechanism(inst, lp.mechanism);
  CheckItemHalving(row, inst, ex);
  BenchmarkReport bt = EvaluateBenchmarkTerms(inst, lp.mechanism, ex);
  AddBenchmarkColumns(row, bt);
  Le(row, "benchmark_bound", lp.opt, bt.most_surplus + bt.prophet + bt.less_surplus);
  CoreTailReport ct = EvaluateCoreTail(inst, ex.beta);
  row->columns["tail"] = ct.tail;
  row->columns["core"] = ct.core;
  Le(row, "less_surplus_le_tail_plus_core", ct.less_surplus, ct.tail + ct.core);
  TailPrices tp = ComputeTailPrices(inst, ex.beta, ct.tau);
  Le(row, "tail_le_half_r", ct.tail, tp.r_strict_sum / 2);
  ConcentrationReport cc = CoreConcentration(inst, ex.beta, ct.tau);
  for (int i = 0; i < n; ++i) {
    Le(row, "core_concentration_buyer_" + std::to_string(i), cc.core_mean[i],
       4 * cc.delta[i] + Rational(5, 2) * ct.tau[i]);
  }
  VbarTable table = VbarSingleTable(inst, ex.beta);
  Rational tau_sum = std::accumulate(ct.tau.begin(), ct.tau.end(), Rational(0));
  Rational best_csip = -1, best_rspp = -1, best_spb = -1;
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<int> reversed(identity.rbegin(), identity.rend());
  for (const auto& order : {identity, reversed}) {
    std::string tag = order == identity ? "_forward" : "_reverse";
    if (n == 1 && order != identity) break;
    MechanismSpec copies = ConstructCsipFromCopies(inst, order);
    Rational copies_profit = Evaluate(inst, copies).profit;
    Le(row, "most_surplus_le_6_csip" + tag, bt.most_surplus, 6 * copies_profit);
    MechanismSpec prophet = ProphetCsip(inst, ex);
    prophet.order = order;
    EvalResult pe = Evaluate(inst, prophet);
    Le(row, "prophet_le_8_csip" + tag, bt.prophet, 8 * pe.profit);
    for (int c = 0; c < nc; ++c) {
      Rational atom = 0;
      Rational target = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
          const Rational margin = prophet.item_prices.at(i, j, c) - inst.costs().cost(c, j);
          atom += pe.item_prob[i][j][c] * margin;
          target += inst.costs().prob(c) * ex.q.at(i, j, c) * margin;
        }
      }
      Le(row, "prophet_csip_atom_" + std::to_string(c) + tag, target / 4, atom);
    }
    MechanismSpec tail = ConstructRsppTail(inst, ex, tp);
    tail.order = order;
    EvalResult te = EvaluateRspp(inst, &tail);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        Le(row, "rspp_tail_permit_" + std::to_string(i) + std::to_string(j) + tag,
           AtLeastMass(inst, table, i, j, tp.xi_strict[i][j], Rational(1)) / 2,
           te.permit_prob[i][j]);
      }
    }
    Le(row, "r_le_4_rspp" + tag, tp.r_strict_sum, 4 * te.profit);
    Le(row, "tail_le_2_rspp" + tag, ct.tail, 2 * te.profit);
    MechanismSpec at_tau = ConstructRsppTau(inst, ex, ct.tau);
    at_tau.order = order;
    EvalResult ue = EvaluateRspp(inst, &at_tau);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        Le(row, "rspp_tau_permit_" + std::to_string(i) + std::to_string(j) + tag,
           AtLeastMass(inst, table, i, j, ct.tau[i], at_tau.permit_tie_accept[i][j]) / 2,
           ue.permit_prob[i][j]);
      }
    }
    Le(row, "tau_sum_le_8_rspp" + tag, tau_sum, 8 * ue.profit);
    Rational rspp = Max(te.profit, ue.profit);
    MechanismSpec spb = ConstructSpb(inst, ex, cc.delta);
    spb.order = order;
    EvalResult se = Evaluate(inst, spb);
    for (int i = 0; i < n; ++i) {
      Le(row, "spb_accept_half_buyer_" + std::to_string(i) + tag, Rational(1, 2),
         se.bundle_accept_prob[i]);
    }
    Le(row, "core_le_8_spb_20_rspp" + tag, ct.core, 8 * se.profit + 20 * rspp);
    Rational csip = Max(copies_profit, pe.profit);
    Le(row, "opt_le_14_csip_22_rspp_8_spb" + tag, lp.opt, 14 * csip + 22 * rspp + 8 * se.profit);
    for (const Rational* p : {&copies_profit, &pe.profit, &te.profit, &ue.profit, &se.profit}) {
      Le(row, "simple_below_opt" + tag, *p, lp.opt);
    }
    best_csip = Max(best_csip, csip);
    best_rspp = Max(best_rspp, rspp);
    best_spb = Max(best_spb, se.profit);
  }
  row->columns["csip"] = best_csip;
  row->columns["rspp"] = best_rspp;
  row->columns["spb"] = best_spb;
}

void OcrsSuite(const Instance& inst, InstanceRow* row) {
  const Rational half(1, 2);
  Check(row, "item_family_is_matroid", IsMatroidFamily(ItemPartitionFamily(inst)), 1, 1);
  Check(row, "buyer_family_is_matroid", IsMatroidFamily(BuyerFeasibilityFamily(inst)), 1, 1);
  GreedyOcrs ocrs = AuctionOcrs(inst, half);
  Eq(row, "ocrs_constant", ocrs.constant, Rational(1, 4));
  const int e = ocrs.family.num_pairs();
  long selectable = 0, ordered = 0, adaptive = 0;
  Rational worst = 1;
  std::vector<int> base(e);
  std::iota(base.begin(), base.end(), 0);
  for (const auto& y : ScaledPolytopeGrid(ocrs.family, half, e <= 4 ? 4 : 2)) {
    SelectabilityReport rep = Selectability(ocrs, y);
    worst = Min(worst, rep.min_value);
    if (rep.min_value < ocrs.constant) ++selectable;
    std::vector<int> order = base;
    do {
      std::vector<Rational> p = GreedySelectionProbs(ocrs, y, order);
      for (int x = 0; x < e; ++x) {
        if (p[x] < ocrs.constant * y[x]) ++ordered;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    std::vector<Rational> a = AdaptiveSelectionProbs(ocrs, y);
    for (int x = 0; x < e; ++x) {
      if (a[x] < ocrs.constant * y[x]) ++adaptive;
    }
  }
  row->columns["min_selectability"] = worst;
  Zero(row, "selectability_violations", selectable);
  Zero(row, "fixed_order_selection_violations", ordered);
  Zero(row, "adaptive_order_selection_violations", adaptive);
}

void BundleGapSuite(const Instance& inst, InstanceRow* row) {
  Rational ip = BrutePostedPriceOpt(inst, MechanismKind::kIP).value;
  Rational pb = BrutePostedPriceOpt(inst, MechanismKind::kPB).value;
  row->columns["ip"] = ip;
  row->columns["pb"] = pb;
  Eq(row, "full_revelation_ip_equals_one", ip, Rational(1));
}

void SingleItemSuite(const Instance& inst, InstanceRow* row) {
  LpOptimum lp = SolveProfitLp(inst);
  row->columns["opt_profit"] = lp.opt;
  const DiscreteDist& d = inst.dist(0, 0);
  const std::vector<Rational> ironed = IronedTables(inst)[0][0];
  Rational formula = 0;
  Rational posted = 0;
  for (int c = 0; c < inst.costs().size(); ++c) {
    for (int s = 0; s < d.size(); ++s) {
      formula += inst.costs().prob(c) * d.prob(s) * PositivePart(ironed[s] - inst.costs().cost(c, 0));
    }
    posted += inst.costs().prob(c) * BestPostedPriceProfit(d, inst.costs().cost(c, 0));
  }
  row->columns["ironed_formula"] = formula;
  Eq(row, "opt_equals_ironed_formula", lp.opt, formula);
  Eq(row, "opt_equals_posted_price", lp.opt, posted);
}

void MonteCarloSuite(const Instance& inst, InstanceRow* row, const SuiteOptions& options,
                     long index) {
  MechanismSpec spec;
  std::string column;
  if (inst.num_buyers() == 1) {
    const MechanismKind kinds[3] = {MechanismKind::kIP, MechanismKind::kPP, MechanismKind::kPB};
    MechanismKind kind = kinds[index % 3];
    spec = SearchBest(inst, kind, DefaultGrid(inst)).spec;
    column = kind == MechanismKind::kIP ? "ip" : kind == MechanismKind::kPP ? "pp" : "pb";
  } else if (index % 2 == 0) {
    spec = ConstructCsipFromCopies(inst);
    column = "csip";
  } else {
    spec = SearchBest(inst, MechanismKind::kSPB, DefaultGrid(inst)).spec;
    column = "spb";
  }
  Rational exact = Evaluate(inst, spec).profit;
  row->columns[column] = exact;
  MonteCarloResult mc =
      MonteCarloProfit(inst, spec, options.mc_samples, options.seed * 1000003ULL + index);
  row->columns["mc_mean"] = Rational(mc.mean);
  row->columns["mc_half_width"] = Rational(mc.half_width);
  double x = exact.get_d();
  row->advisory_checks = true;
  Check(row, "mc_interval_covers_exact", mc.lower <= x && x <= mc.upper, exact,
        Rational(mc.mean));
}

GeneratorParams Params(int count, int n_min, int n_max, int m_min, int m_max, int support,
                       int costs, FamilyMode family) {
  GeneratorParams p;
  p.count = count;
  p.n_min = n_min;
  p.n_max = n_max;
  p.m_min = m_min;
  p.m_max = m_max;
  p.support_max = support;
  p.costs_max = costs;
  p.family = family;
  return p;
}

void Aggregate(SuiteReport* report) {
  if (report->suite == "bundle_gap") {
    Rational previous = -1;
    bool increasing = true;
    for (const auto& row : report->rows) {
      Rational ratio = row.columns.at("pb") / row.columns.at("ip");
      if (ratio <= previous) increasing = false;
      previous = ratio;
      report->summary["pb_over_ip_" + row.id] = FormatRational(ratio);
    }
    report->aggregate.push_back({"pb_over_ip_strictly_increasing", increasing,
                                 std::to_string(report->rows.size()), "3"});
    if (report->rows.size() != 3) report->aggregate.back().passed = false;
  }
  if (report->suite == "monte_carlo") {
    long covered = 0;
    for (const auto& row : report->rows) covered += row.checks.front().passed ? 1 : 0;
    long total = report->rows.size();
    long needed = (9 * total + 9) / 10;
    report->aggregate.push_back({"mc_coverage_at_least_90_percent", covered >= needed,
                                 std::to_string(covered), std::to_string(needed)});
  }
  // Worst observed ratios of the LP optimum to the best simple mechanism.
  Rational worst_single = 0, worst_multi = 0;
  bool single = false, multi = false;
  for (const auto& row : report->rows) {
    auto get = [&](const char* key) -> const Rational* {
      auto it = row.columns.find(key);
      return it == row.columns.end() ? nullptr : &it->second;
    };
    const Rational* opt = get("opt_profit");
    if (opt == nullptr || *opt == 0) continue;
    if (get("ip") && get("pp") && get("pb")) {
      Rational best = Max(*get("ip"), Max(*get("pp"), *get("pb")));
      if (best > 0) {
        worst_single = Max(worst_single, *opt / best);
        single = true;
      }
    }
    if (get("csip") && get("rspp") && get("spb")) {
      Rational best = Max(*get("csip"), Max(*get("rspp"), *get("spb")));
      if (best > 0) {
        worst_multi = Max(worst_multi, *opt / best);
        multi = true;
      }
    }
  }
  if (single) report->summary["worst_opt_over_max_ip_pp_pb"] = FormatRational(worst_single);
  if (multi) report->summary["worst_opt_over_max_csip_rspp_spb"] = FormatRational(worst_multi);
}

}  // namespace

std::vector<std::string> SuiteNames() {
  return {"benchmark",       "single_additive", "single_constrained", "copies_bound",
          "vbar_properties", "multi_buyer",     "ocrs",               "bundle_gap",
          "single_item",     "monte_carlo"};
}

std::vector<NamedInstance> DefaultCorpus(const std::string& suite, std::uint64_t seed) {
  if (suite == "benchmark") {
    return GenerateCorpus(Params(200, 1, 2, 1, 2, 3, 2, FamilyMode::kDownwardClosed), seed, suite);
  }
  if (suite == "single_additive") {
    return GenerateCorpus(Params(100, 1, 1, 1, 3, 3, 2, FamilyMode::kAdditive), seed, suite);
  }
  if (suite == "single_constrained") {
    return GenerateCorpus(Params(100, 1, 1, 2, 3, 3, 2, FamilyMode::kDownwardClosed), seed, suite);
  }
  if (suite == "copies_bound") {
    return GenerateCorpus(Params(100, 1, 1, 1, 3, 3, 2, FamilyMode::kDownwardClosed), seed, suite);
  }
  if (suite == "vbar_properties") {
    return GenerateCorpus(Params(50, 1, 2, 1, 3, 3, 2, FamilyMode::kDownwardClosed), seed, suite);
  }
  if (suite == "multi_buyer") {
    return GenerateCorpus(Params(50, 2, 2, 2, 2, 3, 2, FamilyMode::kMatroid), seed, suite);
  }
  if (suite == "ocrs") return MatroidPairCorpus(seed);
  if (suite == "bundle_gap") return BundleGapCorpus();
  if (suite == "single_item") {
    return GenerateCorpus(Params(50, 1, 1, 1, 1, 4, 3, FamilyMode::kAdditive), seed, suite);
  }
  if (suite == "monte_carlo") {
    return GenerateCorpus(Params(20, 1, 2, 1, 2, 3, 2, FamilyMode::kDownwardClosed), seed, suite);
  }
  throw InvalidInput("unknown suite '" + suite + "'");
}

bool SuiteApplies(const std::string& suite, const Instance& inst) {
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  if (suite == "bundle_gap") return n == 1;
  if (!inst.HasTypeSpaces()) return false;
  if (suite == "benchmark") return n * m <= 6;
  if (suite == "single_additive") return n == 1 && inst.family(0).IsAdditive() && m <= 4;
  if (suite == "single_constrained" || suite == "copies_bound") return n == 1 && m <= 4;
  if (suite == "vbar_properties") return m <= 3;
  if (suite == "multi_buyer" || suite == "ocrs") return inst.AllMatroids() && n * m <= 6;
  if (suite == "single_item") return n == 1 && m == 1;
  if (suite == "monte_carlo") return n * m <= 6;
  throw InvalidInput("unknown suite '" + suite + "'");
}

InstanceRow RunInstance(const std::string& suite, const NamedInstance& item,
                        const SuiteOptions& options, long index) {
  InstanceRow row;
  row.id = item.id;
  const Instance& inst = item.inst;
  if (suite == "benchmark") {
    BenchmarkSuite(inst, &row);
  } else if (suite == "single_additive") {
    SingleBuyerSuite(inst, &row, true);
  } else if (suite == "single_constrained") {
    SingleBuyerSuite(inst, &row, false);
  } else if (suite == "copies_bound") {
    CopiesBoundSuite(inst, &row);
  } else if (suite == "vbar_properties") {
    PropertySuite(inst, &row);
  } else if (suite == "multi_buyer") {
    MultiBuyerSuite(inst, &row);
  } else if (suite == "ocrs") {
    OcrsSuite(inst, &row);
  } else if (suite == "bundle_gap") {
    BundleGapSuite(inst, &row);
  } else if (suite == "single_item") {
    SingleItemSuite(inst, &row);
  } else if (suite == "monte_carlo") {
    MonteCarloSuite(inst, &row, options, index);
  } else {
    throw InvalidInput("unknown suite '" + suite + "'");
  }
  return row;
}

SuiteReport RunSuite(const std::string& suite, const std::vector<NamedInstance>& corpus,
                     const SuiteOptions& options) {
  std::vector<const NamedInstance*> items;
  long skipped = 0;
  for (const auto& item : corpus) {
    if (SuiteApplies(suite, item.inst)) {
      items.push_back(&item);
    } else {
      ++skipped;
    }
  }
  std::sort(items.begin(), items.end(),
            [](const NamedInstance* a, const NamedInstance* b) { return a->id < b->id; });
  std::vector<InstanceRow> rows(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t k = next++; k < items.size(); k = next++) {
      try {
        rows[k] = RunInstance(suite, *items[k], options, static_cast<long>(k));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (size_t k = 0; k < items.size(); ++k) {
    if (!errors[k]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    std::string where;
    if (!options.failure_dir.empty()) {
      std::filesystem::create_directories(options.failure_dir);
      where = (std::filesystem::path(options.failure_dir) / ("failed_" + items[k]->id + ".json")).string();
      SaveInstance(items[k]->inst, where);
      where = " (saved to " + where + ")";
    }
    throw SuiteAborted("suite " + suite + " aborted on " + items[k]->id + where + ": " + what);
  }
  SuiteReport report;
  report.suite = suite;
  report.rows = std::move(rows);
  Aggregate(&report);
  for (const auto& row : report.rows) {
    for (const auto& check : row.checks) {
      ++report.checks_total;
      if (!check.passed) {
        ++report.checks_failed;
        if (!row.advisory_checks) report.passed = false;
      }
    }
  }
  for (const auto& check : report.aggregate) {
    ++report.checks_total;
    if (!check.passed) {
      ++report.checks_failed;
      report.passed = false;
    }
  }
  report.summary["instances"] = std::to_string(report.rows.size());
  report.summary["skipped"] = std::to_string(skipped);
  return report;
}

}  // namespace permitlab::harness
