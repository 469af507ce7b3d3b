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

#include "permitlab/linear_program.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permitlab/errors.h"
#include "sparse_lu.h"

namespace permitlab {

using internal::SparseLu;
using internal::SparseVector;

int LinearProgram::AddColumn(std::string name, Rational objective, bool free) {
  names_.push_back(std::move(name));
  objective_.push_back(std::move(objective));
  free_.push_back(free);
  return num_columns() - 1;
}

int LinearProgram::AddRow(std::string name,
                          std::vector<std::pair<int, Rational>> coeffs,
                          RowSense sense, Rational rhs) {
  for (const auto& [j, v] : coeffs) {
    if (j < 0 || j >= num_columns()) {
      throw InvalidInput("row " + name + " references unknown column");
    }
  }
  rows_.push_back(LpRow{std::move(name), std::move(coeffs), sense, std::move(rhs)});
  return num_rows() - 1;
}

namespace {

// Equality form with nonnegative right-hand sides:
// rows scaled by sigma, free columns split, slack and artificial columns added.
struct StdForm {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVector> a;
  std::vector<Rational> c;
  std::vector<Rational> b;
  std::vector<int> orig;
  std::vector<int> orig_sign;
  std::vector<bool> artificial;
  std::vector<int> sigma;
  std::vector<int> initial_basis;

  int AddCol(SparseVector entries, Rational cost, int origin, int sign,
             bool art) {
    a.push_back(std::move(entries));
    c.push_back(std::move(cost));
    orig.push_back(origin);
    orig_sign.push_back(sign);
    artificial.push_back(art);
    return cols++;
  }
};

StdForm BuildStdForm(const LinearProgram& lp) {
  StdForm f;
  f.rows = lp.num_rows();
  f.sigma.resize(f.rows);
  f.b.resize(f.rows);
  std::vector<SparseVector> by_col(lp.num_columns());
  for (int r = 0; r < f.rows; ++r) {
    const LpRow& row = lp.row(r);
    f.sigma[r] = row.rhs < 0 ? -1 : 1;
    f.b[r] = f.sigma[r] * row.rhs;
    for (const auto& [j, v] : row.coeffs) {
      if (v != 0) by_col[j].push_back({r, f.sigma[r] * v});
    }
  }
  for (int j = 0; j < lp.num_columns(); ++j) {
    f.AddCol(by_col[j], lp.objective(j), j, 1, false);
    if (lp.is_free(j)) {
      SparseVector neg = by_col[j];
      for (auto& e : neg) e.second = -e.second;
      f.AddCol(neg, -lp.objective(j), j, -1, false);
    }
  }
  f.initial_basis.assign(f.rows, -1);
  for (int r = 0; r < f.rows; ++r) {
    RowSense sense = lp.row(r).sense;
    if (f.sigma[r] < 0 && sense != RowSense::kEqual) {
      sense = sense == RowSense::kLessEqual ? RowSense::kGreaterEqual
                                            : RowSense::kLessEqual;
    }
    if (sense == RowSense::kLessEqual) {
      f.initial_basis[r] = f.AddCol({{r, Rational(1)}}, 0, -1, 0, false);
    } else {
      if (sense == RowSense::kGreaterEqual) {
        f.AddCol({{r, Rational(-1)}}, 0, -1, 0, false);
      }
      f.initial_basis[r] = f.AddCol({{r, Rational(1)}}, 0, -1, 0, true);
    }
  }
  return f;
}

enum class Outcome { kOptimal, kUnbounded, kInfeasible, kFailed };

// Basis over a subset of rows (redundant rows are dropped).
struct Basis {
  std::vector<int> rows;
  std::vector<int> cols;
};

// Dense floating-point tableau simplex used to find a promising basis.
class FloatSimplex {
 public:
  explicit FloatSimplex(const StdForm& f, long max_pivots)
      : f_(f), max_pivots_(max_pivots) {}

  Outcome Run(Basis* out, long* pivots) {
    const int R = f_.rows;
    const int C = f_.cols;
    width_ = C + 1;
    t_.assign(static_cast<size_t>(R) * width_, 0.0);
    for (int j = 0; j < C; ++j) {
      for (const auto& [r, v] : f_.a[j]) At(r, j) = v.get_d();
    }
    // Tiny fixed perturbation of b against degenerate cycling; the exact
    // phase re-solves with the true b.
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> jitter(1e-9, 1e-8);
    for (int r = 0; r < R; ++r) At(r, C) = f_.b[r].get_d() + jitter(rng);
    basis_ = f_.initial_basis;
    redundant_.assign(R, false);
    barred_.assign(C, false);
    pivots_ = 0;
    bool has_art = false;
    std::vector<double> cost(C, 0.0);
    for (int j = 0; j < C; ++j) {
      if (f_.artificial[j]) {
        cost[j] = -1.0;
        has_art = true;
      }
    }
    if (has_art) {
      Outcome o = Optimize(cost);
      if (o != Outcome::kOptimal) return Outcome::kFailed;
      if (Objective(cost) < -1e-7) return Outcome::kInfeasible;
      for (int r = 0; r < R; ++r) {
        if (!f_.artificial[basis_[r]]) continue;
        int pick = -1;
        for (int j = 0; j < C && pick < 0; ++j) {
          if (!f_.artificial[j] && !IsBasic(j) && std::fabs(At(r, j)) > 1e-7) {
            pick = j;
          }
        }
        if (pick >= 0) {
          Pivot(r, pick);
        } else {
          redundant_[r] = true;
        }
      }
      for (int j = 0; j < C; ++j) barred_[j] = f_.artificial[j];
    }
    for (int j = 0; j < C; ++j) cost[j] = f_.artificial[j] ? 0.0 : f_.c[j].get_d();
    Outcome o = Optimize(cost);
    *pivots = pivots_;
    if (o != Outcome::kOptimal) return o;
    out->rows.clear();
    out->cols.clear();
    for (int r = 0; r < R; ++r) {
      if (redundant_[r]) continue;
      out->rows.push_back(r);
      out->cols.push_back(basis_[r]);
    }
    return Outcome::kOptimal;
  }

 private:
  double& At(int r, int j) { return t_[static_cast<size_t>(r) * width_ + j]; }

  bool IsBasic(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  double Objective(const std::vector<double>& cost) {
    double z = 0.0;
    for (int r = 0; r < f_.rows; ++r) z += cost[basis_[r]] * At(r, f_.cols);
    return z;
  }

  void Pivot(int p, int q) {
    const int C = f_.cols;
    double* prow = &t_[static_cast<size_t>(p) * width_];
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (int j = 0; j <= C; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        if (std::fabs(prow[j]) < 1e-14) prow[j] = 0.0;
        if (prow[j] != 0.0) nz_.push_back(j);
      }
    }
    prow[q] = 1.0;
    for (int r = 0; r < f_.rows; ++r) {
      if (r == p) continue;
      double* row = &t_[static_cast<size_t>(r) * width_];
      const double factor = row[q];
      if (factor == 0.0) continue;
      for (int j : nz_) {
        row[j] -= factor * prow[j];
        if (std::fabs(row[j]) < 1e-13) row[j] = 0.0;
      }
      row[q] = 0.0;
    }
    basis_[p] = q;
    ++pivots_;
  }

  Outcome Optimize(const std::vector<double>& cost) {
    const int R = f_.rows;
    const int C = f_.cols;
    std::vector<double> d(C);
    double last = -1e300;
    long stall = 0;
    bool bland = false;
    while (true) {
      if (pivots_ > max_pivots_) return Outcome::kFailed;
      // Reduced costs d_j = c_j - c_B^T T_j.
      for (int j = 0; j < C; ++j) d[j] = cost[j];
      for (int r = 0; r < R; ++r) {
        const double cb = cost[basis_[r]];
        if (cb == 0.0) continue;
        const double* row = &t_[static_cast<size_t>(r) * width_];
        for (int j = 0; j < C; ++j) d[j] -= cb * row[j];
      }
      int q = -1;
      double best = 1e-9;
      for (int j = 0; j < C; ++j) {
        if (barred_[j] || d[j] <= 1e-9) continue;
        if (bland) {
          q = j;
          break;
        }
        if (d[j] > best) {
          best = d[j];
          q = j;
        }
      }
      if (q < 0) return Outcome::kOptimal;
      int p = -1;
      double ratio = 0.0;
      double piv = 0.0;
      for (int r = 0; r < R; ++r) {
        if (redundant_[r]) continue;
        const double v = At(r, q);
        if (v <= 1e-9) continue;
        const double ra = std::max(At(r, C), 0.0) / v;
        bool take = p < 0 || ra < ratio - 1e-12;
        if (!take && ra <= ratio + 1e-12) {
          take = bland ? basis_[r] < basis_[p] : v > piv;
        }
        if (take) {
          p = r;
          ratio = ra;
          piv = v;
        }
      }
      if (p < 0) return Outcome::kUnbounded;
      Pivot(p, q);
      const double z = Objective(cost);
      if (z > last + 1e-9 * (1.0 + std::fabs(z))) {
        last = z;
        stall = 0;
        bland = false;
      } else if (++stall > 50) {
        bland = true;
      }
    }
  }

  const StdForm& f_;
  long max_pivots_;
  int width_ = 0;
  std::vector<double> t_;
  std::vector<int> basis_;
  std::vector<bool> redundant_;
  std::vector<bool> barred_;
  std::vector<int> nz_;
  long pivots_ = 0;
};

// Exact revised simplex with Bland's rule over a row subset.
class ExactSimplex {
 public:
  explicit ExactSimplex(const StdForm& f) : f_(f) {}

  long pivots() const { return pivots_; }
  const std::vector<Rational>& x_basic() const { return x_; }
  const std::vector<Rational>& y() const { return y_; }

  bool Factorize(const Basis& basis) {
    pos_.assign(f_.rows, -1);
    for (size_t k = 0; k < basis.rows.size(); ++k) pos_[basis.rows[k]] = k;
    const int dim = static_cast<int>(basis.rows.size());
    local_.assign(dim, SparseVector());
    std::vector<const SparseVector*> cols(dim);
    for (int k = 0; k < dim; ++k) {
      local_[k] = Restrict(basis.cols[k]);
      cols[k] = &local_[k];
    }
    return lu_.Factor(dim, cols);
  }

  SparseVector Restrict(int j) const {
    SparseVector out;
    for (const auto& [r, v] : f_.a[j]) {
      if (pos_[r] >= 0) out.push_back({pos_[r], v});
    }
    return out;
  }

  std::vector<Rational> Dense(const SparseVector& v, int dim) const {
    std::vector<Rational> out(dim);
    for (const auto& [k, x] : v) out[k] = x;
    return out;
  }

  // Requires a factorized basis. Computes primal values; false if negative.
  bool Primal(const Basis& basis) {
    const int dim = static_cast<int>(basis.rows.size());
    std::vector<Rational> rhs(dim);
    for (int k = 0; k < dim; ++k) rhs[k] = f_.b[basis.rows[k]];
    x_ = lu_.Solve(std::move(rhs));
    for (const Rational& v : x_) {
      if (v < 0) return false;
    }
    return true;
  }

  void Dual(const Basis& basis, const std::vector<Rational>& cost) {
    const int dim = static_cast<int>(basis.rows.size());
    std::vector<Rational> cb(dim);
    for (int k = 0; k < dim; ++k) cb[k] = cost[basis.cols[k]];
    y_ = lu_.SolveTransposed(cb);
  }

  Rational Reduced(int j, const std::vector<Rational>& cost) const {
    Rational d = cost[j];
    for (const auto& [r, v] : f_.a[j]) {
      if (pos_[r] >= 0 && y_[pos_[r]] != 0) d -= y_[pos_[r]] * v;
    }
    return d;
  }

  // Runs from a primal feasible basis.
  Outcome Optimize(Basis* basis, const std::vector<Rational>& cost,
                   const std::vector<bool>& barred) {
    while (true) {
      if (!Factorize(*basis)) return Outcome::kFailed;
      if (!Primal(*basis)) return Outcome::kFailed;
      Dual(*basis, cost);
      std::vector<bool> in_basis(f_.cols, false);
      for (int j : basis->cols) in_basis[j] = true;
      int q = -1;
      for (int j = 0; j < f_.cols && q < 0; ++j) {
        if (in_basis[j] || barred[j]) continue;
        if (Reduced(j, cost) > 0) q = j;
      }
      if (q < 0) return Outcome::kOptimal;
      const int dim = static_cast<int>(basis->rows.size());
      std::vector<Rational> dir = lu_.Solve(Dense(Restrict(q), dim));
      int p = -1;
      Rational ratio;
      for (int k = 0; k < dim; ++k) {
        if (dir[k] <= 0) continue;
        Rational ra = x_[k] / dir[k];
        if (p < 0 || ra < ratio ||
            (ra == ratio && basis->cols[k] < basis->cols[p])) {
          p = k;
          ratio = ra;
        }
      }
      if (p < 0) return Outcome::kUnbounded;
      basis->cols[p] = q;
      ++pivots_;
    }
  }

  // Two-phase solve from the slack/artificial basis.
  Outcome SolveFromScratch(Basis* basis) {
    basis->rows.clear();
    basis->cols.clear();
    for (int r = 0; r < f_.rows; ++r) {
      basis->rows.push_back(r);
      basis->cols.push_back(f_.initial_basis[r]);
    }
    std::vector<Rational> cost(f_.cols, Rational(0));
    std::vector<bool> barred(f_.cols, false);
    bool has_art = false;
    for (int j = 0; j < f_.cols; ++j) {
      if (f_.artificial[j]) {
        cost[j] = -1;
        has_art = true;
      }
    }
    if (has_art) {
      Outcome o = Optimize(basis, cost, barred);
      if (o != Outcome::kOptimal) return Outcome::kFailed;
      Rational z = 0;
      for (size_t k = 0; k < basis->cols.size(); ++k) {
        z += cost[basis->cols[k]] * x_[k];
      }
      if (z < 0) return Outcome::kInfeasible;
      // Drive zero-level artificials out or drop their rows.
      for (size_t k = 0; k < basis->cols.size();) {
        if (!f_.artificial[basis->cols[k]]) {
          ++k;
          continue;
        }
        if (!Factorize(*basis)) return Outcome::kFailed;
        std::vector<Rational> e(basis->rows.size());
        e[k] = 1;
        std::vector<Rational> w = lu_.SolveTransposed(e);
        std::vector<bool> in_basis(f_.cols, false);
        for (int j : basis->cols) in_basis[j] = true;
        int pick = -1;
        for (int j = 0; j < f_.cols && pick < 0; ++j) {
          if (f_.artificial[j] || in_basis[j]) continue;
          Rational dot = 0;
          for (const auto& [r, v] : f_.a[j]) {
            if (pos_[r] >= 0) dot += w[pos_[r]] * v;
          }
          if (dot != 0) pick = j;
        }
        if (pick >= 0) {
          basis->cols[k] = pick;
          ++pivots_;
          ++k;
        } else {
          basis->rows.erase(basis->rows.begin() + k);
          basis->cols.erase(basis->cols.begin() + k);
        }
      }
      for (int j = 0; j < f_.cols; ++j) barred[j] = f_.artificial[j];
    }
    for (int j = 0; j < f_.cols; ++j) cost[j] = f_.artificial[j] ? 0 : f_.c[j];
    return Optimize(basis, cost, barred);
  }

  const std::vector<int>& positions() const { return pos_; }

 private:
  const StdForm& f_;
  SparseLu lu_;
  std::vector<int> pos_;
  std::vector<SparseVector> local_;
  std::vector<Rational> x_;
  std::vector<Rational> y_;
  long pivots_ = 0;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp,
                              const SolverOptions& options) {
  StdForm f = BuildStdForm(lp);
  LpSolution sol;
  ExactSimplex exact(f);
  Basis basis;
  std::vector<Rational> cost(f.cols);
  std::vector<bool> barred(f.cols);
  for (int j = 0; j < f.cols; ++j) {
    cost[j] = f.artificial[j] ? Rational(0) : f.c[j];
    barred[j] = f.artificial[j];
  }
  Outcome outcome = Outcome::kFailed;
  if (!options.exact_only) {
    FloatSimplex fs(f, options.max_float_pivots);
    if (fs.Run(&basis, &sol.float_pivots) == Outcome::kOptimal) {
      bool artificial_basic = false;
      for (int j : basis.cols) artificial_basic = artificial_basic || f.artificial[j];
      if (!artificial_basic && exact.Factorize(basis) && exact.Primal(basis)) {
        outcome = exact.Optimize(&basis, cost, barred);
        sol.warm_start_certified = outcome == Outcome::kOptimal && exact.pivots() == 0;
      }
    }
  }
  if (outcome == Outcome::kFailed) outcome = exact.SolveFromScratch(&basis);
  sol.exact_pivots = exact.pivots();
  if (outcome == Outcome::kInfeasible) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  if (outcome == Outcome::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  if (outcome != Outcome::kOptimal) {
    throw std::logic_error("exact simplex failed to factor a basis");
  }
  // The last Optimize call left x and y for the final basis.
  sol.status = LpStatus::kOptimal;
  sol.x.assign(lp.num_columns(), Rational(0));
  for (size_t k = 0; k < basis.cols.size(); ++k) {
    const int j = basis.cols[k];
    if (f.orig[j] >= 0) sol.x[f.orig[j]] += f.orig_sign[j] * exact.x_basic()[k];
  }
  sol.duals.assign(lp.num_rows(), Rational(0));
  for (int r = 0; r < lp.num_rows(); ++r) {
    int k = exact.positions()[r];
    if (k >= 0) sol.duals[r] = f.sigma[r] * exact.y()[k];
  }
  sol.objective = 0;
  for (int j = 0; j < lp.num_columns(); ++j) sol.objective += lp.objective(j) * sol.x[j];
  std::string why;
  if (!CheckOptimalityCertificate(lp, sol.x, sol.duals, &why)) {
    throw VerificationError("optimality certificate rejected: " + why);
  }
  return sol;
}

bool CheckOptimalityCertificate(const LinearProgram& lp,
                                const std::vector<Rational>& x,
                                const std::vector<Rational>& duals,
                                std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (static_cast<int>(x.size()) != lp.num_columns() ||
      static_cast<int>(duals.size()) != lp.num_rows()) {
    return fail("certificate has the wrong dimensions");
  }
  std::vector<Rational> reduced(lp.num_columns());
  for (int j = 0; j < lp.num_columns(); ++j) {
    if (!lp.is_free(j) && x[j] < 0) return fail("negative column " + lp.column_name(j));
    reduced[j] = lp.objective(j);
  }
  Rational dual_obj = 0;
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LpRow& row = lp.row(r);
    Rational activity = 0;
    for (const auto& [j, v] : row.coeffs) {
      activity += v * x[j];
      if (duals[r] != 0) reduced[j] -= duals[r] * v;
    }
    bool ok = true;
    switch (row.sense) {
      case RowSense::kLessEqual:
        ok = activity <= row.rhs && duals[r] >= 0;
        break;
      case RowSense::kGreaterEqual:
        ok = activity >= row.rhs && duals[r] <= 0;
        break;
      case RowSense::kEqual:
        ok = activity == row.rhs;
        break;
    }
    if (!ok) return fail("row " + row.name + " violated or wrong dual sign");
    dual_obj += duals[r] * row.rhs;
  }
  Rational primal_obj = 0;
  for (int j = 0; j < lp.num_columns(); ++j) {
    primal_obj += lp.objective(j) * x[j];
    if (lp.is_free(j) ? reduced[j] != 0 : reduced[j] > 0) {
      return fail("column " + lp.column_name(j) + " has a wrong reduced cost");
    }
  }
  if (primal_obj != dual_obj) {
    return fail("objectives differ: " + FormatRational(primal_obj) + " vs " +
                FormatRational(dual_obj));
  }
  return true;
}

namespace {

std::string Decimal(const Rational& v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v.get_d());
  return buf;
}

std::string Term(const Rational& v, const std::string& name, bool first) {
  std::string out;
  if (v < 0) {
    out = first ? "-" : " - ";
    out += Decimal(-v);
  } else {
    out = first ? "" : " + ";
    out += Decimal(v);
  }
  return out + " " + name;
}

}  // namespace

std::string ToLpFormat(const LinearProgram& lp) {
  std::ostringstream out;
  out << "Maximize\n obj:";
  bool first = true;
  for (int j = 0; j < lp.num_columns(); ++j) {
    if (lp.objective(j) == 0) continue;
    out << " " << Term(lp.objective(j), lp.column_name(j), first);
    first = false;
  }
  if (first) out << " 0 " << (lp.num_columns() > 0 ? lp.column_name(0) : "x");
  out << "\nSubject To\n";
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LpRow& row = lp.row(r);
    out << " " << row.name << ":";
    bool f2 = true;
    for (const auto& [j, v] : row.coeffs) {
      if (v == 0) continue;
      out << " " << Term(v, lp.column_name(j), f2);
      f2 = false;
    }
    if (f2) out << " 0 " << lp.column_name(0);
    switch (row.sense) {
      case RowSense::kLessEqual:
        out << " <= ";
        break;
      case RowSense::kGreaterEqual:
        out << " >= ";
        break;
      case RowSense::kEqual:
        out << " = ";
        break;
    }
    out << Decimal(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_columns(); ++j) {
    if (lp.is_free(j)) out << " " << lp.column_name(j) << " free\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace permitlab
