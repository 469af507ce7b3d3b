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

#ifndef PERMITLAB_LINEAR_PROGRAM_H_
#define PERMITLAB_LINEAR_PROGRAM_H_

#include <string>
#include <utility>
#include <vector>

#include "permitlab/rational.h"

namespace permitlab {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  std::string name;
  std::vector<std::pair<int, Rational>> coeffs;
  RowSense sense = RowSense::kLessEqual;
  Rational rhs;
};

// A maximization problem with exact rational data. Columns are nonnegative
// unless declared free.
class LinearProgram {
 public:
  int AddColumn(std::string name, Rational objective, bool free = false);
  int AddRow(std::string name, std::vector<std::pair<int, Rational>> coeffs,
             RowSense sense, Rational rhs);

  int num_columns() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::string& column_name(int j) const { return names_[j]; }
  const Rational& objective(int j) const { return objective_[j]; }
  bool is_free(int j) const { return free_[j]; }
  const LpRow& row(int r) const { return rows_[r]; }

 private:
  std::vector<std::string> names_;
  std::vector<Rational> objective_;
  std::vector<bool> free_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> x;
  // One multiplier per row; nonnegative on <= rows, nonpositive on >= rows.
  std::vector<Rational> duals;
  long float_pivots = 0;
  long exact_pivots = 0;
  // True when the float basis was certified without exact pivoting.
  bool warm_start_certified = false;
};

struct SolverOptions {
  // Skip the floating-point phase and pivot exactly from the slack basis.
  bool exact_only = false;
  long max_float_pivots = 100000;
};

// Solves the program exactly. Optimal results always carry a verified
// primal-dual certificate.
LpSolution SolveLinearProgram(const LinearProgram& lp,
                              const SolverOptions& options = {});

// Checks primal feasibility, dual feasibility and equal objectives exactly.
// On failure returns false and describes the first violation in `why`.
bool CheckOptimalityCertificate(const LinearProgram& lp,
                                const std::vector<Rational>& x,
                                const std::vector<Rational>& duals,
                                std::string* why);

// CPLEX LP text format with coefficients printed as decimals.
std::string ToLpFormat(const LinearProgram& lp);

}  // namespace permitlab

#endif  // PERMITLAB_LINEAR_PROGRAM_H_
