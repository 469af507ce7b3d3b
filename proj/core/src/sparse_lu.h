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

#ifndef PERMITLAB_SPARSE_LU_H_
#define PERMITLAB_SPARSE_LU_H_

#include <utility>
#include <vector>

#include "permitlab/rational.h"

namespace permitlab::internal {

using SparseVector = std::vector<std::pair<int, Rational>>;

// Exact sparse LU factorization of a square matrix given by its columns.
class SparseLu {
 public:
  // Returns false when the matrix is singular.
  bool Factor(int dim, const std::vector<const SparseVector*>& columns);

  // Solves B x = rhs (dense, length dim).
  std::vector<Rational> Solve(std::vector<Rational> rhs) const;
  // Solves B^T y = rhs.
  std::vector<Rational> SolveTransposed(const std::vector<Rational>& rhs) const;

 private:
  struct Op {
    int target;
    int source;
    Rational factor;
  };

  int dim_ = 0;
  std::vector<SparseVector> rows_;
  std::vector<int> pivot_row_;
  std::vector<int> pivot_col_;
  std::vector<Op> ops_;
  std::vector<SparseVector> col_entries_;
};

}  // namespace permitlab::internal

#endif  // PERMITLAB_SPARSE_LU_H_
