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

#include "sparse_lu.h"

#include <algorithm>
#include <limits>

namespace permitlab::internal {

bool SparseLu::Factor(int dim, const std::vector<const SparseVector*>& columns) {
  dim_ = dim;
  rows_.assign(dim, SparseVector());
  for (int col = 0; col < dim; ++col) {
    for (const auto& [r, v] : *columns[col]) {
      if (v != 0) rows_[r].push_back({col, v});
    }
  }
  std::vector<std::vector<int>> col_rows(dim);
  for (int r = 0; r < dim; ++r) {
    std::sort(rows_[r].begin(), rows_[r].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& e : rows_[r]) col_rows[e.first].push_back(r);
  }
  std::vector<bool> row_done(dim, false);
  std::vector<bool> col_done(dim, false);
  pivot_row_.clear();
  pivot_col_.clear();
  ops_.clear();
  auto entry = [&](int r, int col) -> const Rational* {
    const SparseVector& row = rows_[r];
    auto it = std::lower_bound(
        row.begin(), row.end(), col,
        [](const auto& e, int c) { return e.first < c; });
    if (it == row.end() || it->first != col) return nullptr;
    return &it->second;
  };
  SparseVector merged;
  for (int step = 0; step < dim; ++step) {
    // Column with the fewest live entries.
    int best_col = -1;
    size_t best_count = std::numeric_limits<size_t>::max();
    for (int col = 0; col < dim; ++col) {
      if (col_done[col]) continue;
      auto& list = col_rows[col];
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](int r) {
                                  return row_done[r] || entry(r, col) == nullptr;
                                }),
                 list.end());
      if (list.size() < best_count) {
        best_count = list.size();
        best_col = col;
        if (best_count <= 1) break;
      }
    }
    if (best_count == 0) return false;
    int best_row = -1;
    for (int r : col_rows[best_col]) {
      if (best_row < 0 || rows_[r].size() < rows_[best_row].size()) best_row = r;
    }
    const Rational pivot = *entry(best_row, best_col);
    row_done[best_row] = true;
    col_done[best_col] = true;
    pivot_row_.push_back(best_row);
    pivot_col_.push_back(best_col);
    const SparseVector& prow = rows_[best_row];
    for (int r : col_rows[best_col]) {
      if (r == best_row) continue;
      const Rational* a = entry(r, best_col);
      if (a == nullptr) continue;
      Rational factor = *a / pivot;
      ops_.push_back({r, best_row, factor});
      merged.clear();
      const SparseVector& row = rows_[r];
      size_t x = 0;
      size_t y = 0;
      while (x < row.size() || y < prow.size()) {
        if (y == prow.size() || (x < row.size() && row[x].first < prow[y].first)) {
          merged.push_back(row[x]);
          ++x;
        } else if (x == row.size() || prow[y].first < row[x].first) {
          if (!col_done[prow[y].first]) {
            merged.push_back({prow[y].first, -factor * prow[y].second});
            col_rows[prow[y].first].push_back(r);
          }
          ++y;
        } else {
          if (row[x].first != best_col) {
            Rational v = row[x].second - factor * prow[y].second;
            if (v != 0) merged.push_back({row[x].first, v});
          }
          ++x;
          ++y;
        }
      }
      rows_[r].swap(merged);
    }
    col_rows[best_col].clear();
  }
  col_entries_.assign(dim, SparseVector());
  for (int r = 0; r < dim; ++r) {
    for (const auto& [col, v] : rows_[r]) col_entries_[col].push_back({r, v});
  }
  return true;
}

std::vector<Rational> SparseLu::Solve(std::vector<Rational> rhs) const {
  for (const Op& op : ops_) {
    if (rhs[op.source] != 0) rhs[op.target] -= op.factor * rhs[op.source];
  }
  std::vector<Rational> x(dim_);
  for (int k = dim_ - 1; k >= 0; --k) {
    const int r = pivot_row_[k];
    const int col = pivot_col_[k];
    Rational acc = rhs[r];
    Rational diag;
    for (const auto& [c2, v] : rows_[r]) {
      if (c2 == col) {
        diag = v;
      } else if (x[c2] != 0) {
        acc -= v * x[c2];
      }
    }
    x[col] = acc / diag;
  }
  return x;
}

std::vector<Rational> SparseLu::SolveTransposed(
    const std::vector<Rational>& rhs) const {
  std::vector<Rational> z(dim_);
  for (int k = 0; k < dim_; ++k) {
    const int r = pivot_row_[k];
    const int col = pivot_col_[k];
    Rational acc = rhs[col];
    Rational diag;
    for (const auto& [r2, v] : col_entries_[col]) {
      if (r2 == r) {
        diag = v;
      } else if (z[r2] != 0) {
        acc -= v * z[r2];
      }
    }
    z[r] = acc / diag;
  }
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    if (z[it->target] != 0) z[it->source] -= it->factor * z[it->target];
  }
  return z;
}

}  // namespace permitlab::internal
