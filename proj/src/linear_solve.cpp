// Copyright 2026 The treeweights Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treeweights/linear_solve.hpp"

#include <stdexcept>
#include <type_traits>

namespace treeweights {

template <class T>
LinearSolution<T> solve_linear_system(const Matrix<T>& a, const std::vector<T>& b, const T& tol) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("rhs size mismatch");

  Matrix<T> m(rows, std::vector<T>(cols + 1));
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(a[r].size()) != cols) throw std::invalid_argument("ragged matrix");
    for (int c = 0; c < cols; ++c) m[r][c] = a[r][c];
    m[r][cols] = b[r];
  }

  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    if constexpr (std::is_same_v<T, double>) {
      double best = 0;
      for (int r = rank; r < rows; ++r) {
        if (abs_value(m[r][c]) > best) {
          best = abs_value(m[r][c]);
          pivot = r;
        }
      }
      if (best <= 1e-12) pivot = -1;
    } else {
      for (int r = rank; r < rows && pivot < 0; ++r) {
        if (m[r][c] != 0) pivot = r;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    T inv = T(1 / m[rank][c]);
    for (int k = c; k <= cols; ++k) m[rank][k] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      T factor = m[r][c];
      for (int k = c; k <= cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }

  LinearSolution<T> out;
  out.rank = rank;
  out.x.assign(cols, T(0));
  for (int r = 0; r < rank; ++r) out.x[pivot_col[r]] = m[r][cols];
  for (int r = 0; r < rows; ++r) {
    T lhs = 0;
    for (int c = 0; c < cols; ++c) lhs += a[r][c] * out.x[c];
    T res = abs_value(T(lhs - b[r]));
    if (res > out.max_residual) out.max_residual = res;
  }
  out.consistent = out.max_residual <= tol;
  return out;
}

template LinearSolution<double> solve_linear_system(const Matrix<double>&, const std::vector<double>&,
                                                    const double&);
template LinearSolution<Rational> solve_linear_system(const Matrix<Rational>&,
                                                      const std::vector<Rational>&, const Rational&);

ExactSystem::ExactSystem(const Matrix<int>& a) {
  rows_ = static_cast<int>(a.size());
  unknowns_ = rows_ ? static_cast<int>(a[0].size()) : 0;
  const int width = unknowns_ + rows_;
  Matrix<Rational> m(rows_, std::vector<Rational>(width));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < unknowns_; ++c) m[r][c] = a[r][c];
    m[r][unknowns_ + r] = 1;
  }
  for (int c = 0; c < unknowns_ && rank_ < rows_; ++c) {
    int pivot = -1;
    for (int r = rank_; r < rows_ && pivot < 0; ++r) {
      if (m[r][c] != 0) pivot = r;
    }
    if (pivot < 0) continue;
    std::swap(m[rank_], m[pivot]);
    Rational inv = 1 / m[rank_][c];
    for (int k = 0; k < width; ++k) m[rank_][k] *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == rank_ || m[r][c] == 0) continue;
      Rational factor = m[r][c];
      for (int k = 0; k < width; ++k) m[r][k] -= factor * m[rank_][k];
    }
    pivot_column_.push_back(c);
    ++rank_;
  }
  // Consistency rows first so that solve() can bail out early.
  for (int r = rank_; r < rows_; ++r) transform_.emplace_back(m[r].begin() + unknowns_, m[r].end());
  for (int r = 0; r < rank_; ++r) transform_.emplace_back(m[r].begin() + unknowns_, m[r].end());
}

std::optional<std::vector<Rational>> ExactSystem::solve(const std::vector<Rational>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("rhs size mismatch");
  const int checks = rows_ - rank_;
  Rational acc;
  for (int r = 0; r < checks; ++r) {
    acc = 0;
    for (int c = 0; c < rows_; ++c) {
      if (transform_[r][c] != 0) acc += transform_[r][c] * b[c];
    }
    if (acc != 0) return std::nullopt;
  }
  std::vector<Rational> x(unknowns_);
  for (int r = 0; r < rank_; ++r) {
    acc = 0;
    const auto& row = transform_[checks + r];
    for (int c = 0; c < rows_; ++c) {
      if (row[c] != 0) acc += row[c] * b[c];
    }
    x[pivot_column_[r]] = acc;
  }
  return x;
}

}  // namespace treeweights
