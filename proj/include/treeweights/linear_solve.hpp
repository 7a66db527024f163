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

#pragma once

#include <optional>
#include <vector>

#include "treeweights/numeric.hpp"

namespace treeweights {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
struct LinearSolution {
  std::vector<T> x;    // free variables are set to zero
  T max_residual{};    // max_i |(A x - b)_i|
  bool consistent = false;
  int rank = 0;
};

/// Gaussian elimination on [A | b]. Overdetermined systems are allowed;
/// `consistent` is max_residual <= tol. Partial pivoting by magnitude for
/// doubles, first nonzero pivot for rationals.
template <class T>
LinearSolution<T> solve_linear_system(const Matrix<T>& a, const std::vector<T>& b, const T& tol);

/// Exact solver for many right-hand sides against one integer coefficient
/// matrix. The elimination is done once; each solve is a few dot products.
class ExactSystem {
 public:
  explicit ExactSystem(const Matrix<int>& a);

  int rank() const { return rank_; }
  int unknowns() const { return unknowns_; }

  /// Solution with free variables at zero, or nullopt if inconsistent.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

 private:
  int rows_ = 0;
  int unknowns_ = 0;
  int rank_ = 0;
  // Row operations applied to b: reduced[r] = sum_c transform_[r][c] * b[c].
  std::vector<std::vector<Rational>> transform_;
  std::vector<int> pivot_column_;
};

}  // namespace treeweights
