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

#include <cstdint>
#include <vector>

#include "treeweights/tree.hpp"
#include "treeweights/weights.hpp"

namespace treeweights {

/// S(i,j) over the same label set as its input; the diagonal is unused.
template <class T>
using SMatrix = DoubleWeights<T>;

/// S(i,j) = (n-2) D(i,j) - sum_k D(i,k) - sum_k D(j,k). n >= 3.
template <class T>
SMatrix<T> s_matrix(const DoubleWeights<T>& d);

/// S(i,j) = ((n-2)/2) sum_r D(i,j,r) - sum_{r,s} D(i,r,s) - sum_{r,s} D(j,r,s),
/// the inner sums running over 2-subsets avoiding i (resp. j). n >= 5.
template <class T>
SMatrix<T> s_matrix_triples(const TripleWeights<T>& t);

template <class T>
struct ScanRecord {
  Label column = 0;
  Label row = 0;            // smallest row attaining the column minimum
  T column_minimum{};
  T spread{};               // spread of D(., row) - D(., column) off rows row, column
  bool confirmed = false;   // spread <= epsilon
};

template <class T>
struct ScanResult {
  std::vector<std::pair<Label, Label>> pairs;  // confirmed, deduplicated, ascending
  std::vector<ScanRecord<T>> records;          // one per column
  std::vector<std::vector<Label>> bells;       // connected components of the confirmed pairs
  std::uint64_t entries_examined = 0;          // D and S entries read
};

/// One pass of column minima over S with star confirmation. n >= 4.
template <class T>
ScanResult<T> cherry_scan(const DoubleWeights<T>& d, const T& epsilon);

template <class T>
struct NjTelemetry {
  int rounds = 0;
  std::vector<int> bells_per_round;
  std::vector<std::uint64_t> entries_per_round;
  int fallback_joins = 0;
  /// Largest spread of a twig length over the choice of the free leaf x.
  T max_twig_spread{};
};

/// Joins a global minimum of S at every step (ties broken by (i, j)).
/// Inner edges with |w| <= contract_tol are contracted. n >= 2.
template <class T>
WeightedTree<T> nj_classic(const DoubleWeights<T>& d, const T& contract_tol = T(0),
                           NjTelemetry<T>* telemetry = nullptr);

/// Prunes every bell confirmed by cherry_scan in one round, falling back to
/// a single classic join when none is confirmed. n >= 2.
template <class T>
WeightedTree<T> nj_pruning(const DoubleWeights<T>& d, const T& epsilon, const T& contract_tol = T(0),
                           NjTelemetry<T>* telemetry = nullptr);

/// Neighbour selection on the triple S matrix with star confirmation
/// within epsilon, pruning down to five labels, then nj_classic on the
/// derived pairwise values. n >= 5.
template <class T>
WeightedTree<T> nj_from_triples(const TripleWeights<T>& t, const T& epsilon, const T& contract_tol = T(0),
                                NjTelemetry<T>* telemetry = nullptr);

}  // namespace treeweights
