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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "treeweights/linear_solve.hpp"
#include "treeweights/tree.hpp"
#include "treeweights/weights.hpp"

namespace treeweights {

/// Unweighted leaf-labelled tree on 1..n with internal degrees >= 3.
struct Topology {
  WeightedTree<Rational> shape;  // canonical, unit weights
  std::string key;               // shape_key(shape)
  /// Per edge of `shape`: leaves on the far side of the edge from its first
  /// endpoint, as a bit mask (bit l-1 for label l).
  std::vector<std::uint32_t> splits;
};

/// Every topology on 1..n once, in leaf-insertion order: leaf m subdivides
/// each edge (and, when multifurcating, joins each internal node) of every
/// topology on m-1 leaves, keeping first occurrences. 2 <= n <= 8.
std::vector<Topology> enumerate_topologies(int n, bool include_multifurcating);

/// Coefficient matrix expressing each target entry (pairs or triples in
/// lexicographic order) as a sum of edge weights of `topo`.
Matrix<int> fit_matrix(const Topology& topo, int order);

/// Exact edge weights reproducing `target` on `topo`, or none. The target's
/// labels must be 1..n with n the topology's leaf count.
std::optional<WeightedTree<Rational>> fit_weights(const Topology& topo, const DoubleWeights<Rational>& target);
std::optional<WeightedTree<Rational>> fit_weights(const Topology& topo, const TripleWeights<Rational>& target);

/// Caches binary topologies and their eliminated systems per (n, order).
class Oracle {
 public:
  const std::vector<Topology>& topologies(int n);

  /// First binary topology (enumeration order) whose exact fit, with zero
  /// inner edges contracted, reproduces the target; with require_positive
  /// the contracted tree must also have every edge > 0. n <= 8.
  std::optional<WeightedTree<Rational>> realizable_brute(const DoubleWeights<Rational>& target,
                                                         bool require_positive);
  std::optional<WeightedTree<Rational>> realizable_brute(const TripleWeights<Rational>& target,
                                                         bool require_positive);

 private:
  struct Entry {
    std::vector<Topology> topologies;
    std::map<int, std::vector<ExactSystem>> systems;  // by order
  };
  Entry& entry(int n);
  const std::vector<ExactSystem>& systems(int n, int order);
  template <class W>
  std::optional<WeightedTree<Rational>> brute(const W& target, int order, bool require_positive);

  std::mutex mutex_;
  std::map<int, std::unique_ptr<Entry>> cache_;
};

/// Shared Oracle instance.
std::optional<WeightedTree<Rational>> realizable_brute(const DoubleWeights<Rational>& target, bool require_positive);
std::optional<WeightedTree<Rational>> realizable_brute(const TripleWeights<Rational>& target, bool require_positive);

}  // namespace treeweights
