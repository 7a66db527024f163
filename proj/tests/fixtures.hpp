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

#include <algorithm>
#include <cstdint>
#include <random>

#include "treeweights/tree.hpp"
#include "treeweights/weights.hpp"

namespace treeweights::testing {

using Q = Rational;
using RTree = WeightedTree<Rational>;

/// Five-leaf caterpillar: cherries {1,2} and {4,5}, leaf 3 between the two
/// inner edges. Twigs 1..5, inner edges 6 and 7.
inline RTree caterpillar(const Q& f1 = Q(6), const Q& f2 = Q(7)) {
  RTree::Builder b;
  NodeId u = b.add_internal();
  NodeId v = b.add_internal();
  NodeId w = b.add_internal();
  b.add_edge(b.add_leaf(1), u, Q(1));
  b.add_edge(b.add_leaf(2), u, Q(2));
  b.add_edge(u, v, f1);
  b.add_edge(b.add_leaf(3), v, Q(3));
  b.add_edge(v, w, f2);
  b.add_edge(b.add_leaf(4), w, Q(4));
  b.add_edge(b.add_leaf(5), w, Q(5));
  return canonicalize(std::move(b).build());
}

/// Quartet with cherries {1,2} (twigs 1, 2) and {3,4} (twigs 3, 4) and an
/// inner edge of 5.
inline RTree quartet() {
  RTree::Builder b;
  NodeId u = b.add_internal();
  NodeId v = b.add_internal();
  b.add_edge(b.add_leaf(1), u, Q(1));
  b.add_edge(b.add_leaf(2), u, Q(2));
  b.add_edge(u, v, Q(5));
  b.add_edge(b.add_leaf(3), v, Q(3));
  b.add_edge(b.add_leaf(4), v, Q(4));
  return std::move(b).build();
}

inline RTree star(int n, const Q& twig) {
  RTree::Builder b;
  NodeId c = b.add_internal();
  for (int l = 1; l <= n; ++l) b.add_edge(b.add_leaf(l), c, twig);
  return std::move(b).build();
}

inline RTree random_rational(int n, std::uint64_t seed, bool binary) {
  RandomTreeOptions o;
  o.leaves = n;
  o.seed = seed;
  o.binary_only = binary;
  return random_tree<Rational>(o, Q(1, 10), Q(10));
}

inline std::vector<std::pair<Label, Label>> bell_pairs(const RTree& tree) {
  std::vector<std::pair<Label, Label>> out;
  for (const auto& bell : cherries(tree)) {
    for (std::size_t i = 0; i < bell.members.size(); ++i)
      for (std::size_t j = i + 1; j < bell.members.size(); ++j) out.emplace_back(bell.members[i], bell.members[j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace treeweights::testing
