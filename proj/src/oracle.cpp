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

#include "treeweights/oracle.hpp"

#include <functional>
#include <set>

#include "treeweights/errors.hpp"

namespace treeweights {
namespace {

using Tree = WeightedTree<Rational>;

// Copies the nodes of `shape`, applies `extra` to the builder and returns
// the canonical result.
Tree rebuild(const Tree& shape, int skip_edge, const std::function<void(Tree::Builder&)>& extra) {
  Tree::Builder b;
  for (std::size_t v = 0; v < shape.node_count(); ++v) {
    if (shape.is_leaf(static_cast<NodeId>(v))) {
      b.add_leaf(shape.label(static_cast<NodeId>(v)));
    } else {
      b.add_internal();
    }
  }
  const auto& edges = shape.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (e != skip_edge) b.add_edge(edges[e].u, edges[e].v, Rational(1));
  }
  extra(b);
  return canonicalize(std::move(b).build());
}

std::vector<std::uint32_t> compute_splits(const Tree& shape) {
  std::vector<std::uint32_t> out;
  const auto& edges = shape.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    std::uint32_t mask = 0;
    std::vector<NodeId> stack{edges[e].v};
    std::vector<char> seen(shape.node_count(), 0);
    seen[edges[e].u] = seen[edges[e].v] = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      if (shape.is_leaf(x)) mask |= 1u << (shape.label(x) - 1);
      for (const auto& inc : shape.neighbors(x)) {
        if (!seen[inc.node]) {
          seen[inc.node] = 1;
          stack.push_back(inc.node);
        }
      }
    }
    out.push_back(mask);
  }
  return out;
}

Topology make_topology(Tree shape) {
  Topology t;
  t.key = shape_key(shape);
  t.splits = compute_splits(shape);
  t.shape = std::move(shape);
  return t;
}

void require_range_labels(const std::vector<Label>& labels, int n) {
  for (int i = 0; i < n; ++i) {
    if (labels[i] != i + 1) throw LabelError("oracle targets must be labelled 1..n");
  }
}

std::vector<Rational> rhs_of(const DoubleWeights<Rational>& w) {
  std::vector<Rational> b;
  for (int i = 0; i < w.size(); ++i)
    for (int j = i + 1; j < w.size(); ++j) b.push_back(w.at_pos(i, j));
  return b;
}

std::vector<Rational> rhs_of(const TripleWeights<Rational>& w) {
  std::vector<Rational> b;
  for (int i = 0; i < w.size(); ++i)
    for (int j = i + 1; j < w.size(); ++j)
      for (int k = j + 1; k < w.size(); ++k) b.push_back(w.at_pos(i, j, k));
  return b;
}

Tree with_weights(const Topology& topo, const std::vector<Rational>& x) {
  Tree::Builder b;
  const auto& shape = topo.shape;
  for (std::size_t v = 0; v < shape.node_count(); ++v) {
    if (shape.is_leaf(static_cast<NodeId>(v))) {
      b.add_leaf(shape.label(static_cast<NodeId>(v)));
    } else {
      b.add_internal();
    }
  }
  const auto& edges = shape.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) b.add_edge(edges[e].u, edges[e].v, x[e]);
  return std::move(b).build();
}

template <class W>
std::optional<Tree> fit_impl(const Topology& topo, const W& target) {
  const int n = static_cast<int>(topo.shape.leaf_count());
  if (target.size() != n) throw ArgumentError("topology and target have different label sets");
  require_range_labels(target.labels(), n);
  ExactSystem system(fit_matrix(topo, W::kOrder));
  auto x = system.solve(rhs_of(target));
  if (!x) return std::nullopt;
  return with_weights(topo, *x);
}

bool all_positive(const Tree& tree) {
  for (const auto& e : tree.edges()) {
    if (!(e.weight > 0)) return false;
  }
  return true;
}

}  // namespace

std::vector<Topology> enumerate_topologies(int n, bool include_multifurcating) {
  if (n < 2 || n > 8) throw SizeError("topology enumeration supports 2 <= n <= 8", 2);
  Tree::Builder b;
  NodeId a = b.add_leaf(1);
  NodeId c = b.add_leaf(2);
  b.add_edge(a, c, Rational(1));
  std::vector<Topology> current{make_topology(canonicalize(std::move(b).build()))};
  for (int m = 3; m <= n; ++m) {
    std::vector<Topology> next;
    std::set<std::string> seen;
    auto keep = [&](Tree shape) {
      auto topo = make_topology(std::move(shape));
      if (seen.insert(topo.key).second) next.push_back(std::move(topo));
    };
    for (const auto& topo : current) {
      const auto& shape = topo.shape;
      const auto& edges = shape.edges();
      for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        keep(rebuild(shape, e, [&](Tree::Builder& bb) {
          NodeId mid = bb.add_internal();
          NodeId leaf = bb.add_leaf(m);
          bb.add_edge(edges[e].u, mid, Rational(1));
          bb.add_edge(mid, edges[e].v, Rational(1));
          bb.add_edge(mid, leaf, Rational(1));
        }));
      }
      if (!include_multifurcating) continue;
      for (std::size_t v = 0; v < shape.node_count(); ++v) {
        if (shape.is_leaf(static_cast<NodeId>(v))) continue;
        keep(rebuild(shape, -1, [&](Tree::Builder& bb) {
          bb.add_edge(static_cast<NodeId>(v), bb.add_leaf(m), Rational(1));
        }));
      }
    }
    current = std::move(next);
  }
  return current;
}

Matrix<int> fit_matrix(const Topology& topo, int order) {
  const int n = static_cast<int>(topo.shape.leaf_count());
  const int edges = static_cast<int>(topo.splits.size());
  Matrix<int> a;
  auto side_count = [&](int e, std::initializer_list<int> labels) {
    int count = 0;
    for (int l : labels) count += (topo.splits[e] >> (l - 1)) & 1u;
    return count;
  };
  if (order == 2) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        std::vector<int> row(edges);
        for (int e = 0; e < edges; ++e) row[e] = side_count(e, {i, j}) == 1 ? 1 : 0;
        a.push_back(std::move(row));
      }
    }
  } else if (order == 3) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
          std::vector<int> row(edges);
          for (int e = 0; e < edges; ++e) {
            int c = side_count(e, {i, j, k});
            row[e] = (c == 1 || c == 2) ? 1 : 0;
          }
          a.push_back(std::move(row));
        }
      }
    }
  } else {
    throw ArgumentError("order must be 2 or 3");
  }
  return a;
}

std::optional<WeightedTree<Rational>> fit_weights(const Topology& topo, const DoubleWeights<Rational>& target) {
  return fit_impl(topo, target);
}

std::optional<WeightedTree<Rational>> fit_weights(const Topology& topo, const TripleWeights<Rational>& target) {
  return fit_impl(topo, target);
}

Oracle::Entry& Oracle::entry(int n) {
  auto& slot = cache_[n];
  if (!slot) {
    slot = std::make_unique<Entry>();
    slot->topologies = enumerate_topologies(n, false);
  }
  return *slot;
}

const std::vector<Topology>& Oracle::topologies(int n) {
  std::lock_guard lock(mutex_);
  return entry(n).topologies;
}

const std::vector<ExactSystem>& Oracle::systems(int n, int order) {
  std::lock_guard lock(mutex_);
  auto& e = entry(n);
  auto it = e.systems.find(order);
  if (it == e.systems.end()) {
    std::vector<ExactSystem> built;
    for (const auto& topo : e.topologies) built.emplace_back(fit_matrix(topo, order));
    it = e.systems.emplace(order, std::move(built)).first;
  }
  return it->second;
}

template <class W>
std::optional<WeightedTree<Rational>> Oracle::brute(const W& target, int order, bool require_positive) {
  const int n = target.size();
  if (n < order || n > 8) throw SizeError("brute-force oracle supports n <= 8", order);
  require_range_labels(target.labels(), n);
  const auto& topos = topologies(n);
  const auto& sys = systems(n, order);
  const auto rhs = rhs_of(target);
  for (std::size_t t = 0; t < topos.size(); ++t) {
    auto x = sys[t].solve(rhs);
    if (!x) continue;
    auto tree = contract_internal_edges(with_weights(topos[t], *x), Rational(0));
    if (require_positive && !all_positive(tree)) continue;
    return tree;
  }
  return std::nullopt;
}

std::optional<WeightedTree<Rational>> Oracle::realizable_brute(const DoubleWeights<Rational>& target,
                                                               bool require_positive) {
  return brute(target, 2, require_positive);
}

std::optional<WeightedTree<Rational>> Oracle::realizable_brute(const TripleWeights<Rational>& target,
                                                               bool require_positive) {
  return brute(target, 3, require_positive);
}

namespace {
Oracle& shared_oracle() {
  static Oracle oracle;
  return oracle;
}
}  // namespace

std::optional<WeightedTree<Rational>> realizable_brute(const DoubleWeights<Rational>& target, bool require_positive) {
  return shared_oracle().realizable_brute(target, require_positive);
}

std::optional<WeightedTree<Rational>> realizable_brute(const TripleWeights<Rational>& target, bool require_positive) {
  return shared_oracle().realizable_brute(target, require_positive);
}

}  // namespace treeweights
