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

#include "treeweights/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "treeweights/errors.hpp"

namespace treeweights {

// ---------------------------------------------------------------------------
// WeightedTree

template <class T>
NodeId WeightedTree<T>::Builder::add_leaf(Label label) {
  if (label <= 0) throw ArgumentError("leaf labels must be positive, got " + std::to_string(label));
  labels_.push_back(label);
  return static_cast<NodeId>(labels_.size() - 1);
}

template <class T>
NodeId WeightedTree<T>::Builder::add_internal() {
  labels_.push_back(0);
  return static_cast<NodeId>(labels_.size() - 1);
}

template <class T>
int WeightedTree<T>::Builder::add_edge(NodeId u, NodeId v, T weight) {
  edges_.push_back(Edge{u, v, std::move(weight)});
  return static_cast<int>(edges_.size() - 1);
}

template <class T>
std::optional<NodeId> WeightedTree<T>::Builder::find_leaf(Label label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

template <class T>
WeightedTree<T> WeightedTree<T>::Builder::build() && {
  const auto n_nodes = labels_.size();
  if (n_nodes < 2) throw ArgumentError("a tree needs at least two leaves");
  if (edges_.size() + 1 != n_nodes) {
    throw ArgumentError("edge count " + std::to_string(edges_.size()) + " does not match " +
                        std::to_string(n_nodes) + " nodes");
  }

  WeightedTree tree;
  tree.node_labels_ = std::move(labels_);
  tree.edges_ = std::move(edges_);
  tree.adjacency_.assign(n_nodes, {});
  for (std::size_t e = 0; e < tree.edges_.size(); ++e) {
    const auto& edge = tree.edges_[e];
    auto in_range = [&](NodeId v) { return v >= 0 && static_cast<std::size_t>(v) < n_nodes; };
    if (!in_range(edge.u) || !in_range(edge.v) || edge.u == edge.v) {
      throw ArgumentError("edge " + std::to_string(e) + " has invalid endpoints");
    }
    tree.adjacency_[edge.u].push_back({edge.v, static_cast<int>(e)});
    tree.adjacency_[edge.v].push_back({edge.u, static_cast<int>(e)});
  }

  // Connectivity (with |E| = |V| - 1 this also rules out cycles).
  std::vector<char> seen(n_nodes, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& inc : tree.adjacency_[v]) {
      if (!seen[inc.node]) {
        seen[inc.node] = 1;
        ++reached;
        stack.push_back(inc.node);
      }
    }
  }
  if (reached != n_nodes) throw ArgumentError("graph is not connected");

  Label max_label = 0;
  for (std::size_t v = 0; v < n_nodes; ++v) {
    Label l = tree.node_labels_[v];
    int deg = static_cast<int>(tree.adjacency_[v].size());
    if (l > 0) {
      if (deg != 1) throw ArgumentError("labeled node " + std::to_string(l) + " is not a leaf");
      tree.sorted_labels_.push_back(l);
      max_label = std::max(max_label, l);
    } else if (deg < 2) {
      throw ArgumentError("unlabeled node of degree " + std::to_string(deg));
    }
  }
  std::sort(tree.sorted_labels_.begin(), tree.sorted_labels_.end());
  if (std::adjacent_find(tree.sorted_labels_.begin(), tree.sorted_labels_.end()) !=
      tree.sorted_labels_.end()) {
    throw ArgumentError("duplicate leaf label");
  }
  if (tree.sorted_labels_.size() < 2) throw ArgumentError("a tree needs at least two leaves");
  tree.leaf_index_.assign(static_cast<std::size_t>(max_label) + 1, -1);
  for (std::size_t v = 0; v < n_nodes; ++v) {
    if (tree.node_labels_[v] > 0) tree.leaf_index_[tree.node_labels_[v]] = static_cast<NodeId>(v);
  }
  return tree;
}

template <class T>
typename WeightedTree<T>::Builder WeightedTree<T>::to_builder() const {
  Builder b;
  for (Label l : node_labels_) {
    if (l > 0) {
      b.add_leaf(l);
    } else {
      b.add_internal();
    }
  }
  for (const auto& e : edges_) b.add_edge(e.u, e.v, e.weight);
  return b;
}

template <class T>
bool WeightedTree<T>::has_label(Label label) const {
  return label > 0 && static_cast<std::size_t>(label) < leaf_index_.size() && leaf_index_[label] >= 0;
}

template <class T>
NodeId WeightedTree<T>::leaf_node(Label label) const {
  if (!has_label(label)) throw LabelError("unknown leaf label " + std::to_string(label));
  return leaf_index_[label];
}

// ---------------------------------------------------------------------------
// Weights

namespace {

// Distances from `source` to every node.
template <class T>
std::vector<T> distances_from(const WeightedTree<T>& tree, NodeId source) {
  std::vector<T> dist(tree.node_count());
  std::vector<NodeId> parent(tree.node_count(), -1);
  std::vector<NodeId> stack{source};
  parent[source] = source;
  dist[source] = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& inc : tree.neighbors(v)) {
      if (parent[inc.node] != -1) continue;
      parent[inc.node] = v;
      dist[inc.node] = dist[v] + tree.edges()[inc.edge].weight;
      stack.push_back(inc.node);
    }
  }
  return dist;
}

}  // namespace

template <class T>
T pairwise_weight(const WeightedTree<T>& tree, Label i, Label j) {
  NodeId a = tree.leaf_node(i);
  NodeId b = tree.leaf_node(j);
  if (i == j) throw ArgumentError("pairwise_weight needs two distinct labels");
  // Walk from a, stopping once b is reached.
  std::vector<NodeId> parent(tree.node_count(), -1);
  std::vector<T> dist(tree.node_count());
  std::vector<NodeId> stack{a};
  parent[a] = a;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (v == b) return dist[v];
    for (const auto& inc : tree.neighbors(v)) {
      if (parent[inc.node] != -1) continue;
      parent[inc.node] = v;
      dist[inc.node] = dist[v] + tree.edges()[inc.edge].weight;
      stack.push_back(inc.node);
    }
  }
  return dist[b];
}

template <class T>
T triple_weight(const WeightedTree<T>& tree, Label i, Label j, Label k) {
  if (i == j || j == k || i == k) throw ArgumentError("triple_weight needs three distinct labels");
  return T((pairwise_weight(tree, i, j) + pairwise_weight(tree, j, k) +
            pairwise_weight(tree, i, k)) /
           2);
}

template <class T>
T k_weight(const WeightedTree<T>& tree, std::span<const Label> subset) {
  if (subset.size() < 2) throw ArgumentError("k_weight needs at least two labels");
  std::vector<char> terminal(tree.node_count(), 0);
  for (Label l : subset) {
    NodeId v = tree.leaf_node(l);
    if (terminal[v]) throw ArgumentError("k_weight labels must be distinct");
    terminal[v] = 1;
  }
  std::vector<int> degree(tree.node_count());
  std::vector<char> removed(tree.node_count(), 0);
  std::vector<NodeId> queue;
  for (std::size_t v = 0; v < tree.node_count(); ++v) {
    degree[v] = tree.degree(static_cast<NodeId>(v));
    if (degree[v] <= 1 && !terminal[v]) queue.push_back(static_cast<NodeId>(v));
  }
  std::vector<char> edge_removed(tree.edge_count(), 0);
  while (!queue.empty()) {
    NodeId v = queue.back();
    queue.pop_back();
    if (removed[v]) continue;
    removed[v] = 1;
    for (const auto& inc : tree.neighbors(v)) {
      if (edge_removed[inc.edge]) continue;
      edge_removed[inc.edge] = 1;
      if (--degree[inc.node] <= 1 && !terminal[inc.node] && !removed[inc.node]) {
        queue.push_back(inc.node);
      }
    }
  }
  T total = 0;
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    if (!edge_removed[e]) total += tree.edges()[e].weight;
  }
  return total;
}

template <class T>
std::vector<T> leaf_distance_matrix(const WeightedTree<T>& tree) {
  const auto& labels = tree.labels();
  const std::size_t n = labels.size();
  std::vector<T> out(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    auto dist = distances_from(tree, tree.leaf_node(labels[a]));
    for (std::size_t b = 0; b < n; ++b) out[a * n + b] = dist[tree.leaf_node(labels[b])];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

template <class T>
struct RootedNode {
  Label label = 0;
  T weight_to_parent{};
  Label min_label = 0;
  std::vector<int> children;
};

// Follows an edge out of `from` through degree-2 internal nodes.
template <class T>
struct Walk {
  NodeId end;
  NodeId before_end;
  T weight;
};

template <class T>
Walk<T> walk_chain(const WeightedTree<T>& tree, NodeId from,
                   const typename WeightedTree<T>::Incidence& inc) {
  NodeId prev = from;
  NodeId cur = inc.node;
  T weight = tree.edges()[inc.edge].weight;
  while (!tree.is_leaf(cur) && tree.degree(cur) == 2) {
    const auto& nb = tree.neighbors(cur);
    const auto& next = nb[0].node == prev ? nb[1] : nb[0];
    weight += tree.edges()[next.edge].weight;
    prev = cur;
    cur = next.node;
  }
  return {cur, prev, weight};
}

// Compressed rooted tree with children ordered by smallest leaf label.
template <class T>
std::vector<RootedNode<T>> rooted_canonical(const WeightedTree<T>& tree) {
  const NodeId first_leaf = tree.leaf_node(tree.labels().front());
  NodeId root = first_leaf;
  if (tree.leaf_count() > 2) root = walk_chain(tree, first_leaf, tree.neighbors(first_leaf)[0]).end;

  std::vector<RootedNode<T>> nodes;
  std::function<int(NodeId, NodeId)> build = [&](NodeId v, NodeId came_from) -> int {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[id].label = tree.label(v);
    nodes[id].min_label = tree.is_leaf(v) ? tree.label(v) : 0;
    for (const auto& inc : tree.neighbors(v)) {
      if (inc.node == came_from) continue;
      Walk<T> w = walk_chain(tree, v, inc);
      int child = build(w.end, w.before_end);
      nodes[child].weight_to_parent = w.weight;
      nodes[id].children.push_back(child);
    }
    for (int c : nodes[id].children) {
      if (nodes[id].min_label == 0 || nodes[c].min_label < nodes[id].min_label) {
        nodes[id].min_label = nodes[c].min_label;
      }
    }
    std::sort(nodes[id].children.begin(), nodes[id].children.end(),
              [&](int a, int b) { return nodes[a].min_label < nodes[b].min_label; });
    return id;
  };
  build(root, -1);
  return nodes;
}

}  // namespace

template <class T>
WeightedTree<T> canonicalize(const WeightedTree<T>& tree) {
  auto rooted = rooted_canonical(tree);
  typename WeightedTree<T>::Builder b;
  std::function<NodeId(int)> emit = [&](int id) -> NodeId {
    NodeId v = rooted[id].label > 0 ? b.add_leaf(rooted[id].label) : b.add_internal();
    for (int c : rooted[id].children) {
      NodeId child = emit(c);
      b.add_edge(v, child, rooted[c].weight_to_parent);
    }
    return v;
  };
  emit(0);
  return std::move(b).build();
}

template <class T>
WeightedTree<T> contract_internal_edges(const WeightedTree<T>& tree, const T& threshold) {
  const std::size_t n = tree.node_count();
  std::vector<NodeId> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  std::function<NodeId(NodeId)> find = [&](NodeId v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  std::vector<char> contracted(tree.edge_count(), 0);
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    const auto& edge = tree.edges()[e];
    if (tree.is_leaf(edge.u) || tree.is_leaf(edge.v)) continue;
    if (abs_value(edge.weight) <= threshold) {
      contracted[e] = 1;
      rep[find(edge.u)] = find(edge.v);
    }
  }
  typename WeightedTree<T>::Builder b;
  std::vector<NodeId> new_id(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    NodeId r = find(static_cast<NodeId>(v));
    if (new_id[r] == -1) new_id[r] = tree.is_leaf(r) ? b.add_leaf(tree.label(r)) : b.add_internal();
  }
  for (std::size_t e = 0; e < tree.edge_count(); ++e) {
    if (contracted[e]) continue;
    const auto& edge = tree.edges()[e];
    b.add_edge(new_id[find(edge.u)], new_id[find(edge.v)], edge.weight);
  }
  return canonicalize(std::move(b).build());
}

template <class T>
bool tree_equal(const WeightedTree<T>& a, const WeightedTree<T>& b, const T& tol) {
  if (a.labels() != b.labels()) return false;
  auto ca = canonicalize(a);
  auto cb = canonicalize(b);
  if (ca.node_count() != cb.node_count()) return false;
  for (std::size_t v = 0; v < ca.node_count(); ++v) {
    if (ca.label(static_cast<NodeId>(v)) != cb.label(static_cast<NodeId>(v))) return false;
  }
  for (std::size_t e = 0; e < ca.edge_count(); ++e) {
    const auto& ea = ca.edges()[e];
    const auto& eb = cb.edges()[e];
    if (ea.u != eb.u || ea.v != eb.v) return false;
    if (abs_value(T(ea.weight - eb.weight)) > tol) return false;
  }
  return true;
}

namespace {

template <class T, class Label_fn>
void write_nested(const std::vector<RootedNode<T>>& nodes, int id, std::ostringstream& out,
                  Label_fn&& edge_suffix) {
  const auto& node = nodes[id];
  if (node.children.empty()) {
    out << node.label;
    return;
  }
  out << '(';
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    if (k) out << ',';
    int c = node.children[k];
    write_nested(nodes, c, out, edge_suffix);
    edge_suffix(out, nodes[c]);
  }
  out << ')';
}

}  // namespace

template <class T>
std::string shape_key(const WeightedTree<T>& tree) {
  if (tree.leaf_count() == 2) {
    return "(" + std::to_string(tree.labels()[0]) + "," + std::to_string(tree.labels()[1]) + ")";
  }
  auto rooted = rooted_canonical(tree);
  std::ostringstream out;
  write_nested(rooted, 0, out, [](std::ostringstream&, const RootedNode<T>&) {});
  return out.str();
}

template <class T>
std::string to_newick(const WeightedTree<T>& tree) {
  if (tree.leaf_count() == 2) {
    T mid = half(pairwise_weight(tree, tree.labels()[0], tree.labels()[1]));
    std::string w = format_significant(mid, 12);
    return "(" + std::to_string(tree.labels()[0]) + ":" + w + "," +
           std::to_string(tree.labels()[1]) + ":" + w + ");";
  }
  auto rooted = rooted_canonical(tree);
  std::ostringstream out;
  write_nested(rooted, 0, out, [](std::ostringstream& os, const RootedNode<T>& child) {
    os << ':' << format_significant(child.weight_to_parent, 12);
  });
  out << ';';
  return out.str();
}

// ---------------------------------------------------------------------------
// Newick parsing

template <class T>
WeightedTree<T> parse_newick(std::string_view text) {
  // The parser collects nodes and edges, then repairs a unary root.
  struct Collected {
    std::vector<Label> labels;
    std::vector<typename WeightedTree<T>::Edge> edges;
  };
  Collected c;
  std::size_t pos = 0;
  auto line_of = [&](std::size_t p) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + std::min(p, text.size()), '\n'));
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("newick: " + what + " at offset " + std::to_string(pos), line_of(pos));
  };
  auto peek = [&]() { return pos < text.size() ? text[pos] : '\0'; };
  auto skip_space = [&]() {
    while (pos < text.size()) {
      char ch = text[pos];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos;
      } else if (ch == '[') {
        auto close = text.find(']', pos);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos = close + 1;
      } else {
        break;
      }
    }
  };
  auto skip_label = [&]() {
    while (pos < text.size()) {
      char ch = text[pos];
      if (ch == ':' || ch == ',' || ch == ')' || ch == ';' || ch == '(' || ch == '[' ||
          std::isspace(static_cast<unsigned char>(ch)))
        break;
      ++pos;
    }
  };
  auto parse_length = [&]() -> T {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size()) {
      char ch = text[pos];
      if (ch == ',' || ch == ')' || ch == ';' || ch == '[' || std::isspace(static_cast<unsigned char>(ch)))
        break;
      ++pos;
    }
    try {
      return parse_scalar<T>(text.substr(start, pos - start));
    } catch (const std::invalid_argument& e) {
      fail(std::string("bad branch length: ") + e.what());
    }
    return T(0);
  };
  auto parse_leaf_label = [&]() -> Label {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 9) fail("expected integer leaf label");
    long value = std::stol(std::string(text.substr(start, pos - start)));
    if (value <= 0) fail("leaf labels must be positive");
    return static_cast<Label>(value);
  };

  std::function<void(NodeId)> parse_children = [&](NodeId parent) {
    ++pos;  // '('
    while (true) {
      skip_space();
      NodeId child = static_cast<NodeId>(c.labels.size());
      if (peek() == '(') {
        c.labels.push_back(0);
        parse_children(child);
        skip_label();
      } else {
        c.labels.push_back(parse_leaf_label());
      }
      skip_space();
      if (peek() != ':') fail("missing branch length");
      ++pos;
      c.edges.push_back({parent, child, parse_length()});
      skip_space();
      if (peek() == ',') {
        ++pos;
        continue;
      }
      if (peek() == ')') {
        ++pos;
        return;
      }
      fail("expected ',' or ')'");
    }
  };

  skip_space();
  if (peek() != '(') fail("expected '('");
  c.labels.push_back(0);
  parse_children(0);
  skip_label();
  skip_space();
  if (peek() == ':') {
    ++pos;
    parse_length();
    skip_space();
  }
  if (peek() != ';') fail("expected ';'");
  ++pos;
  skip_space();
  if (pos != text.size()) fail("trailing characters after ';'");

  // A root with a single child carries no information.
  std::size_t root_degree = 0;
  for (const auto& e : c.edges) root_degree += (e.u == 0);
  typename WeightedTree<T>::Builder b;
  std::vector<NodeId> remap(c.labels.size(), -1);
  std::size_t first = root_degree == 1 ? 1 : 0;
  for (std::size_t v = first; v < c.labels.size(); ++v) {
    remap[v] = c.labels[v] > 0 ? b.add_leaf(c.labels[v]) : b.add_internal();
  }
  for (const auto& e : c.edges) {
    if (remap[e.u] < 0) continue;
    b.add_edge(remap[e.u], remap[e.v], e.weight);
  }
  try {
    return canonicalize(std::move(b).build());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("newick: ") + e.what(), 0);
  }
}

// ---------------------------------------------------------------------------
// Generation and cherries

template <class T>
WeightedTree<T> random_tree(const RandomTreeOptions& options, const T& weight_min,
                            const T& weight_max) {
  if (options.leaves < 2) throw ArgumentError("random_tree needs at least 2 leaves");
  if (weight_max < weight_min) throw ArgumentError("weight_min exceeds weight_max");
  std::mt19937_64 rng(options.seed);
  auto uniform_index = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
  auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Label> labels{1, 2};
  std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
  std::vector<NodeId> internals;
  for (Label m = 3; m <= options.leaves; ++m) {
    NodeId leaf = static_cast<NodeId>(labels.size());
    labels.push_back(m);
    if (!options.binary_only && !internals.empty() && unit() < options.multifurcation_rate) {
      NodeId host = internals[uniform_index(internals.size())];
      edges.push_back({host, leaf});
    } else {
      std::size_t e = uniform_index(edges.size());
      NodeId mid = static_cast<NodeId>(labels.size());
      labels.push_back(0);
      internals.push_back(mid);
      auto [u, v] = edges[e];
      edges[e] = {u, mid};
      edges.push_back({mid, v});
      edges.push_back({mid, leaf});
    }
  }

  typename WeightedTree<T>::Builder shape;
  for (Label l : labels) {
    if (l > 0) {
      shape.add_leaf(l);
    } else {
      shape.add_internal();
    }
  }
  for (auto [u, v] : edges) shape.add_edge(u, v, T(0));
  auto canonical = canonicalize(std::move(shape).build());

  // Weights are assigned in canonical edge order so they depend only on the
  // seed and the shape, not on the insertion history.
  const T span = weight_max - weight_min;
  constexpr long kGrid = 1'000'000;
  typename WeightedTree<T>::Builder b;
  for (std::size_t v = 0; v < canonical.node_count(); ++v) {
    if (canonical.is_leaf(static_cast<NodeId>(v))) {
      b.add_leaf(canonical.label(static_cast<NodeId>(v)));
    } else {
      b.add_internal();
    }
  }
  for (const auto& e : canonical.edges()) {
    long k = static_cast<long>(rng() % (kGrid + 1));
    T w = T(weight_min + span * T(k) / T(kGrid));
    b.add_edge(e.u, e.v, w);
  }
  return std::move(b).build();
}

template <class T>
std::vector<Bell<T>> cherries(const WeightedTree<T>& tree) {
  std::vector<Bell<T>> bells;
  if (tree.leaf_count() == 2) {
    T mid = half(pairwise_weight(tree, tree.labels()[0], tree.labels()[1]));
    bells.push_back({-1, {tree.labels()[0], tree.labels()[1]}, {mid, mid}});
    return bells;
  }
  for (std::size_t v = 0; v < tree.node_count(); ++v) {
    NodeId node = static_cast<NodeId>(v);
    if (tree.is_leaf(node) || tree.degree(node) < 3) continue;
    std::vector<std::pair<Label, T>> members;
    for (const auto& inc : tree.neighbors(node)) {
      Walk<T> w = walk_chain(tree, node, inc);
      if (tree.is_leaf(w.end)) members.emplace_back(tree.label(w.end), w.weight);
    }
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Bell<T> bell{node, {}, {}};
    for (auto& [l, w] : members) {
      bell.members.push_back(l);
      bell.twig_lengths.push_back(w);
    }
    bells.push_back(std::move(bell));
  }
  std::sort(bells.begin(), bells.end(),
            [](const Bell<T>& a, const Bell<T>& b) { return a.members.front() < b.members.front(); });
  return bells;
}

// ---------------------------------------------------------------------------
// Instantiations

#define TREEWEIGHTS_INSTANTIATE_TREE(T)                                                   \
  template class WeightedTree<T>;                                                         \
  template T pairwise_weight(const WeightedTree<T>&, Label, Label);                       \
  template T triple_weight(const WeightedTree<T>&, Label, Label, Label);                  \
  template T k_weight(const WeightedTree<T>&, std::span<const Label>);                    \
  template std::vector<T> leaf_distance_matrix(const WeightedTree<T>&);                   \
  template WeightedTree<T> canonicalize(const WeightedTree<T>&);                          \
  template WeightedTree<T> contract_internal_edges(const WeightedTree<T>&, const T&);     \
  template bool tree_equal(const WeightedTree<T>&, const WeightedTree<T>&, const T&);     \
  template std::string shape_key(const WeightedTree<T>&);                                 \
  template WeightedTree<T> random_tree(const RandomTreeOptions&, const T&, const T&);     \
  template std::vector<Bell<T>> cherries(const WeightedTree<T>&);                         \
  template std::string to_newick(const WeightedTree<T>&);                                 \
  template WeightedTree<T> parse_newick<T>(std::string_view);

TREEWEIGHTS_INSTANTIATE_TREE(double)
TREEWEIGHTS_INSTANTIATE_TREE(Rational)

}  // namespace treeweights
