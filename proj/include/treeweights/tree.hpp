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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeweights/numeric.hpp"

namespace treeweights {

/// An unrooted tree whose leaves carry distinct positive labels and whose
/// edges carry real weights (zero and negative weights are allowed).
///
/// Instances are immutable; build them with `WeightedTree::Builder`, which
/// checks that the graph is a tree, that labels are distinct and positive,
/// that labeled nodes are leaves and that unlabeled nodes are not.
template <class T>
class WeightedTree {
 public:
  struct Edge {
    NodeId u;
    NodeId v;
    T weight;
  };
  struct Incidence {
    NodeId node;
    int edge;
  };

  class Builder {
   public:
    NodeId add_leaf(Label label);
    NodeId add_internal();
    int add_edge(NodeId u, NodeId v, T weight);

    std::size_t node_count() const { return labels_.size(); }
    Label label(NodeId node) const { return labels_.at(node); }
    /// Turns a leaf into an internal node (label 0) or relabels it.
    void set_label(NodeId node, Label label) { labels_.at(node) = label; }
    std::optional<NodeId> find_leaf(Label label) const;

    /// Throws ArgumentError if the result would not be a valid tree.
    WeightedTree build() &&;

   private:
    std::vector<Label> labels_;
    std::vector<Edge> edges_;
  };

  WeightedTree() = default;

  Builder to_builder() const;

  std::size_t node_count() const { return node_labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t leaf_count() const { return sorted_labels_.size(); }

  Label label(NodeId node) const { return node_labels_[node]; }
  bool is_leaf(NodeId node) const { return node_labels_[node] > 0; }
  int degree(NodeId node) const { return static_cast<int>(adjacency_[node].size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Incidence>& neighbors(NodeId node) const { return adjacency_[node]; }

  /// Sorted leaf labels.
  const std::vector<Label>& labels() const { return sorted_labels_; }
  bool has_label(Label label) const;
  /// Node carrying `label`; throws LabelError when absent.
  NodeId leaf_node(Label label) const;

 private:
  std::vector<Label> node_labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<Label> sorted_labels_;
  std::vector<NodeId> leaf_index_;  // by label, -1 when absent
};

/// A maximal set of leaves hanging off one branching node (a "cherry").
template <class T>
struct Bell {
  NodeId stalk;                 // -1 for the two-leaf tree (virtual midpoint)
  std::vector<Label> members;   // ascending
  std::vector<T> twig_lengths;  // aligned with members
};

/// Sum of edge weights on the path between leaves i and j.
template <class T>
T pairwise_weight(const WeightedTree<T>& tree, Label i, Label j);

/// Weight of the minimal subtree spanning three distinct leaves, computed
/// as half the sum of the three pairwise path weights.
template <class T>
T triple_weight(const WeightedTree<T>& tree, Label i, Label j, Label k);

/// Weight of the minimal subtree spanning `subset` (at least two labels),
/// computed by stripping non-terminal leaves.
template <class T>
T k_weight(const WeightedTree<T>& tree, std::span<const Label> subset);

/// All pairwise path weights, row-major over `tree.labels()` positions.
template <class T>
std::vector<T> leaf_distance_matrix(const WeightedTree<T>& tree);

/// Suppresses degree-2 internal nodes (merging their edges) and renumbers
/// nodes in canonical preorder: rooted at the internal node adjacent to the
/// smallest label, children ordered by smallest descendant label.
template <class T>
WeightedTree<T> canonicalize(const WeightedTree<T>& tree);

/// Contracts every internal edge with |weight| <= threshold, then
/// canonicalizes. Pendant edges are never contracted.
template <class T>
WeightedTree<T> contract_internal_edges(const WeightedTree<T>& tree, const T& threshold);

/// Leaf-labeled isomorphism of the canonical forms with matching edge
/// weights up to `tol`.
template <class T>
bool tree_equal(const WeightedTree<T>& a, const WeightedTree<T>& b, const T& tol);

/// Topology-only canonical string, e.g. "(1,2,(3,(4,5)))".
template <class T>
std::string shape_key(const WeightedTree<T>& tree);

struct RandomTreeOptions {
  int leaves = 5;
  std::uint64_t seed = 1;
  bool binary_only = false;
  /// Probability of attaching a new leaf to an existing internal node
  /// instead of subdividing an edge (ignored when binary_only).
  double multifurcation_rate = 0.3;
};

/// Deterministic random canonical tree on labels 1..n with weights drawn
/// uniformly from a grid of 10^6 + 1 points spanning [weight_min, weight_max].
template <class T>
WeightedTree<T> random_tree(const RandomTreeOptions& options, const T& weight_min,
                            const T& weight_max);

/// All maximal bells, sorted by smallest member.
template <class T>
std::vector<Bell<T>> cherries(const WeightedTree<T>& tree);

/// Canonical Newick with 12 significant digits per weight.
template <class T>
std::string to_newick(const WeightedTree<T>& tree);

/// Parses Newick with integer leaf labels and branch lengths; returns the
/// canonical tree. Throws ParseError.
template <class T>
WeightedTree<T> parse_newick(std::string_view text);

}  // namespace treeweights
