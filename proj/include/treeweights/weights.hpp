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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeweights/numeric.hpp"
#include "treeweights/tree.hpp"

namespace treeweights {

/// Real numbers indexed by the 2-subsets of a label set. Lookup is
/// order-independent; the diagonal is zero and never meaningful.
template <class T>
class DoubleWeights {
 public:
  using value_type = T;
  static constexpr int kOrder = 2;

  DoubleWeights() = default;
  /// Zero-filled container over `labels` (distinct, positive).
  explicit DoubleWeights(std::vector<Label> labels);
  /// Zero-filled container over 1..n.
  static DoubleWeights over_range(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<Label>& labels() const { return labels_; }
  bool contains(Label l) const {
    return l > 0 && static_cast<std::size_t>(l) < position_.size() && position_[l] >= 0;
  }
  /// Index of `l` in labels(); throws LabelError.
  int position(Label l) const;

  const T& operator()(Label i, Label j) const { return at_pos(position(i), position(j)); }
  void set(Label i, Label j, const T& value);

  const T& at_pos(int p, int q) const { return values_[static_cast<std::size_t>(p) * labels_.size() + q]; }
  void set_pos(int p, int q, const T& value);

 private:
  std::vector<Label> labels_;
  std::vector<int> position_;
  std::vector<T> values_;
};

/// Real numbers indexed by the 3-subsets of a label set.
template <class T>
class TripleWeights {
 public:
  using value_type = T;
  static constexpr int kOrder = 3;

  TripleWeights() = default;
  explicit TripleWeights(std::vector<Label> labels);
  static TripleWeights over_range(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<Label>& labels() const { return labels_; }
  bool contains(Label l) const {
    return l > 0 && static_cast<std::size_t>(l) < position_.size() && position_[l] >= 0;
  }
  int position(Label l) const;

  const T& operator()(Label i, Label j, Label k) const {
    return at_pos(position(i), position(j), position(k));
  }
  void set(Label i, Label j, Label k, const T& value);

  const T& at_pos(int p, int q, int r) const { return values_[slot(p, q, r)]; }
  void set_pos(int p, int q, int r, const T& value) { values_[slot(p, q, r)] = value; }

 private:
  std::size_t slot(int p, int q, int r) const;

  std::vector<Label> labels_;
  std::vector<int> position_;
  std::vector<T> values_;
};

/// Outcome of testing whether D(alpha, .) - D(alpha', .) is constant.
template <class T>
struct StarResult {
  bool holds = false;
  T common_difference{};  // midrange of the observed differences
  T max_spread{};         // max - min of the observed differences
};

/// Pair-difference test over every gamma outside {alpha, alpha'}. n >= 3.
template <class T>
StarResult<T> star_condition_doubles(const DoubleWeights<T>& w, Label alpha, Label alpha_prime,
                                     const T& tol);

/// Pair-difference test over every 2-subset outside {alpha, alpha'}. n >= 4.
template <class T>
StarResult<T> star_condition_triples(const TripleWeights<T>& w, Label alpha, Label alpha_prime,
                                     const T& tol);

/// Same decision as the star_condition_* functions, stopping at the first
/// difference that leaves the tolerance band.
template <class T>
bool star_holds(const DoubleWeights<T>& w, Label alpha, Label alpha_prime, const T& tol);
template <class T>
bool star_holds(const TripleWeights<T>& w, Label alpha, Label alpha_prime, const T& tol);

/// Pairs satisfying the star condition, lexicographic. Requires n >= 3 for
/// doubles and n >= 5 for triples (SizeError otherwise).
template <class T>
std::vector<std::pair<Label, Label>> neighbor_pairs(const DoubleWeights<T>& w, const T& tol);
template <class T>
std::vector<std::pair<Label, Label>> neighbor_pairs(const TripleWeights<T>& w, const T& tol);

/// Pairwise value recovered from triple weights through the five labels
/// i, j, r, s, u.
template <class T>
T derived_pairwise(const TripleWeights<T>& t, Label i, Label j, Label r, Label s, Label u);

template <class T>
struct DerivedPairwiseCheck {
  bool consistent = false;
  std::optional<DoubleWeights<T>> doubles;  // midrange values, set when consistent
  std::pair<Label, Label> witness{0, 0};    // first pair whose spread exceeds tol
  T worst_spread{};
};

/// Evaluates derived_pairwise for every pair over every admissible {r,s,u}.
/// n >= 5.
template <class T>
DerivedPairwiseCheck<T> derived_pairwise_consistent(const TripleWeights<T>& t, const T& tol);

/// derived_pairwise with the smallest admissible {r,s,u} for each pair.
template <class T>
DoubleWeights<T> derived_pairwise_first(const TripleWeights<T>& t);

/// D(i,j,k) = (D(i,j) + D(i,k) + D(j,k)) / 2.
template <class T>
TripleWeights<T> triples_from_doubles(const DoubleWeights<T>& d);

template <class T>
DoubleWeights<T> doubles_of(const WeightedTree<T>& tree);
template <class T>
TripleWeights<T> triples_of(const WeightedTree<T>& tree);

template <class T>
struct BunemanVerdict {
  bool passes = true;
  std::array<Label, 4> witness{};  // first failing quadruple, lexicographic
  std::vector<std::string> metric_warnings;
};

/// Four-point check: in every quadruple the largest of the three pairings
/// is attained at least twice (within tol). Metric-axiom violations are
/// reported as warnings only.
template <class T>
BunemanVerdict<T> buneman_check(const DoubleWeights<T>& d, const T& tol);

/// Text formats: first non-comment line "n", then one line per subset
/// "i j value" (or "i j k value") with ascending labels. '#' starts a
/// comment. Throws ParseError with the offending line.
template <class T>
DoubleWeights<T> parse_doubles(std::string_view text);
template <class T>
TripleWeights<T> parse_triples(std::string_view text);

template <class T>
std::string emit_doubles(const DoubleWeights<T>& d);
template <class T>
std::string emit_triples(const TripleWeights<T>& t);

}  // namespace treeweights
