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
#include <stdexcept>
#include <string>
#include <vector>

#include "treeweights/tree.hpp"
#include "treeweights/weights.hpp"

namespace treeweights {

/// A set of labels that pairwise satisfy the star condition, together with
/// the twig length of each member and the fresh label that replaces the set
/// once it is pruned.
template <class T>
struct Pseudobell {
  std::vector<Label> members;   // ascending, at least two
  std::vector<T> twig_lengths;  // aligned with members; empty until computed
  Label merged_label = 0;       // 0 until assigned
  /// A proper subset of a complete pseudobell, pruned only to respect the
  /// size floor. Its merged label sits at the stalk with a zero twig.
  bool partial = false;
};

enum class FailureKind {
  DerivedPairwiseInconsistent,  // derived pairwise values depend on the completion
  StarGraphInconsistent,        // star relation is not a disjoint union of cliques
  NoTwoPseudobells,             // fewer than two disjoint neighbouring pairs
  PruneWellDefinedness,         // twig or reduced value depends on the representative
  BaseCase,
  FinalVerification,
  Positivity,
};

std::string to_string(FailureKind kind);

struct Failure {
  FailureKind kind;
  int level = 0;                // reduction level where it happened
  std::vector<Label> witness;   // offending labels
  std::string message;
};

/// Thrown by the building blocks below; reconstruct_* catch it and report
/// the carried Failure instead.
class ReconstructionError : public std::runtime_error {
 public:
  explicit ReconstructionError(Failure f) : std::runtime_error(f.message), failure_(std::move(f)) {}
  const Failure& failure() const noexcept { return failure_; }

 private:
  Failure failure_;
};

template <class W>
struct ReductionLevel {
  using T = typename W::value_type;
  std::vector<Label> labels_before;
  std::vector<Label> labels_after;
  std::vector<Pseudobell<T>> pruned;
  W reduced;
};

/// Twig lengths of the set obtained by merging one neighbouring pair of the
/// base instance into a single label.
template <class T>
struct PrunedSubsetCheck {
  std::pair<Label, Label> merged_pair;
  std::vector<Label> labels;  // merged pair shown as 0
  std::vector<T> twigs;       // aligned with labels
  std::vector<bool> exempt;   // structurally zero twigs that are not checked
  bool positive = true;
};

template <class T>
struct BaseCaseRecord {
  std::vector<Label> labels;
  std::vector<std::pair<Label, Label>> pairs;  // star pairs used for the shape
  std::vector<std::string> unknown_names;
  std::vector<T> unknowns;
  T residual{};
  std::vector<PrunedSubsetCheck<T>> pruned_subsets;
  bool positive = true;
};

template <class T>
struct BaseCaseOutcome {
  std::optional<WeightedTree<T>> tree;
  BaseCaseRecord<T> record;
  std::optional<Failure> failure;
};

template <class W>
struct ReconstructionTrace {
  using T = typename W::value_type;
  std::vector<ReductionLevel<W>> levels;
  BaseCaseRecord<T> base_case;
  /// Positivity certificate: every non-structural twig at every level and
  /// every edge of the base instance is > 0.
  bool all_twigs_positive = false;
};

template <class W>
struct Reconstruction {
  using T = typename W::value_type;
  std::optional<WeightedTree<T>> tree;
  ReconstructionTrace<W> trace;
  std::optional<Failure> failure;
  bool ok() const { return tree.has_value() && !failure.has_value(); }
};

/// Partitions the labels into cliques of the star relation (greedy by
/// smallest label) and returns the cliques with two or more members.
/// Throws ReconstructionError(StarGraphInconsistent) when the relation is not
/// a disjoint union of cliques, SizeError below n = 3 (doubles) / 5 (triples).
template <class T>
std::vector<Pseudobell<T>> complete_pseudobells(const DoubleWeights<T>& w, const T& tol);
template <class T>
std::vector<Pseudobell<T>> complete_pseudobells(const TripleWeights<T>& w, const T& tol);

/// (D(a,a') + D(a,x,y) - D(a',x,y)) / 2 with D(a,a') from `derived`.
template <class T>
T twig_length_triples(const TripleWeights<T>& t, const DoubleWeights<T>& derived, Label alpha,
                      Label alpha_prime, Label x, Label y);

/// (D(a,a') + D(a,x) - D(a',x)) / 2.
template <class T>
T twig_length_doubles(const DoubleWeights<T>& d, Label alpha, Label alpha_prime, Label x);

/// Pseudobells to prune at one level so that at least `floor` labels
/// remain: smallest-label pseudobells first, skipping any that would cross
/// the floor. If none fits, a partial pseudobell is taken from the first.
template <class T>
std::vector<Pseudobell<T>> select_for_pruning(const std::vector<Pseudobell<T>>& pseudobells,
                                              int label_count, int floor);

/// Fills twig_lengths, checking independence from the partner and the
/// completion within tol (midrange is kept). Throws ReconstructionError.
template <class T>
void assign_twigs(const DoubleWeights<T>& d, Pseudobell<T>& pb, const T& tol);
template <class T>
void assign_twigs(const TripleWeights<T>& t, const DoubleWeights<T>& derived, Pseudobell<T>& pb,
                  const T& tol);

/// Replaces each pseudobell by its merged label (assigned from max label + 1
/// when zero). Every reduced entry is checked for independence of the chosen
/// representatives within tol. Throws ReconstructionError.
template <class T>
ReductionLevel<TripleWeights<T>> prune_triples(const TripleWeights<T>& t,
                                               std::vector<Pseudobell<T>> pseudobells, const T& tol);
template <class T>
ReductionLevel<DoubleWeights<T>> prune_doubles(const DoubleWeights<T>& d,
                                               std::vector<Pseudobell<T>> pseudobells, const T& tol);

/// Caterpillar solve on exactly five labels. Zero inner edges collapse.
template <class T>
BaseCaseOutcome<T> base_case_triples_5(const TripleWeights<T>& t, const T& tol);

/// Direct solve on two to four labels.
template <class T>
BaseCaseOutcome<T> base_case_doubles(const DoubleWeights<T>& d, const T& tol);

/// Recursive pseudobell pruning down to five labels. n >= 5.
template <class T>
Reconstruction<TripleWeights<T>> reconstruct_from_triples(const TripleWeights<T>& t, const T& tol,
                                                         bool require_positive);

/// Recursive pseudobell pruning down to four labels. n >= 2.
template <class T>
Reconstruction<DoubleWeights<T>> reconstruct_from_doubles(const DoubleWeights<T>& d, const T& tol,
                                                         bool require_positive);

/// Triple weights built from `d`, then reconstruct_from_triples. n >= 5.
template <class T>
Reconstruction<TripleWeights<T>> reconstruct_from_doubles_via_triples(const DoubleWeights<T>& d,
                                                                     const T& tol,
                                                                     bool require_positive);

}  // namespace treeweights
