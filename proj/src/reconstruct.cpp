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

#include "treeweights/reconstruct.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "treeweights/errors.hpp"
#include "treeweights/linear_solve.hpp"

namespace treeweights {

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::DerivedPairwiseInconsistent:
      return "derived_pairwise_inconsistent";
    case FailureKind::StarGraphInconsistent:
      return "star_graph_inconsistent";
    case FailureKind::NoTwoPseudobells:
      return "no_two_pseudobells";
    case FailureKind::PruneWellDefinedness:
      return "prune_well_definedness";
    case FailureKind::BaseCase:
      return "base_case";
    case FailureKind::FinalVerification:
      return "final_verification";
    case FailureKind::Positivity:
      return "positivity";
  }
  return "unknown";
}

namespace {

template <class T>
struct Band {
  T lo{};
  T hi{};
  bool empty = true;

  void add(const T& v) {
    if (empty) {
      lo = hi = v;
      empty = false;
    } else if (v < lo) {
      lo = v;
    } else if (v > hi) {
      hi = v;
    }
  }
  T spread() const { return T(hi - lo); }
  T mid() const { return midrange(lo, hi); }
};

[[noreturn]] void fail(FailureKind kind, std::vector<Label> witness, const std::string& message) {
  throw ReconstructionError(Failure{kind, 0, std::move(witness), message});
}

std::string join_labels(const std::vector<Label>& labels) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  out << "}";
  return out.str();
}

template <class W>
std::vector<Pseudobell<typename W::value_type>> cliques_of_star_graph(const W& w,
                                                                       const typename W::value_type& tol) {
  using T = typename W::value_type;
  const auto& labels = w.labels();
  const int m = w.size();
  std::vector<std::vector<char>> star(m, std::vector<char>(m, 0));
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      star[p][q] = star[q][p] = star_holds(w, labels[p], labels[q], tol) ? 1 : 0;
    }
  }
  std::vector<char> assigned(m, 0);
  std::vector<Pseudobell<T>> out;
  for (int p = 0; p < m; ++p) {
    if (assigned[p]) continue;
    std::vector<int> group{p};
    for (int q = p + 1; q < m; ++q) {
      if (star[p][q]) group.push_back(q);
    }
    if (group.size() < 2) continue;
    std::vector<char> in_group(m, 0);
    for (int g : group) in_group[g] = 1;
    for (int g : group) {
      for (int q = 0; q < m; ++q) {
        if (q == g || in_group[q] == star[g][q]) continue;
        if (!in_group[q]) {
          // g ~ q but p !~ q, with p ~ g.
          fail(FailureKind::StarGraphInconsistent, {labels[g], labels[p], labels[q]},
               "star relation is not transitive at " + std::to_string(labels[g]));
        }
        // p ~ g and p ~ q but g !~ q.
        fail(FailureKind::StarGraphInconsistent, {labels[p], labels[g], labels[q]},
             "star relation is not transitive at " + std::to_string(labels[p]));
      }
    }
    Pseudobell<T> pb;
    for (int g : group) {
      assigned[g] = 1;
      pb.members.push_back(labels[g]);
    }
    out.push_back(std::move(pb));
  }
  return out;
}

template <class T>
int disjoint_pair_count(const std::vector<Pseudobell<T>>& pseudobells) {
  int count = 0;
  for (const auto& pb : pseudobells) count += static_cast<int>(pb.members.size()) / 2;
  return count;
}

void check_twig_inputs(const std::vector<Label>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (std::size_t j = i + 1; j < args.size(); ++j) {
      if (args[i] == args[j]) throw ArgumentError("twig length needs distinct labels");
    }
  }
}

template <class T>
void record_twig(Pseudobell<T>& pb, std::size_t index, const Band<T>& band, const T& tol,
                 const std::vector<Label>& witness) {
  if (band.spread() > tol) {
    fail(FailureKind::PruneWellDefinedness, witness,
         "twig of " + std::to_string(pb.members[index]) + " depends on the partner or completion (spread " +
             format_significant(band.spread(), 6) + ")");
  }
  pb.twig_lengths[index] = band.mid();
}

template <class T>
Label assign_merged_labels(std::vector<Pseudobell<T>>& pseudobells, const std::vector<Label>& labels) {
  Label next = labels.empty() ? 1 : labels.back() + 1;
  for (const auto& pb : pseudobells) next = std::max(next, pb.merged_label + 1);
  std::set<Label> seen(labels.begin(), labels.end());
  for (auto& pb : pseudobells) {
    if (pb.merged_label == 0) pb.merged_label = next++;
    if (!seen.insert(pb.merged_label).second) {
      throw ArgumentError("merged label " + std::to_string(pb.merged_label) + " is already in use");
    }
  }
  return next;
}

// Representatives of one label of the reduced set: its pseudobell members
// with their twigs, or the label itself with a zero twig.
template <class T>
struct Representatives {
  std::vector<int> positions;
  std::vector<T> twigs;
};

template <class W>
std::vector<Representatives<typename W::value_type>> reduced_label_set(
    const W& w, std::vector<Pseudobell<typename W::value_type>>& pseudobells, std::vector<Label>& out_labels) {
  using T = typename W::value_type;
  std::vector<char> pruned(w.size(), 0);
  for (const auto& pb : pseudobells) {
    if (pb.members.size() < 2) throw ArgumentError("pseudobell needs at least two members");
    if (pb.twig_lengths.size() != pb.members.size()) throw ArgumentError("pseudobell twigs not assigned");
    for (Label l : pb.members) {
      int p = w.position(l);
      if (pruned[p]) throw ArgumentError("label " + std::to_string(l) + " appears in two pseudobells");
      pruned[p] = 1;
    }
  }
  assign_merged_labels(pseudobells, w.labels());
  std::vector<std::pair<Label, Representatives<T>>> entries;
  for (int p = 0; p < w.size(); ++p) {
    if (!pruned[p]) entries.push_back({w.labels()[p], Representatives<T>{{p}, {T(0)}}});
  }
  for (const auto& pb : pseudobells) {
    Representatives<T> reps;
    for (std::size_t i = 0; i < pb.members.size(); ++i) {
      reps.positions.push_back(w.position(pb.members[i]));
      reps.twigs.push_back(pb.twig_lengths[i]);
    }
    entries.push_back({pb.merged_label, std::move(reps)});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Representatives<T>> reps;
  out_labels.clear();
  for (auto& [label, r] : entries) {
    out_labels.push_back(label);
    reps.push_back(std::move(r));
  }
  return reps;
}

template <class T>
T verification_tolerance(const T& tol, std::size_t levels) {
  return T(tol * static_cast<long>(2 * levels + 4));
}

// Leaves first (in the given order), then `internal_count` internal nodes;
// edges refer to those indices.
template <class T>
WeightedTree<T> build_from_edges(const std::vector<Label>& leaves, int internal_count,
                                 const std::vector<std::tuple<int, int, T>>& edges) {
  typename WeightedTree<T>::Builder b;
  std::vector<NodeId> ids;
  for (Label l : leaves) ids.push_back(b.add_leaf(l));
  for (int i = 0; i < internal_count; ++i) ids.push_back(b.add_internal());
  for (const auto& [u, v, w] : edges) b.add_edge(ids[u], ids[v], w);
  return std::move(b).build();
}

// A zero twig on a merged label becomes a contracted inner edge.
template <class T>
bool exempt_twig(const std::set<Label>& merged, Label l, const T& w, const T& tol) {
  return merged.count(l) > 0 && abs_value(w) <= tol;
}

template <class T>
BaseCaseOutcome<T> base_case_triples_impl(const TripleWeights<T>& t, const T& tol,
                                          const std::set<Label>& merged) {
  if (t.size() != 5) throw SizeError("triples base case needs exactly five labels", 5);
  BaseCaseOutcome<T> out;
  out.record.labels = t.labels();
  auto pairs = neighbor_pairs(t, tol);
  std::optional<std::pair<Label, Label>> first, second;
  if (!pairs.empty()) {
    first = pairs.front();
    for (const auto& pr : pairs) {
      if (pr.first != first->first && pr.first != first->second && pr.second != first->first &&
          pr.second != first->second) {
        second = pr;
        break;
      }
    }
  }
  if (!second) {
    out.failure = Failure{FailureKind::NoTwoPseudobells, 0, t.labels(),
                          "five-label instance lacks two disjoint neighbouring pairs"};
    return out;
  }
  out.record.pairs = {*first, *second};
  Label gamma = 0;
  for (Label l : t.labels()) {
    if (l != first->first && l != first->second && l != second->first && l != second->second) gamma = l;
  }
  // Unknowns: a, b, c, d, e (pendant edges of alpha, alpha', gamma, beta,
  // beta'), f1 (between the alpha side and gamma), f2 (gamma to beta side).
  const std::vector<Label> leaf{first->first, first->second, gamma, second->first, second->second};
  out.record.unknown_names = {"a", "b", "c", "d", "e", "f1", "f2"};
  Matrix<T> a;
  std::vector<T> rhs;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      for (int k = j + 1; k < 5; ++k) {
        std::vector<T> row(7, T(0));
        row[i] = row[j] = row[k] = 1;
        auto side = [&](int x) { return x < 2 ? 0 : (x == 2 ? 1 : 2); };
        int lo = std::min({side(i), side(j), side(k)});
        int hi = std::max({side(i), side(j), side(k)});
        if (lo == 0 && hi >= 1) row[5] = 1;
        if (lo <= 1 && hi == 2) row[6] = 1;
        a.push_back(std::move(row));
        rhs.push_back(t(leaf[i], leaf[j], leaf[k]));
      }
    }
  }
  auto sol = solve_linear_system(a, rhs, tol);
  out.record.unknowns = sol.x;
  out.record.residual = sol.max_residual;
  if (!sol.consistent) {
    out.failure = Failure{FailureKind::BaseCase, 0, t.labels(),
                          "five-label system is inconsistent (residual " +
                              format_significant(sol.max_residual, 6) + ")"};
    return out;
  }
  const auto& x = sol.x;
  // Nodes: leaves 0..4, then P (alpha side), Q (gamma), R (beta side).
  std::vector<std::tuple<int, int, T>> edges{{0, 5, x[0]}, {1, 5, x[1]}, {2, 6, x[2]}, {3, 7, x[3]},
                                             {4, 7, x[4]}, {5, 6, x[5]}, {6, 7, x[6]}};
  out.tree = contract_internal_edges(build_from_edges<T>(leaf, 3, edges), tol);

  auto subset = [&](std::pair<Label, Label> pair, std::vector<Label> labels, std::vector<T> twigs,
                    int inner_index) {
    PrunedSubsetCheck<T> c;
    c.merged_pair = pair;
    c.labels = std::move(labels);
    c.twigs = std::move(twigs);
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      bool ex = static_cast<int>(i) == inner_index ? abs_value(c.twigs[i]) <= tol
                                                     : exempt_twig(merged, c.labels[i], c.twigs[i], tol);
      c.exempt.push_back(ex);
      if (!ex && !(c.twigs[i] > 0)) c.positive = false;
    }
    return c;
  };
  out.record.pruned_subsets.push_back(
      subset(*first, {0, gamma, second->first, second->second}, {x[5], x[2], x[3], x[4]}, 0));
  out.record.pruned_subsets.push_back(
      subset(*second, {first->first, first->second, gamma, 0}, {x[0], x[1], x[2], x[6]}, 3));
  out.record.positive = true;
  for (const auto& c : out.record.pruned_subsets) out.record.positive = out.record.positive && c.positive;
  return out;
}

template <class T>
BaseCaseOutcome<T> base_case_doubles_impl(const DoubleWeights<T>& d, const T& tol,
                                          const std::set<Label>& merged) {
  const int m = d.size();
  if (m < 2 || m > 4) throw SizeError("doubles base case needs two to four labels", 2);
  BaseCaseOutcome<T> out;
  out.record.labels = d.labels();
  const auto& L = d.labels();
  auto pendant_ok = [&](Label l, const T& w) { return w > 0 || exempt_twig(merged, l, w, tol); };
  if (m == 2) {
    T w = d(L[0], L[1]);
    out.record.unknown_names = {"edge"};
    out.record.unknowns = {w};
    out.tree = build_from_edges<T>(L, 0, {{0, 1, w}});
    out.record.positive = w > 0;
    return out;
  }
  if (m == 3) {
    T a = half(T(d(L[0], L[1]) + d(L[0], L[2]) - d(L[1], L[2])));
    T b = half(T(d(L[0], L[1]) + d(L[1], L[2]) - d(L[0], L[2])));
    T c = half(T(d(L[0], L[2]) + d(L[1], L[2]) - d(L[0], L[1])));
    out.record.unknown_names = {"a", "b", "c"};
    out.record.unknowns = {a, b, c};
    out.tree = build_from_edges<T>(L, 1, {{0, 3, a}, {1, 3, b}, {2, 3, c}});
    out.record.positive = pendant_ok(L[0], a) && pendant_ok(L[1], b) && pendant_ok(L[2], c);
    return out;
  }
  auto pairs = neighbor_pairs(d, tol);
  if (pairs.empty()) {
    out.failure = Failure{FailureKind::NoTwoPseudobells, 0, L, "four-label instance has no neighbouring pair"};
    return out;
  }
  auto [p, q] = pairs.front();
  std::vector<Label> leaf{p, q};
  for (Label l : L) {
    if (l != p && l != q) leaf.push_back(l);
  }
  out.record.pairs = {{p, q}, {leaf[2], leaf[3]}};
  out.record.unknown_names = {"a", "b", "c", "d", "f"};
  Matrix<T> a;
  std::vector<T> rhs;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::vector<T> row(5, T(0));
      row[i] = row[j] = 1;
      if ((i < 2) != (j < 2)) row[4] = 1;
      a.push_back(std::move(row));
      rhs.push_back(d(leaf[i], leaf[j]));
    }
  }
  auto sol = solve_linear_system(a, rhs, tol);
  out.record.unknowns = sol.x;
  out.record.residual = sol.max_residual;
  if (!sol.consistent) {
    out.failure = Failure{FailureKind::BaseCase, 0, L,
                          "four-label system is inconsistent (residual " +
                              format_significant(sol.max_residual, 6) + ")"};
    return out;
  }
  const auto& x = sol.x;
  std::vector<std::tuple<int, int, T>> edges{{0, 4, x[0]}, {1, 4, x[1]}, {2, 5, x[2]}, {3, 5, x[3]}, {4, 5, x[4]}};
  out.tree = contract_internal_edges(build_from_edges<T>(leaf, 2, edges), tol);
  out.record.positive = true;
  for (int i = 0; i < 4; ++i) out.record.positive = out.record.positive && pendant_ok(leaf[i], x[i]);
  if (abs_value(x[4]) > tol && !(x[4] > 0)) out.record.positive = false;
  return out;
}

template <class W>
bool twigs_positive(const std::vector<ReductionLevel<W>>& levels, const std::set<Label>& merged,
                    const typename W::value_type& tol) {
  for (const auto& level : levels) {
    for (const auto& pb : level.pruned) {
      for (std::size_t i = 0; i < pb.members.size(); ++i) {
        const auto& w = pb.twig_lengths[i];
        if (!(w > 0) && !exempt_twig(merged, pb.members[i], w, tol)) return false;
      }
    }
  }
  return true;
}

template <class W>
WeightedTree<typename W::value_type> expand(const WeightedTree<typename W::value_type>& base,
                                            const std::vector<ReductionLevel<W>>& levels,
                                            const typename W::value_type& tol) {
  auto b = base.to_builder();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    for (const auto& pb : it->pruned) {
      auto node = b.find_leaf(pb.merged_label);
      if (!node) throw std::logic_error("merged label missing during expansion");
      b.set_label(*node, 0);
      for (std::size_t i = 0; i < pb.members.size(); ++i) {
        NodeId leaf = b.add_leaf(pb.members[i]);
        b.add_edge(*node, leaf, pb.twig_lengths[i]);
      }
    }
  }
  return contract_internal_edges(std::move(b).build(), tol);
}

template <class W, class Step, class Base, class Verify>
Reconstruction<W> run_reconstruction(const W& input, int floor, const typename W::value_type& tol,
                                     bool require_positive, Step&& step, Base&& base_case, Verify&& verify) {
  using T = typename W::value_type;
  Reconstruction<W> out;
  std::set<Label> merged;
  W current = input;
  Label next_label = input.labels().back() + 1;
  int level = 0;
  try {
    while (current.size() > floor) {
      auto pbs = complete_pseudobells(current, tol);
      if (disjoint_pair_count(pbs) < 2) {
        fail(FailureKind::NoTwoPseudobells, current.labels(),
             "fewer than two disjoint neighbouring pairs among " + std::to_string(current.size()) + " labels");
      }
      auto selected = select_for_pruning(pbs, current.size(), floor);
      for (auto& pb : selected) {
        pb.merged_label = next_label++;
        merged.insert(pb.merged_label);
      }
      auto reduced = step(current, std::move(selected));
      current = reduced.reduced;
      out.trace.levels.push_back(std::move(reduced));
      ++level;
    }
  } catch (const ReconstructionError& e) {
    out.failure = e.failure();
    out.failure->level = level;
    return out;
  }
  auto base = base_case(current, merged);
  out.trace.base_case = base.record;
  if (base.failure) {
    out.failure = base.failure;
    out.failure->level = level;
    return out;
  }
  auto tree = expand(*base.tree, out.trace.levels, tol);
  T vtol = verification_tolerance(tol, out.trace.levels.size());
  if (auto bad = verify(input, tree, vtol)) {
    out.failure = Failure{FailureKind::FinalVerification, level, *bad,
                          "reconstructed tree does not reproduce the input at " + join_labels(*bad)};
    return out;
  }
  out.trace.all_twigs_positive = base.record.positive && twigs_positive(out.trace.levels, merged, tol);
  out.tree = std::move(tree);
  if (require_positive && !out.trace.all_twigs_positive) {
    out.failure = Failure{FailureKind::Positivity, level, {}, "a twig or inner edge is not positive"};
  }
  return out;
}

}  // namespace

template <class T>
std::vector<Pseudobell<T>> complete_pseudobells(const DoubleWeights<T>& w, const T& tol) {
  if (w.size() < 3) throw SizeError("pseudobells need at least three labels", 3);
  return cliques_of_star_graph(w, tol);
}

template <class T>
std::vector<Pseudobell<T>> complete_pseudobells(const TripleWeights<T>& w, const T& tol) {
  if (w.size() < 5) throw SizeError("pseudobells need at least five labels", 5);
  return cliques_of_star_graph(w, tol);
}

template <class T>
T twig_length_triples(const TripleWeights<T>& t, const DoubleWeights<T>& derived, Label alpha,
                      Label alpha_prime, Label x, Label y) {
  check_twig_inputs({alpha, alpha_prime, x, y});
  return half(T(derived(alpha, alpha_prime) + t(alpha, x, y) - t(alpha_prime, x, y)));
}

template <class T>
T twig_length_doubles(const DoubleWeights<T>& d, Label alpha, Label alpha_prime, Label x) {
  check_twig_inputs({alpha, alpha_prime, x});
  return half(T(d(alpha, alpha_prime) + d(alpha, x) - d(alpha_prime, x)));
}

template <class T>
std::vector<Pseudobell<T>> select_for_pruning(const std::vector<Pseudobell<T>>& pseudobells, int label_count,
                                              int floor) {
  std::vector<Pseudobell<T>> sorted = pseudobells;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.members.front() < b.members.front(); });
  std::vector<Pseudobell<T>> out;
  int count = label_count;
  for (const auto& pb : sorted) {
    int shrink = static_cast<int>(pb.members.size()) - 1;
    if (count - shrink >= floor) {
      out.push_back(pb);
      count -= shrink;
    }
  }
  if (out.empty() && !sorted.empty() && label_count > floor) {
    Pseudobell<T> part;
    std::size_t take = static_cast<std::size_t>(label_count - floor + 1);
    part.members.assign(sorted.front().members.begin(), sorted.front().members.begin() + take);
    part.partial = take < sorted.front().members.size();
    out.push_back(std::move(part));
  }
  return out;
}

template <class T>
void assign_twigs(const DoubleWeights<T>& d, Pseudobell<T>& pb, const T& tol) {
  const auto& labels = d.labels();
  pb.twig_lengths.assign(pb.members.size(), T(0));
  for (std::size_t i = 0; i < pb.members.size(); ++i) {
    Band<T> band;
    std::vector<Label> witness;
    Label alpha = pb.members[i];
    for (Label partner : pb.members) {
      if (partner == alpha) continue;
      for (Label x : labels) {
        if (x == alpha || x == partner) continue;
        band.add(twig_length_doubles(d, alpha, partner, x));
        if (witness.empty() && band.spread() > tol) witness = {alpha, partner, x};
      }
    }
    record_twig(pb, i, band, tol, witness);
  }
}

template <class T>
void assign_twigs(const TripleWeights<T>& t, const DoubleWeights<T>& derived, Pseudobell<T>& pb, const T& tol) {
  const auto& labels = t.labels();
  const int m = t.size();
  pb.twig_lengths.assign(pb.members.size(), T(0));
  for (std::size_t i = 0; i < pb.members.size(); ++i) {
    Band<T> band;
    std::vector<Label> witness;
    Label alpha = pb.members[i];
    for (Label partner : pb.members) {
      if (partner == alpha) continue;
      T pair = derived(alpha, partner);
      for (int p = 0; p < m; ++p) {
        Label x = labels[p];
        if (x == alpha || x == partner) continue;
        for (int q = p + 1; q < m; ++q) {
          Label y = labels[q];
          if (y == alpha || y == partner) continue;
          band.add(half(T(pair + t(alpha, x, y) - t(partner, x, y))));
          if (witness.empty() && band.spread() > tol) witness = {alpha, partner, x, y};
        }
      }
    }
    record_twig(pb, i, band, tol, witness);
  }
}

template <class T>
ReductionLevel<TripleWeights<T>> prune_triples(const TripleWeights<T>& t, std::vector<Pseudobell<T>> pseudobells,
                                               const T& tol) {
  ReductionLevel<TripleWeights<T>> level;
  level.labels_before = t.labels();
  auto reps = reduced_label_set(t, pseudobells, level.labels_after);
  TripleWeights<T> reduced(level.labels_after);
  const int m = static_cast<int>(level.labels_after.size());
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      for (int r = q + 1; r < m; ++r) {
        Band<T> band;
        const auto &A = reps[p], &B = reps[q], &C = reps[r];
        for (std::size_t i = 0; i < A.positions.size(); ++i) {
          for (std::size_t j = 0; j < B.positions.size(); ++j) {
            for (std::size_t k = 0; k < C.positions.size(); ++k) {
              band.add(T(t.at_pos(A.positions[i], B.positions[j], C.positions[k]) - A.twigs[i] - B.twigs[j] -
                         C.twigs[k]));
            }
          }
        }
        if (band.spread() > tol) {
          fail(FailureKind::PruneWellDefinedness,
               {level.labels_after[p], level.labels_after[q], level.labels_after[r]},
               "reduced triple depends on the representatives (spread " + format_significant(band.spread(), 6) +
                   ")");
        }
        reduced.set_pos(p, q, r, band.mid());
      }
    }
  }
  level.pruned = std::move(pseudobells);
  level.reduced = std::move(reduced);
  return level;
}

template <class T>
ReductionLevel<DoubleWeights<T>> prune_doubles(const DoubleWeights<T>& d, std::vector<Pseudobell<T>> pseudobells,
                                               const T& tol) {
  ReductionLevel<DoubleWeights<T>> level;
  level.labels_before = d.labels();
  auto reps = reduced_label_set(d, pseudobells, level.labels_after);
  DoubleWeights<T> reduced(level.labels_after);
  const int m = static_cast<int>(level.labels_after.size());
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      Band<T> band;
      const auto &A = reps[p], &B = reps[q];
      for (std::size_t i = 0; i < A.positions.size(); ++i) {
        for (std::size_t j = 0; j < B.positions.size(); ++j) {
          band.add(T(d.at_pos(A.positions[i], B.positions[j]) - A.twigs[i] - B.twigs[j]));
        }
      }
      if (band.spread() > tol) {
        fail(FailureKind::PruneWellDefinedness, {level.labels_after[p], level.labels_after[q]},
             "reduced pair depends on the representatives (spread " + format_significant(band.spread(), 6) + ")");
      }
      reduced.set_pos(p, q, band.mid());
    }
  }
  level.pruned = std::move(pseudobells);
  level.reduced = std::move(reduced);
  return level;
}

template <class T>
BaseCaseOutcome<T> base_case_triples_5(const TripleWeights<T>& t, const T& tol) {
  return base_case_triples_impl(t, tol, {});
}

template <class T>
BaseCaseOutcome<T> base_case_doubles(const DoubleWeights<T>& d, const T& tol) {
  return base_case_doubles_impl(d, tol, {});
}

template <class T>
Reconstruction<TripleWeights<T>> reconstruct_from_triples(const TripleWeights<T>& t, const T& tol,
                                                         bool require_positive) {
  if (t.size() < 5) throw SizeError("reconstruction from triple weights needs at least five labels", 5);
  auto check = derived_pairwise_consistent(t, tol);
  if (!check.consistent) {
    Reconstruction<TripleWeights<T>> out;
    out.failure = Failure{FailureKind::DerivedPairwiseInconsistent, 0, {check.witness.first, check.witness.second},
                          "derived pairwise value of " + join_labels({check.witness.first, check.witness.second}) +
                              " depends on the completion (spread " + format_significant(check.worst_spread, 6) +
                              ")"};
    return out;
  }
  DoubleWeights<T> derived = *check.doubles;
  auto step = [&](const TripleWeights<T>& current, std::vector<Pseudobell<T>> selected) {
    for (auto& pb : selected) assign_twigs(current, derived, pb, tol);
    auto level = prune_triples(current, std::move(selected), tol);
    if (level.reduced.size() >= 5) derived = derived_pairwise_first(level.reduced);
    return level;
  };
  auto base = [&](const TripleWeights<T>& current, const std::set<Label>& merged) {
    return base_case_triples_impl(current, tol, merged);
  };
  auto verify = [](const TripleWeights<T>& in, const WeightedTree<T>& tree,
                   const T& vtol) -> std::optional<std::vector<Label>> {
    auto got = triples_of(tree);
    const int n = in.size();
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        for (int r = q + 1; r < n; ++r) {
          if (abs_value(T(in.at_pos(p, q, r) - got.at_pos(p, q, r))) > vtol) {
            return std::vector<Label>{in.labels()[p], in.labels()[q], in.labels()[r]};
          }
        }
      }
    }
    return std::nullopt;
  };
  return run_reconstruction(t, 5, tol, require_positive, step, base, verify);
}

template <class T>
Reconstruction<DoubleWeights<T>> reconstruct_from_doubles(const DoubleWeights<T>& d, const T& tol,
                                                         bool require_positive) {
  if (d.size() < 2) throw SizeError("reconstruction from pairwise weights needs at least two labels", 2);
  auto step = [&](const DoubleWeights<T>& current, std::vector<Pseudobell<T>> selected) {
    for (auto& pb : selected) assign_twigs(current, pb, tol);
    return prune_doubles(current, std::move(selected), tol);
  };
  auto base = [&](const DoubleWeights<T>& current, const std::set<Label>& merged) {
    return base_case_doubles_impl(current, tol, merged);
  };
  auto verify = [](const DoubleWeights<T>& in, const WeightedTree<T>& tree,
                   const T& vtol) -> std::optional<std::vector<Label>> {
    auto got = doubles_of(tree);
    const int n = in.size();
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (abs_value(T(in.at_pos(p, q) - got.at_pos(p, q))) > vtol) {
          return std::vector<Label>{in.labels()[p], in.labels()[q]};
        }
      }
    }
    return std::nullopt;
  };
  return run_reconstruction(d, 4, tol, require_positive, step, base, verify);
}

template <class T>
Reconstruction<TripleWeights<T>> reconstruct_from_doubles_via_triples(const DoubleWeights<T>& d, const T& tol,
                                                                     bool require_positive) {
  if (d.size() < 5) throw SizeError("reconstruction through triple weights needs at least five labels", 5);
  return reconstruct_from_triples(triples_from_doubles(d), tol, require_positive);
}

#define TREEWEIGHTS_INSTANTIATE_RECONSTRUCT(T)                                                                 \
  template std::vector<Pseudobell<T>> complete_pseudobells(const DoubleWeights<T>&, const T&);                 \
  template std::vector<Pseudobell<T>> complete_pseudobells(const TripleWeights<T>&, const T&);                 \
  template T twig_length_triples(const TripleWeights<T>&, const DoubleWeights<T>&, Label, Label, Label, Label); \
  template T twig_length_doubles(const DoubleWeights<T>&, Label, Label, Label);                                \
  template std::vector<Pseudobell<T>> select_for_pruning(const std::vector<Pseudobell<T>>&, int, int);         \
  template void assign_twigs(const DoubleWeights<T>&, Pseudobell<T>&, const T&);                               \
  template void assign_twigs(const TripleWeights<T>&, const DoubleWeights<T>&, Pseudobell<T>&, const T&);      \
  template ReductionLevel<TripleWeights<T>> prune_triples(const TripleWeights<T>&, std::vector<Pseudobell<T>>, \
                                                          const T&);                                           \
  template ReductionLevel<DoubleWeights<T>> prune_doubles(const DoubleWeights<T>&, std::vector<Pseudobell<T>>, \
                                                          const T&);                                           \
  template BaseCaseOutcome<T> base_case_triples_5(const TripleWeights<T>&, const T&);                          \
  template BaseCaseOutcome<T> base_case_doubles(const DoubleWeights<T>&, const T&);                            \
  template Reconstruction<TripleWeights<T>> reconstruct_from_triples(const TripleWeights<T>&, const T&, bool); \
  template Reconstruction<DoubleWeights<T>> reconstruct_from_doubles(const DoubleWeights<T>&, const T&, bool); \
  template Reconstruction<TripleWeights<T>> reconstruct_from_doubles_via_triples(const DoubleWeights<T>&,      \
                                                                                 const T&, bool);

TREEWEIGHTS_INSTANTIATE_RECONSTRUCT(double)
TREEWEIGHTS_INSTANTIATE_RECONSTRUCT(Rational)

}  // namespace treeweights
