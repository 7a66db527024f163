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

#include "treeweights/nj.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "treeweights/errors.hpp"
#include "treeweights/parallel.hpp"
#include "treeweights/reconstruct.hpp"

namespace treeweights {
namespace {

// Builds the output tree as joins happen; labels still in play map to the
// node that currently represents them.
template <class T>
class Assembler {
 public:
  explicit Assembler(const std::vector<Label>& labels) {
    for (Label l : labels) node_[l] = builder_.add_leaf(l);
  }

  void join(Label z, const std::vector<Label>& members, const std::vector<T>& twigs) {
    NodeId center = builder_.add_internal();
    for (std::size_t i = 0; i < members.size(); ++i) {
      builder_.add_edge(center, node_.at(members[i]), twigs[i]);
      node_.erase(members[i]);
    }
    node_[z] = center;
  }

  void connect(Label a, Label b, const T& weight) { builder_.add_edge(node_.at(a), node_.at(b), weight); }

  WeightedTree<T> finish(const T& contract_tol) && {
    return contract_internal_edges(std::move(builder_).build(), contract_tol);
  }

 private:
  typename WeightedTree<T>::Builder builder_;
  std::map<Label, NodeId> node_;
};

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Components with at least two members, each ascending, ordered by their
// smallest member.
std::vector<std::vector<Label>> components(const std::vector<Label>& labels,
                                           const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(labels.size());
  DisjointSets sets(n);
  for (auto [a, b] : edges) sets.unite(a, b);
  std::map<int, std::vector<Label>> groups;
  for (int p = 0; p < n; ++p) groups[sets.find(p)].push_back(labels[p]);
  std::vector<std::vector<Label>> out;
  for (auto& [root, members] : groups) {
    if (members.size() >= 2) out.push_back(std::move(members));
  }
  return out;
}

template <class T>
struct Band {
  T lo{}, hi{};
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
  T spread() const { return empty ? T(0) : T(hi - lo); }
};

// (D(i,p) + D(i,x) - D(p,x)) / 2 with x the smallest label outside {i, p}.
// When `spread` is given, also records the spread over every choice of x.
template <class T>
T twig_doubles(const DoubleWeights<T>& d, Label i, Label p, T* spread) {
  const auto& labels = d.labels();
  Label x = 0;
  for (Label l : labels) {
    if (l != i && l != p) {
      x = l;
      break;
    }
  }
  T value = half(T(d(i, p) + d(i, x) - d(p, x)));
  if (spread) {
    Band<T> band;
    for (Label l : labels) {
      if (l != i && l != p) band.add(half(T(d(i, p) + d(i, l) - d(p, l))));
    }
    if (band.spread() > *spread) *spread = band.spread();
  }
  return value;
}

struct Merge {
  Label z;
  std::vector<Label> members;  // ascending, at least two
};

// Replaces every merge group by its label z. The distance from z to y is
// (D(a,y) + D(b,y) - D(a,b)) / 2 for the first two members a, b; two merged
// labels are reduced one after the other, in list order.
template <class T>
DoubleWeights<T> merge_reduce(const DoubleWeights<T>& d, const std::vector<Merge>& merges) {
  const int m = d.size();
  std::vector<char> merged(m, 0);
  std::vector<std::vector<T>> rows(merges.size(), std::vector<T>(m));
  for (std::size_t g = 0; g < merges.size(); ++g) {
    const auto& mg = merges[g];
    int a = d.position(mg.members[0]);
    int b = d.position(mg.members[1]);
    for (Label l : mg.members) merged[d.position(l)] = 1;
    for (int y = 0; y < m; ++y) {
      if (y == a || y == b) continue;
      rows[g][y] = half(T(d.at_pos(a, y) + d.at_pos(b, y) - d.at_pos(a, b)));
    }
  }
  std::vector<Label> labels;
  std::vector<int> kept;
  for (int p = 0; p < m; ++p) {
    if (!merged[p]) {
      labels.push_back(d.labels()[p]);
      kept.push_back(p);
    }
  }
  for (const auto& mg : merges) labels.push_back(mg.z);
  DoubleWeights<T> out(labels);
  for (std::size_t u = 0; u < kept.size(); ++u) {
    for (std::size_t v = u + 1; v < kept.size(); ++v) {
      out.set(d.labels()[kept[u]], d.labels()[kept[v]], d.at_pos(kept[u], kept[v]));
    }
    for (std::size_t g = 0; g < merges.size(); ++g) out.set(d.labels()[kept[u]], merges[g].z, rows[g][kept[u]]);
  }
  for (std::size_t g = 0; g < merges.size(); ++g) {
    for (std::size_t h = g + 1; h < merges.size(); ++h) {
      int c = d.position(merges[h].members[0]);
      int e = d.position(merges[h].members[1]);
      out.set(merges[g].z, merges[h].z, half(T(rows[g][c] + rows[g][e] - d.at_pos(c, e))));
    }
  }
  return out;
}

// Lexicographically first pair of positions attaining the minimum of S.
template <class T>
std::pair<int, int> global_minimum(const SMatrix<T>& s) {
  const int m = s.size();
  std::pair<int, int> best{0, 1};
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      if (s.at_pos(p, q) < s.at_pos(best.first, best.second)) best = {p, q};
    }
  }
  return best;
}

template <class T>
std::vector<T> group_twigs(const DoubleWeights<T>& d, const std::vector<Label>& members, T* spread) {
  std::vector<T> twigs;
  for (Label g : members) {
    Label partner = g == members[0] ? members[1] : members[0];
    twigs.push_back(twig_doubles(d, g, partner, spread));
  }
  return twigs;
}

// Joins the remaining two or three labels.
template <class T>
void finish_small(Assembler<T>& assembler, const DoubleWeights<T>& d, Label next, T* spread) {
  const auto& L = d.labels();
  if (L.size() == 2) {
    assembler.connect(L[0], L[1], d(L[0], L[1]));
    return;
  }
  assembler.join(next, L, group_twigs(d, L, spread));
}

}  // namespace

template <class T>
SMatrix<T> s_matrix(const DoubleWeights<T>& d) {
  const int n = d.size();
  if (n < 3) throw SizeError("S matrix needs at least three labels", 3);
  std::vector<T> row_sum(n, T(0));
  parallel_for(n, [&](std::size_t p) {
    for (int q = 0; q < n; ++q) {
      if (q != static_cast<int>(p)) row_sum[p] += d.at_pos(p, q);
    }
  });
  SMatrix<T> s(d.labels());
  parallel_for(n, [&](std::size_t p) {
    for (int q = static_cast<int>(p) + 1; q < n; ++q) {
      s.set_pos(p, q, T((n - 2) * d.at_pos(p, q) - row_sum[p] - row_sum[q]));
    }
  });
  return s;
}

template <class T>
SMatrix<T> s_matrix_triples(const TripleWeights<T>& t) {
  const int n = t.size();
  if (n < 5) throw SizeError("triple S matrix needs at least five labels", 5);
  std::vector<T> avoid_sum(n, T(0));  // sum over 2-subsets {r,s} of D(i,r,s)
  std::vector<std::vector<T>> pair_sum(n, std::vector<T>(n, T(0)));
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = q + 1; r < n; ++r) {
        const T& v = t.at_pos(p, q, r);
        avoid_sum[p] += v;
        avoid_sum[q] += v;
        avoid_sum[r] += v;
        pair_sum[p][q] += v;
        pair_sum[p][r] += v;
        pair_sum[q][r] += v;
      }
    }
  }
  SMatrix<T> s(t.labels());
  const T factor = T(T(n - 2) / 2);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      s.set_pos(p, q, T(factor * pair_sum[p][q] - avoid_sum[p] - avoid_sum[q]));
    }
  }
  return s;
}

template <class T>
ScanResult<T> cherry_scan(const DoubleWeights<T>& d, const T& epsilon) {
  const int n = d.size();
  if (n < 4) throw SizeError("cherry scan needs at least four labels", 4);
  const auto s = s_matrix(d);
  const auto& labels = d.labels();
  ScanResult<T> out;
  out.records.resize(n);
  std::vector<std::uint64_t> reads(n, 0);
  parallel_for(n, [&](std::size_t col) {
    const int j = static_cast<int>(col);
    int best = j == 0 ? 1 : 0;
    std::uint64_t count = 0;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      ++count;
      if (s.at_pos(i, j) < s.at_pos(best, j)) best = i;
    }
    Band<T> band;
    for (int y = 0; y < n; ++y) {
      if (y == j || y == best) continue;
      count += 2;
      band.add(T(d.at_pos(y, best) - d.at_pos(y, j)));
    }
    auto& rec = out.records[j];
    rec.column = labels[j];
    rec.row = labels[best];
    rec.column_minimum = s.at_pos(best, j);
    rec.spread = band.spread();
    rec.confirmed = !(rec.spread > epsilon);
    reads[j] = count;
  });
  // Building S reads every off-diagonal entry of D once for the row sums and
  // once more for the upper triangle.
  out.entries_examined = static_cast<std::uint64_t>(n) * (n - 1) + static_cast<std::uint64_t>(n) * (n - 1) / 2;
  for (auto r : reads) out.entries_examined += r;

  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < n; ++j) {
    const auto& rec = out.records[j];
    if (!rec.confirmed) continue;
    int i = d.position(rec.row);
    edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [a, b] : edges) out.pairs.emplace_back(labels[a], labels[b]);
  out.bells = components(labels, edges);
  return out;
}

template <class T>
WeightedTree<T> nj_classic(const DoubleWeights<T>& d, const T& contract_tol, NjTelemetry<T>* telemetry) {
  if (d.size() < 2) throw SizeError("neighbor joining needs at least two labels", 2);
  T* spread = telemetry ? &telemetry->max_twig_spread : nullptr;
  Assembler<T> assembler(d.labels());
  DoubleWeights<T> cur = d;
  Label next = d.labels().back() + 1;
  while (cur.size() > 2) {
    auto [p, q] = global_minimum(s_matrix(cur));
    Label i = cur.labels()[p], j = cur.labels()[q];
    std::vector<T> twigs{twig_doubles(cur, i, j, spread), twig_doubles(cur, j, i, spread)};
    Merge mg{next++, {i, j}};
    assembler.join(mg.z, mg.members, twigs);
    cur = merge_reduce(cur, {mg});
    if (telemetry) {
      ++telemetry->rounds;
      telemetry->bells_per_round.push_back(1);
    }
  }
  assembler.connect(cur.labels()[0], cur.labels()[1], cur.at_pos(0, 1));
  if (telemetry) ++telemetry->rounds;
  return std::move(assembler).finish(contract_tol);
}

template <class T>
WeightedTree<T> nj_pruning(const DoubleWeights<T>& d, const T& epsilon, const T& contract_tol,
                           NjTelemetry<T>* telemetry) {
  if (d.size() < 2) throw SizeError("neighbor joining needs at least two labels", 2);
  NjTelemetry<T> local;
  NjTelemetry<T>& tel = telemetry ? *telemetry : local;
  T* spread = telemetry ? &telemetry->max_twig_spread : nullptr;
  Assembler<T> assembler(d.labels());
  DoubleWeights<T> cur = d;
  Label next = d.labels().back() + 1;
  while (true) {
    ++tel.rounds;
    if (cur.size() <= 3) {
      finish_small(assembler, cur, next, spread);
      tel.bells_per_round.push_back(1);
      tel.entries_per_round.push_back(0);
      break;
    }
    auto scan = cherry_scan(cur, epsilon);
    tel.entries_per_round.push_back(scan.entries_examined);
    auto groups = std::move(scan.bells);
    if (groups.empty()) {
      auto [p, q] = global_minimum(s_matrix(cur));
      groups.push_back({cur.labels()[p], cur.labels()[q]});
      ++tel.fallback_joins;
    }
    tel.bells_per_round.push_back(static_cast<int>(groups.size()));
    if (groups.size() == 1 && static_cast<int>(groups[0].size()) == cur.size()) {
      assembler.join(next++, groups[0], group_twigs(cur, groups[0], spread));
      break;
    }
    std::vector<Merge> merges;
    for (auto& g : groups) {
      Merge mg{next++, g};
      assembler.join(mg.z, mg.members, group_twigs(cur, mg.members, spread));
      merges.push_back(std::move(mg));
    }
    cur = merge_reduce(cur, merges);
  }
  return std::move(assembler).finish(contract_tol);
}

template <class T>
WeightedTree<T> nj_from_triples(const TripleWeights<T>& t, const T& epsilon, const T& contract_tol,
                                NjTelemetry<T>* telemetry) {
  if (t.size() < 5) throw SizeError("neighbor joining on triple weights needs at least five labels", 5);
  NjTelemetry<T> local;
  NjTelemetry<T>& tel = telemetry ? *telemetry : local;
  T* spread = telemetry ? &telemetry->max_twig_spread : nullptr;
  struct Level {
    std::vector<Merge> merges;
    std::vector<std::vector<T>> twigs;
  };
  std::vector<Level> levels;
  TripleWeights<T> cur = t;
  Label next = t.labels().back() + 1;
  while (cur.size() > 5) {
    ++tel.rounds;
    const int m = cur.size();
    const auto& labels = cur.labels();
    const auto s = s_matrix_triples(cur);
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < m; ++j) {
      int best = j == 0 ? 1 : 0;
      for (int i = 0; i < m; ++i) {
        if (i != j && s.at_pos(i, j) < s.at_pos(best, j)) best = i;
      }
      if (star_holds(cur, labels[best], labels[j], epsilon)) edges.emplace_back(std::min(best, j), std::max(best, j));
    }
    std::vector<Pseudobell<T>> pbs;
    for (auto& g : components(labels, edges)) pbs.push_back(Pseudobell<T>{g, {}, 0, false});
    if (pbs.empty()) {
      auto [p, q] = global_minimum(s);
      pbs.push_back(Pseudobell<T>{{labels[p], labels[q]}, {}, 0, false});
      ++tel.fallback_joins;
    }
    auto selected = select_for_pruning(pbs, m, 5);
    tel.bells_per_round.push_back(static_cast<int>(selected.size()));
    const auto derived = derived_pairwise_first(cur);

    Level level;
    std::vector<char> in_group(m, 0);
    std::vector<int> group_of(m, -1);
    std::vector<T> twig_at(m, T(0));
    for (const auto& pb : selected) {
      Merge mg{next++, pb.members};
      std::vector<T> twigs;
      for (Label g : mg.members) {
        Label partner = g == mg.members[0] ? mg.members[1] : mg.members[0];
        std::vector<Label> free;
        for (Label l : labels) {
          if (l != g && l != partner) free.push_back(l);
        }
        T a = twig_length_triples(cur, derived, g, partner, free[0], free[1]);
        if (spread) {
          Band<T> band;
          for (std::size_t x = 0; x < free.size(); ++x) {
            for (std::size_t y = x + 1; y < free.size(); ++y) {
              band.add(twig_length_triples(cur, derived, g, partner, free[x], free[y]));
            }
          }
          if (band.spread() > *spread) *spread = band.spread();
        }
        twigs.push_back(a);
        int pos = cur.position(g);
        group_of[pos] = static_cast<int>(level.merges.size());
        twig_at[pos] = a;
      }
      level.merges.push_back(std::move(mg));
      level.twigs.push_back(std::move(twigs));
    }
    // Each reduced label is represented by one original position: itself,
    // or the first member of its group.
    std::vector<Label> new_labels;
    std::vector<int> rep;
    for (int p = 0; p < m; ++p) {
      if (group_of[p] < 0) {
        new_labels.push_back(labels[p]);
        rep.push_back(p);
      }
    }
    for (const auto& mg : level.merges) {
      new_labels.push_back(mg.z);
      rep.push_back(cur.position(mg.members[0]));
    }
    std::vector<std::size_t> order(new_labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return new_labels[a] < new_labels[b]; });
    std::vector<Label> sorted_labels;
    std::vector<int> sorted_rep;
    for (auto o : order) {
      sorted_labels.push_back(new_labels[o]);
      sorted_rep.push_back(rep[o]);
    }
    TripleWeights<T> reduced(sorted_labels);
    const int k = static_cast<int>(sorted_labels.size());
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        for (int c = b + 1; c < k; ++c) {
          int pa = sorted_rep[a], pb = sorted_rep[b], pc = sorted_rep[c];
          reduced.set_pos(a, b, c, T(cur.at_pos(pa, pb, pc) - twig_at[pa] - twig_at[pb] - twig_at[pc]));
        }
      }
    }
    levels.push_back(std::move(level));
    cur = std::move(reduced);
  }
  auto base = nj_classic(derived_pairwise_first(cur), contract_tol, telemetry);
  auto builder = base.to_builder();
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    for (std::size_t g = 0; g < it->merges.size(); ++g) {
      const auto& mg = it->merges[g];
      auto node = builder.find_leaf(mg.z);
      if (!node) throw std::logic_error("merged label missing during expansion");
      builder.set_label(*node, 0);
      for (std::size_t i = 0; i < mg.members.size(); ++i) {
        builder.add_edge(*node, builder.add_leaf(mg.members[i]), it->twigs[g][i]);
      }
    }
  }
  return contract_internal_edges(std::move(builder).build(), contract_tol);
}

#define TREEWEIGHTS_INSTANTIATE_NJ(T)                                                               \
  template SMatrix<T> s_matrix(const DoubleWeights<T>&);                                            \
  template SMatrix<T> s_matrix_triples(const TripleWeights<T>&);                                    \
  template ScanResult<T> cherry_scan(const DoubleWeights<T>&, const T&);                            \
  template WeightedTree<T> nj_classic(const DoubleWeights<T>&, const T&, NjTelemetry<T>*);          \
  template WeightedTree<T> nj_pruning(const DoubleWeights<T>&, const T&, const T&, NjTelemetry<T>*); \
  template WeightedTree<T> nj_from_triples(const TripleWeights<T>&, const T&, const T&, NjTelemetry<T>*);

TREEWEIGHTS_INSTANTIATE_NJ(double)
TREEWEIGHTS_INSTANTIATE_NJ(Rational)

}  // namespace treeweights
