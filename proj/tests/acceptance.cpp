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

// Acceptance suite. Usage: treeweights_acceptance [criterion...]
// With no arguments every criterion runs. Prints one PASS/FAIL line per
// criterion and exits nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "treeweights/nj.hpp"
#include "treeweights/oracle.hpp"
#include "treeweights/reconstruct.hpp"

using namespace treeweights;
using namespace treeweights::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// Copy of `shape` with every edge weight drawn by `draw`.
RTree reweight(const RTree& shape, const std::function<Q()>& draw) {
  RTree::Builder b;
  for (std::size_t v = 0; v < shape.node_count(); ++v) {
    if (shape.is_leaf(static_cast<NodeId>(v))) {
      b.add_leaf(shape.label(static_cast<NodeId>(v)));
    } else {
      b.add_internal();
    }
  }
  for (const auto& e : shape.edges()) b.add_edge(e.u, e.v, draw());
  return std::move(b).build();
}

std::function<Q()> positive_draw(std::mt19937_64& rng) {
  return [&rng] { return Q(static_cast<long>(rng() % 1000 + 1), 100); };
}

bool all_positive(const RTree& tree) {
  return std::all_of(tree.edges().begin(), tree.edges().end(), [](const auto& e) { return e.weight > 0; });
}

RTree random_instance(std::mt19937_64& rng, int lo, int hi) {
  const int n = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  return random_rational(n, rng(), rng() % 2 == 0);
}

Outcome c1() {
  std::mt19937_64 rng(101);
  auto start = std::chrono::steady_clock::now();
  int ok = 0;
  const int total = 500;
  for (int i = 0; i < total; ++i) {
    auto tree = random_instance(rng, 4, 40);
    auto r = reconstruct_from_doubles(doubles_of(tree), Q(0), false);
    if (r.ok() && tree_equal(*r.tree, tree, Q(0))) ++ok;
  }
  double secs = seconds_since(start);
  return {ok == total && secs < 120, format("%d/%d exact round trips from pairwise weights in %.1fs", ok, total, secs)};
}

Outcome c2() {
  std::mt19937_64 rng(202);
  int ok = 0;
  const int total = 300;
  for (int i = 0; i < total; ++i) {
    auto tree = random_instance(rng, 5, 25);
    auto r = reconstruct_from_triples(triples_of(tree), Q(0), false);
    if (r.ok() && tree_equal(*r.tree, tree, Q(0))) ++ok;
  }
  return {ok == total, format("%d/%d exact round trips from triple weights", ok, total)};
}

// Pairs that are not both in one bell.
std::vector<std::pair<Label, Label>> non_bell_pairs(const RTree& tree) {
  auto bells = bell_pairs(tree);
  std::vector<std::pair<Label, Label>> out;
  const int n = static_cast<int>(tree.leaf_count());
  for (Label i = 1; i <= n; ++i)
    for (Label j = i + 1; j <= n; ++j)
      if (!std::binary_search(bells.begin(), bells.end(), std::make_pair(i, j))) out.emplace_back(i, j);
  return out;
}

Outcome c3() {
  std::mt19937_64 rng(303);
  Oracle oracle;
  int instances = 0, agree = 0;
  for (int n = 3; n <= 6; ++n) {
    for (const auto& topo : enumerate_topologies(n, true)) {
      for (int draw = 0; draw < 20; ++draw) {
        auto tree = reweight(topo.shape, positive_draw(rng));
        auto d = doubles_of(tree);
        auto r = reconstruct_from_doubles(d, Q(0), false);
        auto o = oracle.realizable_brute(d, false);
        ++instances;
        if (r.ok() && o && tree_equal(*r.tree, *o, Q(0)) && tree_equal(*o, tree, Q(0))) ++agree;
        if (n < 5) continue;
        auto t = triples_of(tree);
        auto rt = reconstruct_from_triples(t, Q(0), false);
        auto ot = oracle.realizable_brute(t, false);
        ++instances;
        if (rt.ok() && ot && tree_equal(*rt.tree, *ot, Q(0)) && tree_equal(*ot, tree, Q(0))) ++agree;
      }
    }
  }

  int perturbed = 0, rejected_by_both = 0;
  const std::vector<std::vector<Topology>> pools{enumerate_topologies(4, true), enumerate_topologies(5, true),
                                                 enumerate_topologies(6, true)};
  while (perturbed < 200) {
    const auto& pool = pools[rng() % pools.size()];
    auto tree = reweight(pool[rng() % pool.size()].shape, positive_draw(rng));
    auto candidates = non_bell_pairs(tree);
    if (candidates.empty()) continue;
    auto [i, j] = candidates[rng() % candidates.size()];
    auto d = doubles_of(tree);
    d.set(i, j, d(i, j) + Q(static_cast<long>(rng() % 50 + 1), 7));
    ++perturbed;
    if (!reconstruct_from_doubles(d, Q(0), false).ok() && !oracle.realizable_brute(d, false)) ++rejected_by_both;
  }
  return {agree == instances && rejected_by_both == perturbed,
          format("%d/%d instances agree with the brute-force oracle (verdict and tree); "
                 "%d/%d single-entry perturbations rejected by both",
                 agree, instances, rejected_by_both, perturbed)};
}

Outcome c4() {
  std::mt19937_64 rng(404);
  int checked = 0, agree = 0;
  for (int n = 3; n <= 6; ++n) {
    for (const auto& topo : enumerate_topologies(n, true)) {
      auto tree = reweight(topo.shape, positive_draw(rng));
      auto expect = bell_pairs(tree);
      ++checked;
      if (neighbor_pairs(doubles_of(tree), Q(0)) == expect) ++agree;
      if (n >= 5) {
        ++checked;
        if (neighbor_pairs(triples_of(tree), Q(0)) == expect) ++agree;
      }
    }
  }
  return {agree == checked, format("%d/%d shapes: star-condition pairs equal bell pairs", agree, checked)};
}

Outcome c5() {
  auto c = caterpillar();
  auto t = triples_of(c);
  auto base = base_case_triples_5(t, Q(0));
  bool exact = base.tree && tree_equal(*base.tree, c, Q(0));
  std::set<Q> solved(base.record.unknowns.begin(), base.record.unknowns.end());
  exact = exact && solved == std::set<Q>{Q(1), Q(2), Q(3), Q(4), Q(5), Q(6), Q(7)};

  Oracle oracle;
  int perturbed = 0, rejected = 0;
  std::ostringstream accepted;
  for (Label i = 1; i <= 5; ++i)
    for (Label j = i + 1; j <= 5; ++j)
      for (Label k = j + 1; k <= 5; ++k) {
        bool entry_rejected = true;
        for (const Q& delta : {Q(1), Q(-1), Q(1, 3)}) {
          auto p = t;
          p.set(i, j, k, t(i, j, k) + delta);
          if (reconstruct_from_triples(p, Q(0), false).ok()) entry_rejected = false;
        }
        ++perturbed;
        if (entry_rejected) {
          ++rejected;
        } else {
          auto p = t;
          p.set(i, j, k, t(i, j, k) + 1);
          accepted << " D" << i << j << k << (oracle.realizable_brute(p, true) ? " (oracle finds a positive tree)" : "");
        }
      }
  std::string detail = format("base solve %s; %d/%d perturbed entries rejected", exact ? "exact" : "WRONG",
                              rejected, perturbed);
  if (rejected != perturbed) detail += "; still realizable after perturbing" + accepted.str();
  return {exact && rejected == perturbed, detail};
}

Outcome c6() {
  std::mt19937_64 rng(606);
  long checked = 0, equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto tree = random_instance(rng, 5, 9);
    auto t = triples_of(tree);
    const int n = static_cast<int>(tree.leaf_count());
    for (Label i = 1; i <= n; ++i)
      for (Label j = i + 1; j <= n; ++j) {
        const Q truth = pairwise_weight(tree, i, j);
        for (Label r = 1; r <= n; ++r)
          for (Label s = r + 1; s <= n; ++s)
            for (Label u = s + 1; u <= n; ++u) {
              if (r == i || r == j || s == i || s == j || u == i || u == j) continue;
              ++checked;
              if (derived_pairwise(t, i, j, r, s, u) == truth) ++equal;
            }
      }
  }
  return {equal == checked, format("%ld/%ld five-label evaluations equal the path weight", equal, checked)};
}

Outcome c7() {
  std::mt19937_64 rng(707);
  int ok = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    auto tree = random_instance(rng, 4, 30);
    auto d = doubles_of(tree);
    auto classic = nj_classic(d);
    auto pruning = nj_pruning(d, Q(0));
    auto r = reconstruct_from_doubles(d, Q(0), false);
    if (r.ok() && tree_equal(classic, pruning, Q(0)) && tree_equal(classic, *r.tree, Q(0)) &&
        tree_equal(classic, tree, Q(0)))
      ++ok;
  }
  return {ok == total, format("%d/%d instances: classic, pruning and reconstruction agree", ok, total)};
}

// Every pair attaining the global minimum of S lies in one bell.
bool minima_are_cherries(const RTree& tree) {
  auto s = s_matrix(doubles_of(tree));
  const auto& labels = s.labels();
  Q best = s(labels[0], labels[1]);
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) best = std::min(best, s(labels[a], labels[b]));
  auto bells = bell_pairs(tree);
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      if (s(labels[a], labels[b]) == best &&
          !std::binary_search(bells.begin(), bells.end(), std::make_pair(labels[a], labels[b])))
        return false;
  return true;
}

Outcome c8() {
  std::mt19937_64 rng(808);
  int checked = 0, ok = 0;
  for (int n = 3; n <= 6; ++n) {
    for (const auto& topo : enumerate_topologies(n, true)) {
      ++checked;
      if (minima_are_cherries(reweight(topo.shape, positive_draw(rng)))) ++ok;
    }
  }
  const int exhaustive = checked;
  for (int i = 0; i < 200; ++i) {
    ++checked;
    if (minima_are_cherries(random_instance(rng, 7, 40))) ++ok;
  }
  return {ok == checked, format("%d/%d instances (%d exhaustive shapes, 200 random): every S minimum is a cherry",
                                ok, checked, exhaustive)};
}

Outcome c9() {
  std::vector<double> per_n2;
  std::string detail = "entries/n^2:";
  auto scan_once = [](int n, std::uint64_t seed) {
    RandomTreeOptions o;
    o.leaves = n;
    o.seed = seed;
    auto d = doubles_of(random_tree<double>(o, 0.1, 10.0));
    auto start = std::chrono::steady_clock::now();
    auto scan = cherry_scan(d, 1e-9);
    return std::make_pair(scan.entries_examined, seconds_since(start));
  };
  for (int n : {100, 200, 400, 800}) {
    auto [entries, secs] = scan_once(n, 900 + n);
    (void)secs;
    double ratio = static_cast<double>(entries) / (static_cast<double>(n) * n);
    per_n2.push_back(ratio);
    detail += format(" n=%d:%.3f", n, ratio);
  }
  double spread = *std::max_element(per_n2.begin(), per_n2.end()) / *std::min_element(per_n2.begin(), per_n2.end());
  auto [entries, secs] = scan_once(1000, 1900);
  (void)entries;
  detail += format("; max/min %.3f; n=1000 round %.3fs", spread, secs);
  return {spread <= 1.5 && secs < 5.0, detail};
}

Outcome c10() {
  std::mt19937_64 rng(1010);
  const double delta = 0.01;
  std::uniform_real_distribution<double> twig(0.5, 5.0);
  std::uniform_real_distribution<double> noise(-delta, delta);
  int recovered = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Label> order{1, 2, 3, 4};
    std::shuffle(order.begin(), order.end(), rng);
    WeightedTree<double>::Builder b;
    NodeId u = b.add_internal();
    NodeId v = b.add_internal();
    b.add_edge(b.add_leaf(order[0]), u, twig(rng));
    b.add_edge(b.add_leaf(order[1]), u, twig(rng));
    b.add_edge(u, v, 10 * delta);
    b.add_edge(b.add_leaf(order[2]), v, twig(rng));
    b.add_edge(b.add_leaf(order[3]), v, twig(rng));
    auto tree = std::move(b).build();
    auto d = doubles_of(tree);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) d.set_pos(i, j, d.at_pos(i, j) + noise(rng));
    std::vector<std::pair<Label, Label>> truth{std::minmax(order[0], order[1]), std::minmax(order[2], order[3])};
    std::sort(truth.begin(), truth.end());
    if (cherry_scan(d, 4 * delta).pairs == truth) ++recovered;
  }
  return {recovered * 100 >= 95 * trials,
          format("%d/%d quartets (noise %.2g, epsilon %.2g, inner edge %.2g) recovered", recovered, trials, delta,
                 4 * delta, 10 * delta)};
}

Outcome c11() {
  std::mt19937_64 rng(1111);
  Oracle oracle;
  auto mixed = [&rng] { return Q(static_cast<long>(rng() % 9) - 3, 2); };
  int checked = 0, agree = 0, negative = 0;
  for (int n = 3; n <= 6; ++n) {
    for (const auto& topo : enumerate_topologies(n, true)) {
      for (int draw = 0; draw < 3; ++draw) {
        auto tree = reweight(topo.shape, draw == 0 ? positive_draw(rng) : std::function<Q()>(mixed));
        auto d = doubles_of(tree);
        auto unique = oracle.realizable_brute(d, false);
        if (!unique) continue;
        bool expect_reject = !all_positive(*unique);
        negative += expect_reject;
        ++checked;
        if (reconstruct_from_doubles(d, Q(0), true).ok() != expect_reject) ++agree;
        if (n < 5) continue;
        auto t = triples_of(tree);
        auto unique_t = oracle.realizable_brute(t, false);
        if (!unique_t) continue;
        bool expect_reject_t = !all_positive(*unique_t);
        negative += expect_reject_t;
        ++checked;
        if (reconstruct_from_triples(t, Q(0), true).ok() != expect_reject_t) ++agree;
      }
    }
  }
  return {agree == checked && negative > 0,
          format("%d/%d realizable instances (%d with a non-positive edge) classified like the oracle", agree,
                 checked, negative)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) {
    int k = std::atoi(argv[a]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[a]);
      return 1;
    }
    selected.push_back(k);
  }
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);

  int failures = 0;
  for (int k : selected) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = criteria[k - 1]();
    std::printf("C%-2d %s  %s  [%.2fs]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
