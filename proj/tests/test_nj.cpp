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

#include <doctest.h>

#include "fixtures.hpp"
#include "treeweights/errors.hpp"
#include "treeweights/nj.hpp"
#include "treeweights/reconstruct.hpp"

using namespace treeweights;
using namespace treeweights::testing;

TEST_CASE("S matrix of the quartet") {
  auto s = s_matrix(doubles_of(quartet()));
  CHECK(s(1, 2) == -40);
  CHECK(s(3, 4) == -40);
  CHECK(s(1, 3) == -30);
  CHECK(s(1, 4) == -30);
  CHECK(s(2, 3) == -30);
  CHECK(s(2, 4) == -30);
  CHECK_THROWS_AS(s_matrix(DoubleWeights<Q>::over_range(2)), SizeError);
}

TEST_CASE("triple S matrix is minimal at a cherry") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto tree = random_rational(5 + static_cast<int>(seed % 6), seed, seed % 2 == 0);
    auto s = s_matrix_triples(triples_of(tree));
    const auto& labels = s.labels();
    Label bi = 0, bj = 0;
    Q best;
    for (std::size_t a = 0; a < labels.size(); ++a)
      for (std::size_t b = a + 1; b < labels.size(); ++b) {
        Q v = s(labels[a], labels[b]);
        if (bi == 0 || v < best) {
          best = v;
          bi = labels[a];
          bj = labels[b];
        }
      }
    auto pairs = bell_pairs(tree);
    CHECK(std::find(pairs.begin(), pairs.end(), std::make_pair(bi, bj)) != pairs.end());
  }
}

TEST_CASE("cherry scan") {
  using P = std::vector<std::pair<Label, Label>>;
  auto q = cherry_scan(doubles_of(quartet()), Q(0));
  CHECK(q.pairs == P{{1, 2}, {3, 4}});
  CHECK(q.records.size() == 4);
  auto c = cherry_scan(doubles_of(caterpillar()), Q(0));
  CHECK(c.pairs == P{{1, 2}, {4, 5}});
  CHECK(c.bells == std::vector<std::vector<Label>>{{1, 2}, {4, 5}});
  CHECK(c.entries_examined > 0);
  auto s = cherry_scan(doubles_of(star(6, Q(1))), Q(0));
  CHECK(s.bells == std::vector<std::vector<Label>>{{1, 2, 3, 4, 5, 6}});
}

TEST_CASE("classic and pruning NJ recover exact trees") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto tree = random_rational(4 + static_cast<int>(seed % 20), seed, seed % 2 == 1);
    auto d = doubles_of(tree);
    CHECK(tree_equal(nj_classic(d), tree, Q(0)));
    NjTelemetry<Q> tel;
    CHECK(tree_equal(nj_pruning(d, Q(0), Q(0), &tel), tree, Q(0)));
    CHECK(tel.rounds >= 1);
    CHECK(tel.bells_per_round.size() == static_cast<std::size_t>(tel.rounds));
    if (tree.leaf_count() >= 5) CHECK(tree_equal(nj_from_triples(triples_of(tree), Q(0)), tree, Q(0)));
  }
}

TEST_CASE("pruning NJ on a balanced tree needs one round per level") {
  auto balanced = parse_newick<Q>(
      "((((1:1,2:1):1,(3:1,4:1):1):1,((5:1,6:1):1,(7:1,8:1):1):1):1,"
      "(((9:1,10:1):1,(11:1,12:1):1):1,((13:1,14:1):1,(15:1,16:1):1):1):1);");
  NjTelemetry<Q> tel;
  auto out = nj_pruning(doubles_of(balanced), Q(0), Q(0), &tel);
  CHECK(tree_equal(out, balanced, Q(0)));
  CHECK(tel.rounds == 4);
  CHECK(tel.bells_per_round.front() == 8);
  CHECK(tel.fallback_joins == 0);
}

TEST_CASE("small inputs") {
  DoubleWeights<Q> two = DoubleWeights<Q>::over_range(2);
  two.set(1, 2, Q(5));
  auto t2 = nj_classic(two);
  CHECK(t2.edge_count() == 1);
  CHECK(nj_pruning(two, Q(0)).edges()[0].weight == 5);

  auto three = doubles_of(star(3, Q(2)));
  CHECK(tree_equal(nj_classic(three), star(3, Q(2)), Q(0)));
  CHECK(tree_equal(nj_pruning(three, Q(0)), star(3, Q(2)), Q(0)));
}

TEST_CASE("float NJ with noise keeps the topology") {
  RandomTreeOptions o;
  o.leaves = 12;
  o.seed = 9;
  o.binary_only = true;
  auto tree = random_tree<double>(o, 1.0, 10.0);
  auto d = doubles_of(tree);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> noise(-1e-4, 1e-4);
  for (int i = 0; i < d.size(); ++i)
    for (int j = i + 1; j < d.size(); ++j) d.set_pos(i, j, d.at_pos(i, j) + noise(rng));
  CHECK(shape_key(nj_classic(d)) == shape_key(tree));
  CHECK(shape_key(nj_pruning(d, 1e-3)) == shape_key(tree));
}
