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
#include "treeweights/linear_solve.hpp"
#include "treeweights/oracle.hpp"

using namespace treeweights;
using namespace treeweights::testing;

TEST_CASE("topology counts") {
  const std::size_t binary[] = {1, 1, 3, 15, 105, 945};
  const std::size_t all[] = {1, 1, 4, 26, 236, 2752};
  for (int n = 2; n <= 7; ++n) {
    CHECK(enumerate_topologies(n, false).size() == binary[n - 2]);
    CHECK(enumerate_topologies(n, true).size() == all[n - 2]);
  }
  CHECK_THROWS_AS(enumerate_topologies(9, false), SizeError);
}

TEST_CASE("every binary tree has two cherries") {
  for (int n = 4; n <= 6; ++n) {
    for (const auto& topo : enumerate_topologies(n, false)) CHECK(cherries(topo.shape).size() >= 2);
  }
}

TEST_CASE("fit weights on a fixed topology") {
  auto c = caterpillar();
  const auto key = shape_key(c);
  for (const auto& topo : enumerate_topologies(5, false)) {
    auto fit = fit_weights(topo, triples_of(c));
    if (topo.key == key) {
      REQUIRE(fit);
      CHECK(tree_equal(*fit, c, Q(0)));
    }
  }
  auto first = enumerate_topologies(5, false).front();
  DoubleWeights<Q> relabeled({2, 3, 4, 5, 6});
  CHECK_THROWS_AS(fit_weights(first, relabeled), LabelError);
}

TEST_CASE("brute-force realizability") {
  auto q = doubles_of(quartet());
  auto fit = realizable_brute(q, true);
  REQUIRE(fit);
  CHECK(tree_equal(*fit, quartet(), Q(0)));
  q.set(1, 2, Q(30));
  auto negative_inner = realizable_brute(q, false);
  REQUIRE(negative_inner);
  CHECK(tree_equal(*negative_inner, parse_newick<Q>("((1:29/2,2:31/2):-17/2,3:3,4:4);"), Q(0)));
  CHECK_FALSE(realizable_brute(q, true));

  auto negative = parse_newick<Q>("((1:1,2:2):-3,3:3,(4:4,5:5):7);");
  CHECK(realizable_brute(triples_of(negative), false));
  CHECK_FALSE(realizable_brute(triples_of(negative), true));
}

TEST_CASE("linear solvers") {
  Matrix<Q> a{{Q(1), Q(1)}, {Q(1), Q(-1)}, {Q(2), Q(0)}};
  auto s = solve_linear_system(a, std::vector<Q>{Q(3), Q(1), Q(4)}, Q(0));
  CHECK(s.consistent);
  CHECK(s.x == std::vector<Q>{Q(2), Q(1)});
  CHECK(s.rank == 2);
  auto bad = solve_linear_system(a, std::vector<Q>{Q(3), Q(1), Q(5)}, Q(0));
  CHECK_FALSE(bad.consistent);
  CHECK(bad.max_residual > 0);

  ExactSystem e({{1, 1}, {1, -1}, {2, 0}});
  CHECK(e.rank() == 2);
  auto x = e.solve({Q(3), Q(1), Q(4)});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK_FALSE(e.solve({Q(3), Q(1), Q(5)}));
}
