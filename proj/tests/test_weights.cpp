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

#include <string>

#include "fixtures.hpp"
#include "treeweights/errors.hpp"

using namespace treeweights;
using namespace treeweights::testing;

namespace {

DoubleWeights<Q> quartet_doubles() { return doubles_of(quartet()); }
TripleWeights<Q> caterpillar_triples() { return triples_of(caterpillar()); }

}  // namespace

TEST_CASE("containers are order independent") {
  auto d = quartet_doubles();
  CHECK(d(1, 2) == 3);
  CHECK(d(2, 1) == 3);
  CHECK(d(3, 4) == 7);
  CHECK(d(1, 3) == 9);
  CHECK(d(1, 4) == 10);
  CHECK(d(2, 3) == 10);
  CHECK(d(2, 4) == 11);
  auto t = caterpillar_triples();
  CHECK(t(3, 1, 2) == t(1, 2, 3));
  CHECK(t(5, 4, 3) == 19);
  CHECK_THROWS_AS(d(1, 9), LabelError);
}

TEST_CASE("caterpillar triple weights") {
  auto t = caterpillar_triples();
  CHECK(t(1, 2, 3) == 12);
  CHECK(t(1, 2, 4) == 20);
  CHECK(t(1, 2, 5) == 21);
  CHECK(t(1, 3, 4) == 21);
  CHECK(t(1, 3, 5) == 22);
  CHECK(t(1, 4, 5) == 23);
  CHECK(t(2, 3, 4) == 22);
  CHECK(t(2, 3, 5) == 23);
  CHECK(t(2, 4, 5) == 24);
  CHECK(t(3, 4, 5) == 19);
}

TEST_CASE("star condition on doubles") {
  auto d = quartet_doubles();
  auto s12 = star_condition_doubles(d, 1, 2, Q(0));
  CHECK(s12.holds);
  CHECK(s12.common_difference == -1);
  auto s13 = star_condition_doubles(d, 1, 3, Q(0));
  CHECK_FALSE(s13.holds);
  CHECK(s13.max_spread == 10);

  auto three = doubles_of(star(3, Q(2)));
  CHECK(star_condition_doubles(three, 1, 2, Q(0)).holds);
  CHECK_THROWS_AS(star_condition_doubles(doubles_of(parse_newick<Q>("(1:1,2:1);")), 1, 2, Q(0)), SizeError);
}

TEST_CASE("star condition on triples") {
  auto t = caterpillar_triples();
  auto s12 = star_condition_triples(t, 1, 2, Q(0));
  CHECK(s12.holds);
  CHECK(s12.common_difference == -1);
  auto s13 = star_condition_triples(t, 1, 3, Q(0));
  CHECK_FALSE(s13.holds);
  CHECK(s13.max_spread == 6);
  auto s45 = star_condition_triples(t, 4, 5, Q(0));
  CHECK(s45.holds);
  CHECK(s45.common_difference == -1);
  CHECK(star_condition_triples(t, 1, 3, Q(6)).holds);
}

TEST_CASE("neighbor pairs") {
  using P = std::vector<std::pair<Label, Label>>;
  CHECK(neighbor_pairs(caterpillar_triples(), Q(0)) == P{{1, 2}, {4, 5}});
  CHECK(neighbor_pairs(quartet_doubles(), Q(0)) == P{{1, 2}, {3, 4}});
  CHECK(neighbor_pairs(triples_of(star(5, Q(1))), Q(0)).size() == 10);
  try {
    neighbor_pairs(triples_of(quartet()), Q(0));
    FAIL("expected SizeError");
  } catch (const SizeError& e) {
    CHECK(e.required_minimum() == 5);
  }
}

TEST_CASE("derived pairwise") {
  auto t = caterpillar_triples();
  CHECK(derived_pairwise(t, 1, 2, 3, 4, 5) == 3);
  CHECK(derived_pairwise(TripleWeights<Q>::over_range(5), 1, 2, 3, 4, 5) == 0);
  CHECK_THROWS_AS(derived_pairwise(t, 1, 2, 3, 4, 4), ArgumentError);

  auto check = derived_pairwise_consistent(t, Q(0));
  REQUIRE(check.consistent);
  auto d = doubles_of(caterpillar());
  for (Label i = 1; i <= 5; ++i)
    for (Label j = i + 1; j <= 5; ++j) CHECK((*check.doubles)(i, j) == d(i, j));

  auto bumped = t;
  bumped.set(1, 2, 3, Q(13));
  CHECK(derived_pairwise_consistent(bumped, Q(0)).consistent);
  bumped = triples_of(random_rational(6, 3, true));
  bumped.set(1, 2, 3, bumped(1, 2, 3) + 1);
  auto broken = derived_pairwise_consistent(bumped, Q(0));
  CHECK_FALSE(broken.consistent);
  CHECK(broken.worst_spread > 0);
  CHECK_THROWS_AS(derived_pairwise_consistent(triples_of(quartet()), Q(0)), SizeError);
}

TEST_CASE("derived pairwise inverts triples_from_doubles") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto d = doubles_of(random_rational(7, seed, seed % 2 == 1));
    auto t = triples_from_doubles(d);
    for (Label i = 1; i <= 7; ++i)
      for (Label j = i + 1; j <= 7; ++j)
        for (Label r = 1; r <= 7; ++r)
          for (Label s = r + 1; s <= 7; ++s)
            for (Label u = s + 1; u <= 7; ++u) {
              if (r == i || r == j || s == i || s == j || u == i || u == j) continue;
              CHECK(derived_pairwise(t, i, j, r, s, u) == d(i, j));
            }
    CHECK(derived_pairwise_consistent(t, Q(0)).consistent);
  }
}

TEST_CASE("triples from doubles") {
  auto t = triples_from_doubles(quartet_doubles());
  CHECK(t(1, 2, 3) == 11);
  auto z = triples_from_doubles(DoubleWeights<Q>::over_range(4));
  CHECK(z(1, 2, 3) == 0);
  auto c = triples_from_doubles(doubles_of(caterpillar()));
  auto direct = caterpillar_triples();
  for (Label i = 1; i <= 5; ++i)
    for (Label j = i + 1; j <= 5; ++j)
      for (Label k = j + 1; k <= 5; ++k) CHECK(c(i, j, k) == direct(i, j, k));
}

TEST_CASE("four point check") {
  auto q = quartet_doubles();
  CHECK(buneman_check(q, Q(0)).passes);
  CHECK(buneman_check(doubles_of(caterpillar()), Q(0)).passes);
  q.set(1, 2, Q(30));
  auto v = buneman_check(q, Q(0));
  CHECK_FALSE(v.passes);
  CHECK(v.witness == std::array<Label, 4>{1, 2, 3, 4});
  CHECK(buneman_check(doubles_of(star(3, Q(1))), Q(0)).passes);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CHECK(buneman_check(doubles_of(random_rational(10, seed, false)), Q(0)).passes);
  }
}

TEST_CASE("text formats") {
  auto d = parse_doubles<Q>("3\n1 2 3.0\n1 3 4.0\n2 3 5.0\n");
  CHECK(d.size() == 3);
  CHECK(d(2, 3) == 5);

  auto q = quartet_doubles();
  auto text = emit_doubles(q);
  auto back = parse_doubles<Q>(text);
  CHECK(emit_doubles(back) == text);

  auto t = caterpillar_triples();
  CHECK(emit_triples(parse_triples<Q>(emit_triples(t))) == emit_triples(t));

  DoubleWeights<double> f = DoubleWeights<double>::over_range(3);
  f.set(1, 2, 0.1);
  f.set(1, 3, 1.0 / 3.0);
  f.set(2, 3, 2e-300);
  auto fb = parse_doubles<double>(emit_doubles(f));
  CHECK(fb(1, 2) == 0.1);
  CHECK(fb(1, 3) == 1.0 / 3.0);
  CHECK(fb(2, 3) == 2e-300);

  auto expect_line = [](const std::string& body, int line) {
    try {
      parse_doubles<Q>(body);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_line("3\n1 2 3\n1 2 4\n2 3 5\n", 3);
  expect_line("3\n1 2 3\n1 4 4\n2 3 5\n", 3);
  expect_line("3\n1 2 3\n1 3 x\n2 3 5\n", 3);
  CHECK_THROWS_AS(parse_doubles<Q>("3\n1 2 3\n1 3 4\n"), ParseError);
  CHECK_THROWS_AS(parse_triples<Q>("4\n1 2 3 1\n"), ParseError);
}
