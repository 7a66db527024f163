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
#include "treeweights/json_io.hpp"

using namespace treeweights;
using namespace treeweights::testing;

TEST_CASE("tree json round trip") {
  auto c = caterpillar(Q(13, 2), Q(7));
  auto j = tree_to_json(c);
  CHECK(j["leaf_count"] == 5);
  CHECK(tree_equal(tree_from_json<Q>(j), c, Q(0)));
  auto f = tree_from_json<double>(nlohmann::json::parse(j.dump()));
  CHECK(pairwise_weight(f, 1, 3) == doctest::Approx(10.5));
  CHECK_THROWS_AS(tree_from_json<Q>(nlohmann::json::parse("{\"nodes\": 3}")), ArgumentError);
}

TEST_CASE("reconstruction report") {
  auto r = reconstruct_from_triples(triples_of(random_rational(8, 2, true)), Q(0), true);
  auto j = reconstruction_report(r);
  CHECK(j["verdict"] == "realizable");
  CHECK(j["failure"].is_null());
  CHECK(j["levels"].size() == r.trace.levels.size());
  CHECK(j["tree"]["newick"] == to_newick(*r.tree));

  auto bad = triples_of(caterpillar());
  bad.set(1, 3, 5, Q(23));
  auto jf = reconstruction_report(reconstruct_from_triples(bad, Q(0), false));
  CHECK(jf["verdict"] == "not_realizable");
  CHECK(jf["failure"]["kind"].is_string());
}
