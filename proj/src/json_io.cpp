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

#include "treeweights/json_io.hpp"

#include "treeweights/errors.hpp"

namespace treeweights {

using nlohmann::json;

json scalar_to_json(double x) { return x; }
json scalar_to_json(const Rational& x) { return x.get_str(); }

namespace {

template <class T>
json scalars(const std::vector<T>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(scalar_to_json(v));
  return out;
}

template <class T>
T scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
  if (j.is_number_integer()) return T(j.get<long>());
  if (j.is_number()) {
    if constexpr (std::is_same_v<T, double>) {
      return j.get<double>();
    } else {
      return Rational(j.get<double>());
    }
  }
  throw ArgumentError("edge weight must be a number or a string");
}

template <class T>
json pseudobell_json(const Pseudobell<T>& pb) {
  return json{{"members", pb.members},
              {"twig_lengths", scalars(pb.twig_lengths)},
              {"merged_label", pb.merged_label},
              {"partial", pb.partial}};
}

template <class T>
json base_case_json(const BaseCaseRecord<T>& r) {
  json unknowns = json::object();
  for (std::size_t i = 0; i < r.unknown_names.size() && i < r.unknowns.size(); ++i) {
    unknowns[r.unknown_names[i]] = scalar_to_json(r.unknowns[i]);
  }
  json pairs = json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({a, b});
  json subsets = json::array();
  for (const auto& c : r.pruned_subsets) {
    subsets.push_back(json{{"merged_pair", {c.merged_pair.first, c.merged_pair.second}},
                           {"labels", c.labels},
                           {"twigs", scalars(c.twigs)},
                           {"exempt", c.exempt},
                           {"positive", c.positive}});
  }
  return json{{"labels", r.labels},       {"pairs", pairs},
              {"unknowns", unknowns},     {"residual", scalar_to_json(r.residual)},
              {"pruned_subsets", subsets}, {"positive", r.positive}};
}

}  // namespace

template <class T>
json tree_to_json(const WeightedTree<T>& tree) {
  json nodes = json::array();
  for (std::size_t v = 0; v < tree.node_count(); ++v) {
    Label l = tree.label(static_cast<NodeId>(v));
    nodes.push_back(json{{"id", v}, {"label", l > 0 ? json(l) : json(nullptr)}});
  }
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back(json{{"u", e.u}, {"v", e.v}, {"weight", scalar_to_json(e.weight)}});
  return json{{"leaf_count", tree.leaf_count()}, {"nodes", nodes}, {"edges", edges}};
}

template <class T>
WeightedTree<T> tree_from_json(const json& j) {
  try {
    typename WeightedTree<T>::Builder b;
    const auto& nodes = j.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& node = nodes[i];
      if (node.contains("id") && node.at("id").get<std::size_t>() != i) {
        throw ArgumentError("node ids must be 0..count-1 in order");
      }
      const auto& label = node.contains("label") ? node.at("label") : json(nullptr);
      if (label.is_null()) {
        b.add_internal();
      } else {
        b.add_leaf(label.get<Label>());
      }
    }
    for (const auto& e : j.at("edges")) {
      b.add_edge(e.at("u").get<NodeId>(), e.at("v").get<NodeId>(), scalar_from_json<T>(e.at("weight")));
    }
    return std::move(b).build();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed tree JSON: ") + e.what());
  }
}

template <class W>
json reconstruction_report(const Reconstruction<W>& result) {
  json report;
  report["verdict"] = result.ok() ? "realizable" : "not_realizable";
  if (result.failure) {
    const auto& f = *result.failure;
    report["failure"] = json{{"kind", to_string(f.kind)}, {"level", f.level}, {"witness", f.witness}, {"message", f.message}};
  } else {
    report["failure"] = nullptr;
  }
  json levels = json::array();
  for (const auto& level : result.trace.levels) {
    json pbs = json::array();
    for (const auto& pb : level.pruned) pbs.push_back(pseudobell_json(pb));
    levels.push_back(json{{"labels_before", level.labels_before}, {"labels_after", level.labels_after}, {"pseudobells", pbs}});
  }
  report["levels"] = levels;
  report["base_case"] = base_case_json(result.trace.base_case);
  report["all_twigs_positive"] = result.trace.all_twigs_positive;
  if (result.tree) {
    report["tree"] = json{{"newick", to_newick(*result.tree)}, {"json", tree_to_json(*result.tree)}};
  } else {
    report["tree"] = nullptr;
  }
  return report;
}

template <class T>
json scan_to_json(const ScanResult<T>& scan) {
  json pairs = json::array();
  for (const auto& [a, b] : scan.pairs) pairs.push_back({a, b});
  json records = json::array();
  for (const auto& r : scan.records) {
    records.push_back(json{{"column", r.column},
                           {"row", r.row},
                           {"column_minimum", scalar_to_json(r.column_minimum)},
                           {"spread", scalar_to_json(r.spread)},
                           {"confirmed", r.confirmed}});
  }
  return json{{"pairs", pairs}, {"bells", scan.bells}, {"records", records}, {"entries_examined", scan.entries_examined}};
}

template <class T>
json telemetry_to_json(const NjTelemetry<T>& t) {
  return json{{"rounds", t.rounds},
              {"bells_per_round", t.bells_per_round},
              {"entries_per_round", t.entries_per_round},
              {"fallback_joins", t.fallback_joins},
              {"max_twig_spread", scalar_to_json(t.max_twig_spread)}};
}

#define TREEWEIGHTS_INSTANTIATE_JSON(T)                                            \
  template json tree_to_json(const WeightedTree<T>&);                              \
  template WeightedTree<T> tree_from_json<T>(const json&);                         \
  template json reconstruction_report(const Reconstruction<DoubleWeights<T>>&);    \
  template json reconstruction_report(const Reconstruction<TripleWeights<T>>&);    \
  template json scan_to_json(const ScanResult<T>&);                                \
  template json telemetry_to_json(const NjTelemetry<T>&);

TREEWEIGHTS_INSTANTIATE_JSON(double)
TREEWEIGHTS_INSTANTIATE_JSON(Rational)

}  // namespace treeweights
