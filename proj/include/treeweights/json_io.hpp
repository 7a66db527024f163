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

#include <json.hpp>

#include "treeweights/nj.hpp"
#include "treeweights/reconstruct.hpp"
#include "treeweights/tree.hpp"

namespace treeweights {

/// Numbers for doubles, exact "p/q" or integer strings for rationals.
nlohmann::json scalar_to_json(double x);
nlohmann::json scalar_to_json(const Rational& x);

/// {"leaf_count", "nodes": [{"id", "label"}], "edges": [{"u", "v", "weight"}]}.
/// Internal nodes have a null label.
template <class T>
nlohmann::json tree_to_json(const WeightedTree<T>& tree);

/// Inverse of tree_to_json; weights may be numbers or strings. Throws
/// ArgumentError on malformed input.
template <class T>
WeightedTree<T> tree_from_json(const nlohmann::json& j);

/// Verdict, failure, per-level pseudobells, base-case record, positivity
/// flag and the final tree (Newick and JSON).
template <class W>
nlohmann::json reconstruction_report(const Reconstruction<W>& result);

template <class T>
nlohmann::json scan_to_json(const ScanResult<T>& scan);

template <class T>
nlohmann::json telemetry_to_json(const NjTelemetry<T>& telemetry);

}  // namespace treeweights
