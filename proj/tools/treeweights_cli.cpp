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

// Command-line front end: tree generation, weight computation, checking,
// reconstruction, neighbor joining, comparison, brute-force oracle and
// scan benchmarks.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "treeweights/errors.hpp"
#include "treeweights/json_io.hpp"
#include "treeweights/nj.hpp"
#include "treeweights/oracle.hpp"
#include "treeweights/reconstruct.hpp"
#include "treeweights/tree.hpp"
#include "treeweights/weights.hpp"

namespace {

namespace tw = treeweights;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNotRealizable = 2;

struct Config {
  std::string input = "-";
  std::string second;
  std::string output = "-";
  std::string mode;
  int order = 2;
  std::string tol;
  std::string epsilon;
  std::string variant = "pruning";
  int leaves = 5;
  std::uint64_t seed = 1;
  bool binary = false;
  bool require_positive = false;
  bool via_triples = false;
  bool timing = false;
  std::string wmin = "1/10";
  std::string wmax = "10";
  std::string format = "newick";
  std::string trace;
  std::string telemetry;
  std::vector<int> sizes{100, 200, 400, 800, 1000};
};

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

template <class T>
T scalar_or(const std::string& text, const char* fallback) {
  return tw::parse_scalar<T>(text.empty() ? fallback : text);
}

template <class T>
const char* default_tol() {
  return std::is_same_v<T, double> ? "1e-9" : "0";
}

template <class T>
tw::WeightedTree<T> parse_tree(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return tw::tree_from_json<T>(json::parse(text));
  return tw::parse_newick<T>(text);
}

template <class T>
std::string tree_text(const tw::WeightedTree<T>& tree, const std::string& format) {
  if (format == "json") return tw::tree_to_json(tree).dump(2) + "\n";
  return tw::to_newick(tree) + "\n";
}

template <class T>
int run_gen(const Config& c) {
  tw::RandomTreeOptions opts;
  opts.leaves = c.leaves;
  opts.seed = c.seed;
  opts.binary_only = c.binary;
  auto tree = tw::random_tree<T>(opts, tw::parse_scalar<T>(c.wmin), tw::parse_scalar<T>(c.wmax));
  write_text(c.output, tree_text(tree, c.format));
  return kOk;
}

template <class T>
int run_weights(const Config& c) {
  auto tree = parse_tree<T>(read_text(c.input));
  write_text(c.output, c.order == 2 ? tw::emit_doubles(tw::doubles_of(tree)) : tw::emit_triples(tw::triples_of(tree)));
  return kOk;
}

template <class T>
json positivity_verdict(const std::string& text, int order, const T& tol) {
  json out;
  bool ok = false;
  if (order == 2) {
    auto r = tw::reconstruct_from_doubles(tw::parse_doubles<T>(text), tol, true);
    ok = r.ok();
    if (r.failure) out["failure"] = tw::to_string(r.failure->kind);
  } else {
    auto r = tw::reconstruct_from_triples(tw::parse_triples<T>(text), tol, true);
    ok = r.ok();
    if (r.failure) out["failure"] = tw::to_string(r.failure->kind);
  }
  out["positive_realizable"] = ok;
  return out;
}

template <class T>
int run_check(const Config& c) {
  const std::string text = read_text(c.input);
  const T tol = scalar_or<T>(c.tol, default_tol<T>());
  json out;
  out["order"] = c.order;
  bool realizable = true;
  if (c.order == 2) {
    auto d = tw::parse_doubles<T>(text);
    auto verdict = tw::buneman_check(d, tol);
    realizable = verdict.passes;
    out["n"] = d.size();
    out["method"] = "four_point";
    out["witness"] = verdict.passes ? json(nullptr) : json(verdict.witness);
    out["metric_warnings"] = verdict.metric_warnings;
  } else {
    auto t = tw::parse_triples<T>(text);
    out["n"] = t.size();
    auto cond = tw::derived_pairwise_consistent(t, tol);
    out["method"] = "derived_pairwise";
    out["witness"] = nullptr;
    if (!cond.consistent) {
      realizable = false;
      out["witness"] = {cond.witness.first, cond.witness.second};
    } else {
      const auto& d = *cond.doubles;
      auto rebuilt = tw::triples_from_doubles(d);
      const int n = t.size();
      for (int i = 0; i < n && realizable; ++i)
        for (int j = i + 1; j < n && realizable; ++j)
          for (int k = j + 1; k < n && realizable; ++k)
            if (tw::abs_value(T(t.at_pos(i, j, k) - rebuilt.at_pos(i, j, k))) > tol) {
              realizable = false;
              out["method"] = "triple_consistency";
              out["witness"] = {t.labels()[i], t.labels()[j], t.labels()[k]};
            }
      if (realizable) {
        auto verdict = tw::buneman_check(d, tol);
        out["method"] = "four_point_on_derived";
        realizable = verdict.passes;
        if (!verdict.passes) out["witness"] = verdict.witness;
      }
    }
  }
  if (realizable && c.require_positive) {
    out["positivity"] = positivity_verdict<T>(text, c.order, tol);
    realizable = out["positivity"]["positive_realizable"].get<bool>();
  }
  out["realizable"] = realizable;
  write_text(c.output, out.dump(2) + "\n");
  return realizable ? kOk : kNotRealizable;
}

template <class W>
int finish_reconstruction(const Config& c, const tw::Reconstruction<W>& r) {
  if (!c.trace.empty()) write_text(c.trace, tw::reconstruction_report(r).dump(2) + "\n");
  if (!r.ok()) {
    std::cerr << "not realizable (" << tw::to_string(r.failure->kind) << "): " << r.failure->message << "\n";
    return kNotRealizable;
  }
  write_text(c.output, tree_text(*r.tree, c.format));
  return kOk;
}

template <class T>
int run_reconstruct(const Config& c) {
  const std::string text = read_text(c.input);
  const T tol = scalar_or<T>(c.tol, default_tol<T>());
  if (c.order == 3) return finish_reconstruction(c, tw::reconstruct_from_triples(tw::parse_triples<T>(text), tol, c.require_positive));
  auto d = tw::parse_doubles<T>(text);
  if (c.via_triples) return finish_reconstruction(c, tw::reconstruct_from_doubles_via_triples(d, tol, c.require_positive));
  return finish_reconstruction(c, tw::reconstruct_from_doubles(d, tol, c.require_positive));
}

template <class T>
int run_nj(const Config& c) {
  const std::string text = read_text(c.input);
  const T eps = scalar_or<T>(c.epsilon, default_tol<T>());
  const T contract = scalar_or<T>(c.tol, default_tol<T>());
  tw::NjTelemetry<T> telemetry;
  tw::WeightedTree<T> tree;
  if (c.order == 3) {
    tree = tw::nj_from_triples(tw::parse_triples<T>(text), eps, contract, &telemetry);
  } else if (c.variant == "classic") {
    tree = tw::nj_classic(tw::parse_doubles<T>(text), contract, &telemetry);
  } else {
    tree = tw::nj_pruning(tw::parse_doubles<T>(text), eps, contract, &telemetry);
  }
  if (!c.telemetry.empty()) write_text(c.telemetry, tw::telemetry_to_json(telemetry).dump(2) + "\n");
  write_text(c.output, tree_text(tree, c.format));
  return kOk;
}

template <class T>
int run_compare(const Config& c) {
  auto a = parse_tree<T>(read_text(c.input));
  auto b = parse_tree<T>(read_text(c.second));
  const T tol = scalar_or<T>(c.tol, default_tol<T>());
  bool equal = tw::tree_equal(a, b, tol);
  json out{{"equal", equal}, {"shape_equal", tw::shape_key(a) == tw::shape_key(b)}};
  write_text(c.output, out.dump(2) + "\n");
  return equal ? kOk : kNotRealizable;
}

int run_oracle(const Config& c) {
  const std::string text = read_text(c.input);
  std::optional<tw::WeightedTree<tw::Rational>> tree;
  json out{{"order", c.order}};
  if (c.order == 2) {
    auto d = tw::parse_doubles<tw::Rational>(text);
    out["n"] = d.size();
    tree = tw::realizable_brute(d, c.require_positive);
  } else {
    auto t = tw::parse_triples<tw::Rational>(text);
    out["n"] = t.size();
    tree = tw::realizable_brute(t, c.require_positive);
  }
  out["realizable"] = tree.has_value();
  out["require_positive"] = c.require_positive;
  out["tree"] = tree ? json{{"newick", tw::to_newick(*tree)}, {"json", tw::tree_to_json(*tree)}} : json(nullptr);
  write_text(c.output, out.dump(2) + "\n");
  return tree ? kOk : kNotRealizable;
}

template <class T>
int run_bench(const Config& c) {
  json rows = json::array();
  double lo = 0, hi = 0;
  for (std::size_t k = 0; k < c.sizes.size(); ++k) {
    tw::RandomTreeOptions opts;
    opts.leaves = c.sizes[k];
    opts.seed = c.seed;
    auto d = tw::doubles_of(tw::random_tree<T>(opts, tw::parse_scalar<T>(c.wmin), tw::parse_scalar<T>(c.wmax)));
    auto start = std::chrono::steady_clock::now();
    auto scan = tw::cherry_scan(d, scalar_or<T>(c.epsilon, default_tol<T>()));
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double n = c.sizes[k];
    double per = static_cast<double>(scan.entries_examined) / (n * n);
    lo = k == 0 ? per : std::min(lo, per);
    hi = k == 0 ? per : std::max(hi, per);
    json row{{"n", c.sizes[k]}, {"entries_examined", scan.entries_examined}, {"entries_per_n2", per},
             {"bells", scan.bells.size()}};
    if (c.timing) row["seconds"] = seconds;
    rows.push_back(row);
  }
  json out{{"rounds", rows}, {"max_over_min_per_n2", lo > 0 ? hi / lo : 0.0}};
  write_text(c.output, out.dump(2) + "\n");
  return kOk;
}

template <class Fn>
int dispatch(const Config& c, const char* fallback_mode, Fn&& fn) {
  std::string mode = c.mode.empty() ? fallback_mode : c.mode;
  if (mode == "rational") return fn(tw::Rational{});
  if (mode == "float") return fn(0.0);
  throw tw::ArgumentError("mode must be rational or float");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree reconstruction from pairwise and triple weights"};
  app.require_subcommand(1);
  Config c;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "input file, - for stdin");
    sub->add_option("-o,--output", c.output, "output file, - for stdout");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", c.mode, "arithmetic: rational or float")->check(CLI::IsMember({"rational", "float"}));
  };
  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", c.order, "2 (pairwise) or 3 (triple) weights")->check(CLI::IsMember({2, 3}));
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "tree output: newick or json")->check(CLI::IsMember({"newick", "json"}));
  };

  auto* gen = app.add_subcommand("gen", "random canonical tree");
  gen->add_option("--leaves", c.leaves, "number of leaves")->required()->check(CLI::Range(2, 100000));
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_flag("--binary", c.binary, "only trivalent internal nodes");
  gen->add_option("--wmin", c.wmin, "smallest edge weight");
  gen->add_option("--wmax", c.wmax, "largest edge weight");
  gen->add_option("-o,--output", c.output, "output file, - for stdout");
  add_mode(gen);
  add_format(gen);

  auto* weights = app.add_subcommand("weights", "tree to pairwise or triple weights");
  add_io(weights);
  add_order(weights);
  add_mode(weights);

  auto* check = app.add_subcommand("check", "realizability verdict as JSON");
  add_io(check);
  add_order(check);
  add_mode(check);
  check->add_option("--tol", c.tol, "absolute tolerance");
  check->add_flag("--require-positive", c.require_positive, "also require positive edge weights");

  auto* rec = app.add_subcommand("reconstruct", "rebuild the tree by pseudobell pruning");
  add_io(rec);
  add_order(rec);
  add_mode(rec);
  add_format(rec);
  rec->add_option("--tol", c.tol, "absolute tolerance");
  rec->add_flag("--require-positive", c.require_positive, "fail unless every edge weight is positive");
  rec->add_flag("--via-triples", c.via_triples, "pairwise input reconstructed through triple weights");
  rec->add_option("--trace", c.trace, "write the JSON report to this file");

  auto* nj = app.add_subcommand("nj", "neighbor joining");
  add_io(nj);
  add_order(nj);
  add_mode(nj);
  add_format(nj);
  nj->add_option("--variant", c.variant, "classic or pruning")->check(CLI::IsMember({"classic", "pruning"}));
  nj->add_option("--epsilon", c.epsilon, "star confirmation tolerance");
  nj->add_option("--tol", c.tol, "inner edges this short are contracted");
  nj->add_option("--telemetry", c.telemetry, "write round telemetry JSON to this file");

  auto* cmp = app.add_subcommand("compare", "tree equality up to tolerance");
  cmp->add_option("first", c.input, "first tree")->required();
  cmp->add_option("second", c.second, "second tree")->required();
  cmp->add_option("-o,--output", c.output, "output file, - for stdout");
  cmp->add_option("--tol", c.tol, "edge weight tolerance");
  add_mode(cmp);

  auto* orc = app.add_subcommand("oracle", "exhaustive search over topologies (n <= 8)");
  add_io(orc);
  add_order(orc);
  orc->add_flag("--require-positive", c.require_positive, "only positive realizations");

  auto* bench = app.add_subcommand("bench", "entries examined by one cherry scan round");
  bench->add_option("--sizes", c.sizes, "leaf counts")->check(CLI::Range(4, 100000));
  bench->add_option("--seed", c.seed, "random seed");
  bench->add_option("--epsilon", c.epsilon, "star confirmation tolerance");
  bench->add_option("--wmin", c.wmin, "smallest edge weight");
  bench->add_option("--wmax", c.wmax, "largest edge weight");
  bench->add_flag("--timing", c.timing, "include wall-clock seconds");
  bench->add_option("-o,--output", c.output, "output file, - for stdout");
  add_mode(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return dispatch(c, "rational", [&](auto z) { return run_gen<decltype(z)>(c); });
    if (*weights) return dispatch(c, "rational", [&](auto z) { return run_weights<decltype(z)>(c); });
    if (*check) return dispatch(c, "rational", [&](auto z) { return run_check<decltype(z)>(c); });
    if (*rec) return dispatch(c, "rational", [&](auto z) { return run_reconstruct<decltype(z)>(c); });
    if (*nj) return dispatch(c, "float", [&](auto z) { return run_nj<decltype(z)>(c); });
    if (*cmp) return dispatch(c, "rational", [&](auto z) { return run_compare<decltype(z)>(c); });
    if (*orc) return run_oracle(c);
    if (*bench) return dispatch(c, "float", [&](auto z) { return run_bench<decltype(z)>(c); });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
