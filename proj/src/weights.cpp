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

#include "treeweights/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <type_traits>

#include "treeweights/errors.hpp"
#include "treeweights/parallel.hpp"

namespace treeweights {
namespace {

std::vector<int> build_positions(const std::vector<Label>& labels) {
  Label max_label = 0;
  for (Label l : labels) {
    if (l <= 0) throw ArgumentError("labels must be positive");
    max_label = std::max(max_label, l);
  }
  std::vector<int> position(static_cast<std::size_t>(max_label) + 1, -1);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (position[labels[p]] >= 0) throw ArgumentError("duplicate label " + std::to_string(labels[p]));
    position[labels[p]] = static_cast<int>(p);
  }
  return position;
}

std::vector<Label> range_labels(int n) {
  std::vector<Label> labels(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  return labels;
}

std::size_t choose2(std::size_t x) { return x * (x - 1) / 2; }
std::size_t choose3(std::size_t x) { return x < 3 ? 0 : x * (x - 1) * (x - 2) / 6; }

void require_distinct(std::initializer_list<Label> labels, const char* what) {
  for (auto a = labels.begin(); a != labels.end(); ++a) {
    for (auto b = a + 1; b != labels.end(); ++b) {
      if (*a == *b) throw ArgumentError(std::string(what) + ": labels must be pairwise distinct");
    }
  }
}

// Running min/max of a stream of values.
template <class T>
struct Band {
  bool empty = true;
  T lo{}, hi{};
  void add(const T& v) {
    if (empty) {
      lo = v;
      hi = v;
      empty = false;
    } else if (v < lo) {
      lo = v;
    } else if (v > hi) {
      hi = v;
    }
  }
  T spread() const { return empty ? T(0) : T(hi - lo); }
};

}  // namespace

// ---------------------------------------------------------------------------
// Containers

template <class T>
DoubleWeights<T>::DoubleWeights(std::vector<Label> labels)
    : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  position_ = build_positions(labels_);
  values_.assign(labels_.size() * labels_.size(), T(0));
}

template <class T>
DoubleWeights<T> DoubleWeights<T>::over_range(int n) {
  return DoubleWeights(range_labels(n));
}

template <class T>
int DoubleWeights<T>::position(Label l) const {
  if (!contains(l)) throw LabelError("unknown label " + std::to_string(l));
  return position_[l];
}

template <class T>
void DoubleWeights<T>::set(Label i, Label j, const T& value) {
  if (i == j) throw ArgumentError("diagonal entries are not stored");
  set_pos(position(i), position(j), value);
}

template <class T>
void DoubleWeights<T>::set_pos(int p, int q, const T& value) {
  const std::size_t m = labels_.size();
  values_[static_cast<std::size_t>(p) * m + q] = value;
  values_[static_cast<std::size_t>(q) * m + p] = value;
}

template <class T>
TripleWeights<T>::TripleWeights(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  position_ = build_positions(labels_);
  values_.assign(choose3(labels_.size()), T(0));
}

template <class T>
TripleWeights<T> TripleWeights<T>::over_range(int n) {
  return TripleWeights(range_labels(n));
}

template <class T>
int TripleWeights<T>::position(Label l) const {
  if (!contains(l)) throw LabelError("unknown label " + std::to_string(l));
  return position_[l];
}

template <class T>
void TripleWeights<T>::set(Label i, Label j, Label k, const T& value) {
  require_distinct({i, j, k}, "TripleWeights::set");
  set_pos(position(i), position(j), position(k), value);
}

template <class T>
std::size_t TripleWeights<T>::slot(int p, int q, int r) const {
  if (p > q) std::swap(p, q);
  if (q > r) std::swap(q, r);
  if (p > q) std::swap(p, q);
  return choose3(static_cast<std::size_t>(r)) + choose2(static_cast<std::size_t>(q)) +
         static_cast<std::size_t>(p);
}

// ---------------------------------------------------------------------------
// Star condition

template <class T>
StarResult<T> star_condition_doubles(const DoubleWeights<T>& w, Label alpha, Label alpha_prime,
                                     const T& tol) {
  if (w.size() < 3) throw SizeError("star condition on doubles needs n >= 3", 3);
  if (alpha == alpha_prime) throw ArgumentError("star condition needs two distinct labels");
  const int a = w.position(alpha), b = w.position(alpha_prime);
  Band<T> band;
  for (int g = 0; g < w.size(); ++g) {
    if (g == a || g == b) continue;
    band.add(T(w.at_pos(a, g) - w.at_pos(b, g)));
  }
  StarResult<T> r;
  r.max_spread = band.spread();
  r.common_difference = midrange(band.lo, band.hi);
  r.holds = r.max_spread <= tol;
  return r;
}

template <class T>
StarResult<T> star_condition_triples(const TripleWeights<T>& w, Label alpha, Label alpha_prime,
                                     const T& tol) {
  if (w.size() < 4) throw SizeError("star condition on triples needs n >= 4", 4);
  if (alpha == alpha_prime) throw ArgumentError("star condition needs two distinct labels");
  const int a = w.position(alpha), b = w.position(alpha_prime);
  Band<T> band;
  for (int g1 = 0; g1 < w.size(); ++g1) {
    if (g1 == a || g1 == b) continue;
    for (int g2 = g1 + 1; g2 < w.size(); ++g2) {
      if (g2 == a || g2 == b) continue;
      band.add(T(w.at_pos(a, g1, g2) - w.at_pos(b, g1, g2)));
    }
  }
  StarResult<T> r;
  r.max_spread = band.spread();
  r.common_difference = midrange(band.lo, band.hi);
  r.holds = r.max_spread <= tol;
  return r;
}

template <class T>
bool star_holds(const DoubleWeights<T>& w, Label alpha, Label alpha_prime, const T& tol) {
  if (w.size() < 3) throw SizeError("star condition on doubles needs n >= 3", 3);
  if (alpha == alpha_prime) throw ArgumentError("star condition needs two distinct labels");
  const int a = w.position(alpha), b = w.position(alpha_prime);
  Band<T> band;
  T diff;
  for (int g = 0; g < w.size(); ++g) {
    if (g == a || g == b) continue;
    diff = w.at_pos(a, g) - w.at_pos(b, g);
    band.add(diff);
    if (band.spread() > tol) return false;
  }
  return true;
}

template <class T>
bool star_holds(const TripleWeights<T>& w, Label alpha, Label alpha_prime, const T& tol) {
  if (w.size() < 4) throw SizeError("star condition on triples needs n >= 4", 4);
  if (alpha == alpha_prime) throw ArgumentError("star condition needs two distinct labels");
  const int a = w.position(alpha), b = w.position(alpha_prime);
  Band<T> band;
  T diff;
  for (int g1 = 0; g1 < w.size(); ++g1) {
    if (g1 == a || g1 == b) continue;
    for (int g2 = g1 + 1; g2 < w.size(); ++g2) {
      if (g2 == a || g2 == b) continue;
      diff = w.at_pos(a, g1, g2) - w.at_pos(b, g1, g2);
      band.add(diff);
      if (band.spread() > tol) return false;
    }
  }
  return true;
}

namespace {

template <class W, class T>
std::vector<std::pair<Label, Label>> neighbor_pairs_impl(const W& w, const T& tol) {
  const auto& labels = w.labels();
  std::vector<std::pair<Label, Label>> out;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      if (star_holds(w, labels[a], labels[b], tol)) out.emplace_back(labels[a], labels[b]);
    }
  }
  return out;
}

}  // namespace

template <class T>
std::vector<std::pair<Label, Label>> neighbor_pairs(const DoubleWeights<T>& w, const T& tol) {
  if (w.size() < 3) throw SizeError("neighbor_pairs on doubles needs n >= 3", 3);
  return neighbor_pairs_impl(w, tol);
}

template <class T>
std::vector<std::pair<Label, Label>> neighbor_pairs(const TripleWeights<T>& w, const T& tol) {
  if (w.size() < 5) throw SizeError("neighbor_pairs on triples needs n >= 5", 5);
  return neighbor_pairs_impl(w, tol);
}

// ---------------------------------------------------------------------------
// Pairwise values from triples

namespace {

// 3 * derived_pairwise, on positions.
template <class T>
T derived_times_three(const TripleWeights<T>& t, int i, int j, int r, int s, int u) {
  T plus = t.at_pos(i, j, r);
  plus += t.at_pos(i, j, s);
  plus += t.at_pos(i, j, u);
  plus += t.at_pos(r, s, u);
  T minus = t.at_pos(i, r, s);
  minus += t.at_pos(i, r, u);
  minus += t.at_pos(i, s, u);
  minus += t.at_pos(j, r, s);
  minus += t.at_pos(j, r, u);
  minus += t.at_pos(j, s, u);
  return T(2 * plus - minus);
}

}  // namespace

template <class T>
T derived_pairwise(const TripleWeights<T>& t, Label i, Label j, Label r, Label s, Label u) {
  require_distinct({i, j, r, s, u}, "derived_pairwise");
  return T(derived_times_three(t, t.position(i), t.position(j), t.position(r), t.position(s),
                               t.position(u)) /
           3);
}

namespace {

template <class V>
struct DerivedBands {
  std::vector<std::pair<int, int>> pairs;
  std::vector<Band<V>> bands;  // 3 * derived value per pair
  std::vector<char> ok;
};

template <class V>
DerivedBands<V> derived_bands(const TripleWeights<V>& t, const V& scaled_tol) {
  const int n = t.size();
  DerivedBands<V> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.pairs.emplace_back(i, j);
  }
  out.bands.resize(out.pairs.size());
  out.ok.assign(out.pairs.size(), 1);
  parallel_for(out.pairs.size(), [&](std::size_t k) {
    auto [i, j] = out.pairs[k];
    Band<V>& band = out.bands[k];
    for (int r = 0; r < n && out.ok[k]; ++r) {
      if (r == i || r == j) continue;
      for (int s = r + 1; s < n && out.ok[k]; ++s) {
        if (s == i || s == j) continue;
        for (int u = s + 1; u < n; ++u) {
          if (u == i || u == j) continue;
          band.add(derived_times_three(t, i, j, r, s, u));
          if (band.spread() > scaled_tol) {
            out.ok[k] = 0;
            break;
          }
        }
      }
    }
  });
  return out;
}

// Exact rescaling of rational triples to 64-bit integers sharing one
// denominator, when every sum formed by the derived check stays in range.
std::optional<TripleWeights<std::int64_t>> scaled_integers(const TripleWeights<Rational>& t, mpz_class& scale) {
  const int n = t.size();
  scale = 1;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      for (int r = q + 1; r < n; ++r) scale = lcm(scale, t.at_pos(p, q, r).get_den());
  const mpz_class limit = mpz_class(1) << 58;
  TripleWeights<std::int64_t> out(t.labels());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      for (int r = q + 1; r < n; ++r) {
        const Rational& v = t.at_pos(p, q, r);
        mpz_class scaled = v.get_num() * (scale / v.get_den());
        if (abs(scaled) >= limit) return std::nullopt;
        out.set_pos(p, q, r, scaled.get_si());
      }
    }
  }
  return out;
}

template <class V, class T, class ToT>
DerivedPairwiseCheck<T> finish_derived_check(const TripleWeights<T>& t, const DerivedBands<V>& b, ToT to_t) {
  DerivedPairwiseCheck<T> result;
  result.consistent = true;
  for (std::size_t k = 0; k < b.pairs.size(); ++k) {
    T spread = b.bands[k].empty ? T(0) : to_t(b.bands[k].hi - b.bands[k].lo, 1);
    if (spread > result.worst_spread) result.worst_spread = spread;
    if (!b.ok[k] && result.consistent) {
      result.consistent = false;
      result.witness = {t.labels()[b.pairs[k].first], t.labels()[b.pairs[k].second]};
    }
  }
  if (result.consistent) {
    DoubleWeights<T> d(t.labels());
    for (std::size_t k = 0; k < b.pairs.size(); ++k) {
      d.set_pos(b.pairs[k].first, b.pairs[k].second, to_t(b.bands[k].lo + b.bands[k].hi, 2));
    }
    result.doubles = std::move(d);
  }
  return result;
}

}  // namespace

template <class T>
DerivedPairwiseCheck<T> derived_pairwise_consistent(const TripleWeights<T>& t, const T& tol) {
  if (t.size() < 5) throw SizeError("derived_pairwise_consistent needs n >= 5", 5);
  if constexpr (std::is_same_v<T, Rational>) {
    mpz_class scale;
    if (auto ints = scaled_integers(t, scale)) {
      mpz_class itol = Rational(3 * tol * scale).get_num() / Rational(3 * tol * scale).get_den();
      std::int64_t scaled_tol = itol.fits_slong_p() ? itol.get_si() : std::numeric_limits<std::int64_t>::max();
      auto bands = derived_bands(*ints, scaled_tol);
      return finish_derived_check(t, bands, [&](std::int64_t v, int div) {
        Rational r(mpz_class(static_cast<long>(v)), mpz_class(3 * div) * scale);
        r.canonicalize();
        return r;
      });
    }
  }
  auto bands = derived_bands(t, T(3 * tol));
  return finish_derived_check(t, bands, [](const T& v, int div) { return T(v / (3 * div)); });
}

template <class T>
DoubleWeights<T> derived_pairwise_first(const TripleWeights<T>& t) {
  const int n = t.size();
  if (n < 5) throw SizeError("derived pairwise values need n >= 5", 5);
  DoubleWeights<T> d(t.labels());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int pick[3];
      int found = 0;
      for (int r = 0; r < n && found < 3; ++r) {
        if (r != i && r != j) pick[found++] = r;
      }
      d.set_pos(i, j, T(derived_times_three(t, i, j, pick[0], pick[1], pick[2]) / 3));
    }
  }
  return d;
}

template <class T>
TripleWeights<T> triples_from_doubles(const DoubleWeights<T>& d) {
  const int n = d.size();
  if (n < 3) throw SizeError("triples_from_doubles needs n >= 3", 3);
  TripleWeights<T> t(d.labels());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        t.set_pos(i, j, k, T((d.at_pos(i, j) + d.at_pos(i, k) + d.at_pos(j, k)) / 2));
      }
    }
  }
  return t;
}

template <class T>
DoubleWeights<T> doubles_of(const WeightedTree<T>& tree) {
  DoubleWeights<T> d(tree.labels());
  const auto matrix = leaf_distance_matrix(tree);
  const int n = d.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d.set_pos(i, j, matrix[static_cast<std::size_t>(i) * n + j]);
  }
  return d;
}

template <class T>
TripleWeights<T> triples_of(const WeightedTree<T>& tree) {
  if (tree.leaf_count() < 3) throw SizeError("triple weights need at least 3 leaves", 3);
  return triples_from_doubles(doubles_of(tree));
}

// ---------------------------------------------------------------------------
// Four-point check

template <class T>
BunemanVerdict<T> buneman_check(const DoubleWeights<T>& d, const T& tol) {
  BunemanVerdict<T> verdict;
  const int n = d.size();
  const auto& labels = d.labels();

  constexpr std::size_t kMaxWarnings = 16;
  for (int i = 0; i < n && verdict.metric_warnings.size() < kMaxWarnings; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (d.at_pos(i, j) < 0) {
        verdict.metric_warnings.push_back("negative distance D(" + std::to_string(labels[i]) + "," +
                                          std::to_string(labels[j]) + ")");
      }
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (d.at_pos(i, j) > d.at_pos(i, k) + d.at_pos(k, j) + tol &&
            verdict.metric_warnings.size() < kMaxWarnings) {
          verdict.metric_warnings.push_back(
              "triangle inequality violated: D(" + std::to_string(labels[i]) + "," +
              std::to_string(labels[j]) + ") > D(" + std::to_string(labels[i]) + "," +
              std::to_string(labels[k]) + ") + D(" + std::to_string(labels[k]) + "," +
              std::to_string(labels[j]) + ")");
        }
      }
    }
  }
  if (n < 4) return verdict;

  // One slot per leading index; the lexicographically first failure wins.
  std::vector<std::optional<std::array<int, 4>>> first_failure(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t first) {
    const int i = static_cast<int>(first);
    T sums[3];
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        for (int h = k + 1; h < n; ++h) {
          sums[0] = d.at_pos(i, j) + d.at_pos(k, h);
          sums[1] = d.at_pos(i, k) + d.at_pos(j, h);
          sums[2] = d.at_pos(i, h) + d.at_pos(j, k);
          std::sort(sums, sums + 3);
          if (sums[2] - sums[1] > tol) {
            first_failure[first] = std::array<int, 4>{i, j, k, h};
            return;
          }
        }
      }
    }
  });
  for (const auto& f : first_failure) {
    if (!f) continue;
    verdict.passes = false;
    verdict.witness = {labels[(*f)[0]], labels[(*f)[1]], labels[(*f)[2]], labels[(*f)[3]]};
    break;
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  if (used != tok.size() || v < -1'000'000 || v > 1'000'000) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return static_cast<int>(v);
}

// Shared reader for the triangular formats; `order` labels then a value.
template <class T, class Container>
Container parse_weights(std::string_view text, int order, int min_n) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty input: expected the leaf count n", 1);
  const Line& header = lines.front();
  if (header.tokens.size() != 1) throw ParseError("first line must hold only n", header.number);
  const int n = parse_int(header.tokens[0], header.number);
  if (n < min_n) {
    throw ParseError("n must be at least " + std::to_string(min_n) + ", got " + std::to_string(n),
                     header.number);
  }
  Container out = Container::over_range(n);
  std::map<std::vector<int>, int> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (static_cast<int>(line.tokens.size()) != order + 1) {
      throw ParseError("expected " + std::to_string(order) + " labels and a value", line.number);
    }
    std::vector<int> idx;
    for (int a = 0; a < order; ++a) {
      int l = parse_int(line.tokens[a], line.number);
      if (l < 1 || l > n) {
        throw ParseError("label " + std::to_string(l) + " outside 1.." + std::to_string(n), line.number);
      }
      if (!idx.empty() && l <= idx.back()) throw ParseError("labels must be strictly ascending", line.number);
      idx.push_back(l);
    }
    if (auto [it, fresh] = seen.emplace(idx, line.number); !fresh) {
      throw ParseError("duplicate entry (first given on line " + std::to_string(it->second) + ")",
                       line.number);
    }
    T value;
    try {
      value = parse_scalar<T>(line.tokens[order]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line.number);
    }
    if constexpr (Container::kOrder == 2) {
      out.set(idx[0], idx[1], value);
    } else {
      out.set(idx[0], idx[1], idx[2], value);
    }
  }
  std::size_t expected = order == 2 ? choose2(n) : choose3(n);
  if (seen.size() != expected) {
    // Name the first missing subset.
    std::vector<int> idx(order);
    std::string missing;
    if (order == 2) {
      for (int i = 1; i <= n && missing.empty(); ++i)
        for (int j = i + 1; j <= n && missing.empty(); ++j)
          if (!seen.count({i, j})) missing = std::to_string(i) + " " + std::to_string(j);
    } else {
      for (int i = 1; i <= n && missing.empty(); ++i)
        for (int j = i + 1; j <= n && missing.empty(); ++j)
          for (int h = j + 1; h <= n && missing.empty(); ++h)
            if (!seen.count({i, j, h}))
              missing = std::to_string(i) + " " + std::to_string(j) + " " + std::to_string(h);
    }
    throw ParseError("missing entry '" + missing + "' (" + std::to_string(expected - seen.size()) +
                         " missing in total)",
                     lines.back().number + 1);
  }
  return out;
}

template <class W>
void require_range_labels(const W& w) {
  for (int p = 0; p < w.size(); ++p) {
    if (w.labels()[p] != p + 1) throw ArgumentError("only containers over 1..n can be written");
  }
}

}  // namespace

template <class T>
DoubleWeights<T> parse_doubles(std::string_view text) {
  return parse_weights<T, DoubleWeights<T>>(text, 2, 2);
}

template <class T>
TripleWeights<T> parse_triples(std::string_view text) {
  return parse_weights<T, TripleWeights<T>>(text, 3, 3);
}

template <class T>
std::string emit_doubles(const DoubleWeights<T>& d) {
  require_range_labels(d);
  std::ostringstream out;
  out << d.size() << '\n';
  for (int i = 0; i < d.size(); ++i)
    for (int j = i + 1; j < d.size(); ++j)
      out << i + 1 << ' ' << j + 1 << ' ' << format_exact(d.at_pos(i, j)) << '\n';
  return out.str();
}

template <class T>
std::string emit_triples(const TripleWeights<T>& t) {
  require_range_labels(t);
  std::ostringstream out;
  out << t.size() << '\n';
  for (int i = 0; i < t.size(); ++i)
    for (int j = i + 1; j < t.size(); ++j)
      for (int k = j + 1; k < t.size(); ++k)
        out << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << format_exact(t.at_pos(i, j, k)) << '\n';
  return out.str();
}

#define TREEWEIGHTS_INSTANTIATE_WEIGHTS(T)                                                         \
  template class DoubleWeights<T>;                                                                 \
  template class TripleWeights<T>;                                                                 \
  template StarResult<T> star_condition_doubles(const DoubleWeights<T>&, Label, Label, const T&);  \
  template StarResult<T> star_condition_triples(const TripleWeights<T>&, Label, Label, const T&);  \
  template bool star_holds(const DoubleWeights<T>&, Label, Label, const T&);                       \
  template bool star_holds(const TripleWeights<T>&, Label, Label, const T&);                       \
  template std::vector<std::pair<Label, Label>> neighbor_pairs(const DoubleWeights<T>&, const T&); \
  template std::vector<std::pair<Label, Label>> neighbor_pairs(const TripleWeights<T>&, const T&); \
  template T derived_pairwise(const TripleWeights<T>&, Label, Label, Label, Label, Label);         \
  template DerivedPairwiseCheck<T> derived_pairwise_consistent(const TripleWeights<T>&, const T&); \
  template DoubleWeights<T> derived_pairwise_first(const TripleWeights<T>&);                       \
  template TripleWeights<T> triples_from_doubles(const DoubleWeights<T>&);                         \
  template DoubleWeights<T> doubles_of(const WeightedTree<T>&);                                    \
  template TripleWeights<T> triples_of(const WeightedTree<T>&);                                    \
  template BunemanVerdict<T> buneman_check(const DoubleWeights<T>&, const T&);                     \
  template DoubleWeights<T> parse_doubles<T>(std::string_view);                                    \
  template TripleWeights<T> parse_triples<T>(std::string_view);                                    \
  template std::string emit_doubles(const DoubleWeights<T>&);                                      \
  template std::string emit_triples(const TripleWeights<T>&);

TREEWEIGHTS_INSTANTIATE_WEIGHTS(double)
TREEWEIGHTS_INSTANTIATE_WEIGHTS(Rational)
template class TripleWeights<std::int64_t>;

}  // namespace treeweights
