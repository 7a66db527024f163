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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace treeweights {

/// Exact arithmetic kind used by every decision procedure.
using Rational = mpq_class;

/// Leaf labels are positive integers; 0 marks an internal node.
using Label = int;
using NodeId = int;

enum class ArithmeticMode { Rational, Float };

// Scalar helpers. Every algorithm in the library is a template over one of
// the two scalar kinds above and talks to numbers only through these.

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline double abs_value(double x) { return x < 0 ? -x : x; }
inline Rational abs_value(const Rational& x) { return Rational(abs(x)); }

template <class T>
T from_int(long v) {
  return T(v);
}

template <class T>
T half(const T& x) {
  return T(x / 2);
}

/// Parses a decimal ("-1.25", "3e-2") or a "p/q" fraction.
/// Throws std::invalid_argument on malformed text.
template <class T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);

/// Lossless text form: shortest round-tripping decimal (17 significant
/// digits) for doubles, "p/q" or an integer for rationals.
std::string format_exact(double x);
std::string format_exact(const Rational& x);

/// Decimal with `digits` significant digits, trailing zeros trimmed.
std::string format_significant(double x, int digits);
std::string format_significant(const Rational& x, int digits);

/// Midpoint of [lo, hi].
template <class T>
T midrange(const T& lo, const T& hi) {
  return T((lo + hi) / 2);
}

}  // namespace treeweights
