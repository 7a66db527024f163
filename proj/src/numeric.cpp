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

#include "treeweights/numeric.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace treeweights {
namespace {

std::invalid_argument bad_number(std::string_view text) {
  return std::invalid_argument("malformed number '" + std::string(text) + "'");
}

// Exact decimal parse: [sign] digits [. digits] [(e|E) [sign] digits].
Rational parse_decimal_exact(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw bad_number(text);
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string_view rest = text.substr(pos);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) throw bad_number(text);
    pos = text.size();
  }
  if (pos != text.size()) throw bad_number(text);
  if (exponent > 4096 || exponent < -4096) throw bad_number(text);

  mpz_class numerator(digits, 10);
  long scale = exponent - frac_digits;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational value;
  if (scale >= 0) {
    value = Rational(numerator * power);
  } else {
    value = Rational(numerator, power);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

std::string trim_copy(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

}  // namespace

template <>
double parse_scalar<double>(std::string_view raw) {
  std::string text = trim_copy(raw);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    return parse_scalar<Rational>(text).get_d();
  }
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw bad_number(raw);
  }
  return value;
}

template <>
Rational parse_scalar<Rational>(std::string_view raw) {
  std::string text = trim_copy(raw);
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string_view num(text.data(), slash);
    std::string_view den(text.data() + slash + 1, text.size() - slash - 1);
    Rational p = parse_decimal_exact(num);
    Rational q = parse_decimal_exact(den);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(p / q);
  }
  return parse_decimal_exact(text);
}

std::string format_exact(double x) {
  char buf[64];
  // Shortest representation that round-trips; falls back to %.17g.
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec == std::errc()) return std::string(buf, ptr);
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_exact(const Rational& x) { return x.get_str(); }

std::string format_significant(double x, int digits) {
  if (x == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_significant(const Rational& x, int digits) {
  if (x == 0) return "0";
  mpf_class f(x, 256);
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
  return buf;
}

}  // namespace treeweights
