// Copyright 2026 The cigames Authors
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

#ifndef CIG_RATIONAL_HPP_
#define CIG_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cig {

// Exact rational with int64 numerator/denominator, always in lowest terms
// with a positive denominator. All payoff arithmetic in the library goes
// through this type; there is no floating point on any payoff path.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  static Rational from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num * b.den + (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num * b.den - (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational: division by zero");
    return from_i128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
  Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
  Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
  Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
  Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // Canonical rendering, always "num/den" ("4/1", "-5/2").
  std::string str() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "p", "p/q", optional sign, optional surrounding spaces.
  static Rational parse(const std::string& text);

 private:
  void assign(std::int64_t n, std::int64_t d) {
    *this = from_i128(n, d);
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("rational: value exceeds 64-bit range");
    return (std::int64_t)v;
  }
};

inline Rational Rational::parse(const std::string& text) {
  std::size_t i = 0, n = text.size();
  while (i < n && std::isspace((unsigned char)text[i])) ++i;
  std::size_t j = n;
  while (j > i && std::isspace((unsigned char)text[j - 1])) --j;
  std::string s = text.substr(i, j - i);
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    std::int64_t p = std::stoll(s.substr(0, slash));
    std::int64_t q = std::stoll(s.substr(slash + 1));
    return Rational(p, q);
  } catch (const std::overflow_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("rational: cannot parse '" + text + "'");
  }
}

}  // namespace cig

#endif  // CIG_RATIONAL_HPP_
