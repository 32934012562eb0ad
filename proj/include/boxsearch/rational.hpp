// Copyright 2026 The boxsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOXSEARCH_RATIONAL_HPP_
#define BOXSEARCH_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "boxsearch/error.hpp"

namespace boxsearch {

// Arbitrary precision rational. Every payoff, probability and time in the
// library is carried in this type; nothing is rounded until output.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational MakeRational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses `-?[0-9]+(/[1-9][0-9]*)?`. Anything else is a ParseError.
inline Rational ParseRational(std::string_view text) {
  static const std::regex kGrammar("-?[0-9]+(/[1-9][0-9]*)?");
  std::string s(text);
  if (!std::regex_match(s, kGrammar)) {
    throw ParseError("not a rational: '" + s + "'");
  }
  Rational r(s, 10);
  r.canonicalize();
  return r;
}

inline std::string ToString(const Rational& r) { return r.get_str(10); }

// x^e for any integer e; x must be nonzero when e < 0.
inline Rational Pow(const Rational& x, long e) {
  if (e < 0) {
    if (x == 0) throw Error("zero raised to a negative power");
    return Pow(Rational(1) / x, -e);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  out.canonicalize();
  return out;
}

inline double ToDouble(const Rational& r) { return r.get_d(); }

// Fixed-point decimal rendering with `digits` places, rounded half away from
// zero.
inline std::string ToDecimal(const Rational& r, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational a = abs(r) * scale + Rational(1, 2);
  Integer q = a.get_num() / a.get_den();
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<size_t>(digits)) {
      s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  if (r < 0 && q != 0) s.insert(0, "-");
  return s;
}

// A nonnegative rational or +infinity. Arithmetic follows the usual
// extended-real conventions, with 0 * inf = 0.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit
  ExtRational(long v) : value_(v) {}                 // NOLINT: implicit

  static ExtRational Infinity() {
    ExtRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  // Precondition: is_finite().
  const Rational& value() const {
    if (infinite_) throw Error("value() of an infinite extended rational");
    return value_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return Infinity();
    return ExtRational(Rational(a.value_ + b.value_));
  }

  friend ExtRational operator*(const Rational& w, const ExtRational& a) {
    if (w == 0) return ExtRational(0);
    if (a.infinite_) {
      if (w < 0) throw Error("negative multiple of infinity");
      return Infinity();
    }
    return ExtRational(Rational(w * a.value_));
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

  std::string str() const { return infinite_ ? "inf" : ToString(value_); }
  std::string decimal(int digits) const { return infinite_ ? "inf" : ToDecimal(value_, digits); }
  double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_.get_d();
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtRational& e) { return os << e.str(); }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace boxsearch

#endif  // BOXSEARCH_RATIONAL_HPP_
