// Copyright 2026 The fracdioph Authors
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

#ifndef FRACDIOPH_RATIONAL_HPP
#define FRACDIOPH_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdioph/bigint.hpp"

namespace fracdioph {

// Exact rational, always normalized: den > 0, gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  // Parses "p/q", an integer, or a decimal numeral like "-0.4142135623".
  static Rational from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      return Rational(BigInt::from_decimal(s.substr(0, slash)), BigInt::from_decimal(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt::from_decimal(s), BigInt(1));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) return Rational(BigInt::from_decimal(s.substr(0, dot)), BigInt(1));
    return Rational(BigInt::from_decimal(digits), BigInt::pow(BigInt(10), frac_len));
  }

  // Exact value of a finite double.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    if (x == 0) return Rational();
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5,1)
    // 53 doublings make the mantissa integral.
    int64_t mant = static_cast<int64_t>(std::ldexp(m, 53));
    exp -= 53;
    BigInt num(mant), den(1);
    if (exp >= 0)
      num = num * BigInt::pow(BigInt(2), static_cast<uint64_t>(exp));
    else
      den = BigInt::pow(BigInt(2), static_cast<uint64_t>(-exp));
    return Rational(std::move(num), std::move(den));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_negative() const { return num_.is_negative(); }
  bool is_integer() const { return den_ == BigInt(1); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return is_negative() ? -*this : *this; }

  BigInt floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.is_negative() && !r.is_zero()) q = q - BigInt(1);
    return q;
  }

  // Fractional part in [0,1).
  Rational mod1() const { return *this - Rational(floor(), BigInt(1)); }

  // Distance to the nearest integer; the metric on R/Z.
  Rational circle_dist_to_zero() const {
    Rational f = mod1();
    Rational other = Rational(1) - f;
    return f < other ? f : other;
  }

  double to_double() const {
    // Scale so num/den stays in double range even for huge operands.
    size_t nb = num_.bit_length(), db = den_.bit_length();
    if (nb < 900 && db < 900) return num_.to_double() / den_.to_double();
    size_t shift = (nb > db ? nb : db) - 512;
    BigInt two_shift = BigInt::pow(BigInt(2), shift);
    return (num_ / two_shift).to_double() / (den_ / two_shift).to_double();
  }

  std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }

  BigInt num_, den_;
};

inline Rational circle_dist(const Rational& a, const Rational& b) { return (a - b).circle_dist_to_zero(); }

// Exact Gaussian elimination; A is n x n, returns x with A x = b.
// Throws on singular A.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("solve_linear: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Rational f = a[row][col] / a[col][col];
      for (size_t k = col; k < n; ++k) a[row][k] = a[row][k] - f * a[col][k];
      b[row] = b[row] - f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_RATIONAL_HPP
