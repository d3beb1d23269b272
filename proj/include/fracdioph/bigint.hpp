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

#ifndef FRACDIOPH_BIGINT_HPP
#define FRACDIOPH_BIGINT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdioph {

// Arbitrary-precision signed integer, sign-magnitude with base 2^32 limbs.
// Sized for this project's needs (periodic-orbit denominators like 2^N - 1,
// cofactors of M^N - I): schoolbook multiplication, shift-and-subtract
// division.
class BigInt {
 public:
  BigInt() = default;
  BigInt(int64_t v) {  // NOLINT: implicit by design, mirrors integer literals
    uint64_t m = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    if (m != 0) limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffULL));
    if (m >> 32) limbs_.push_back(static_cast<uint32_t>(m >> 32));
    negative_ = v < 0;
  }

  static BigInt from_decimal(const std::string& s) {
    BigInt r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit in numeral");
      r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    r.negative_ = neg && !r.is_zero();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

  BigInt operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.negative_ = !r.negative_;
    return r;
  }
  BigInt abs() const {
    BigInt r = *this;
    r.negative_ = false;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.negative_ = a.negative_ && !r.limbs_.empty();
      return r;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    BigInt r;
    if (c > 0) {
      r.limbs_ = sub_mag(a.limbs_, b.limbs_);
      r.negative_ = a.negative_;
    } else {
      r.limbs_ = sub_mag(b.limbs_, a.limbs_);
      r.negative_ = b.negative_;
    }
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    r.negative_ = (a.negative_ != b.negative_) && !r.is_zero();
    return r;
  }

  // Truncated quotient (rounds toward zero) and matching remainder,
  // |rem| < |b|, sign(rem) == sign(a).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a.limbs_, b.limbs_) < 0) {
      quot = BigInt();
      rem = a;
      return;
    }
    size_t bits = a.limbs_.size() * 32;
    BigInt q, r;
    q.limbs_.assign(a.limbs_.size(), 0);
    for (size_t i = bits; i-- > 0;) {
      r.shift_left_1();
      if (a.bit(i)) r.set_bit0();
      if (cmp_mag(r.limbs_, b.limbs_) >= 0) {
        r.limbs_ = sub_mag(r.limbs_, b.limbs_);
        q.set_bit(i);
      }
    }
    q.trim();
    r.trim();
    q.negative_ = (a.negative_ != b.negative_) && !q.is_zero();
    r.negative_ = a.negative_ && !r.is_zero();
    quot = q;
    rem = r;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.negative_ != b.negative_) return a.negative_;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.negative_ ? c > 0 : c < 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  static BigInt gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = b;
      b = r;
    }
    return a;
  }

  static BigInt pow(BigInt base, uint64_t e) {
    BigInt r(1);
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  double to_double() const {
    double v = 0;
    for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return negative_ ? -v : v;
  }

  // Throws if the value does not fit.
  int64_t to_int64() const {
    if (limbs_.size() > 2) throw std::overflow_error("BigInt: does not fit in int64");
    uint64_t m = 0;
    for (size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
    if (!negative_ && m > 0x7fffffffffffffffULL) throw std::overflow_error("BigInt: does not fit in int64");
    if (negative_ && m > 0x8000000000000000ULL) throw std::overflow_error("BigInt: does not fit in int64");
    return negative_ ? -static_cast<int64_t>(m) : static_cast<int64_t>(m);
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    std::string digits;
    BigInt ten(10);
    while (!t.is_zero()) {
      BigInt q, r;
      divmod(t, ten, q, r);
      digits.push_back(static_cast<char>('0' + (r.is_zero() ? 0 : r.limbs_[0])));
      t = q;
    }
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

  size_t bit_length() const {
    if (limbs_.empty()) return 0;
    uint32_t top = limbs_.back();
    size_t n = (limbs_.size() - 1) * 32;
    while (top) {
      ++n;
      top >>= 1;
    }
    return n;
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
  }
  bool bit(size_t i) const {
    size_t w = i / 32;
    return w < limbs_.size() && ((limbs_[w] >> (i % 32)) & 1u);
  }
  void set_bit(size_t i) {
    size_t w = i / 32;
    if (w >= limbs_.size()) limbs_.resize(w + 1, 0);
    limbs_[w] |= (1u << (i % 32));
  }
  void set_bit0() {
    if (limbs_.empty()) limbs_.push_back(0);
    limbs_[0] |= 1u;
  }
  void shift_left_1() {
    uint32_t carry = 0;
    for (auto& w : limbs_) {
      uint32_t nc = w >> 31;
      w = (w << 1) | carry;
      carry = nc;
    }
    if (carry) limbs_.push_back(carry);
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      uint64_t cur = carry;
      if (i < a.size()) cur += a[i];
      if (i < b.size()) cur += b[i];
      r.push_back(static_cast<uint32_t>(cur & 0xffffffffULL));
      carry = cur >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }
  // Requires |a| >= |b|.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (cur < 0) {
        cur += 0x100000000LL;
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  std::vector<uint32_t> limbs_;  // little-endian, no leading zero limb
  bool negative_ = false;
};

}  // namespace fracdioph

#endif  // FRACDIOPH_BIGINT_HPP
