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

#ifndef FRACDIOPH_WORD_HPP
#define FRACDIOPH_WORD_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdioph {

// A finite word over a countable alphabet indexed 0,1,2,...  The empty word
// addresses the full space.  Points of the infinite sequence space are
// represented by finite truncations; every consumer declares the truncation
// depth it needs and works with the cylinder the word addresses.
//
// The symbolic layer never interprets letters; geometry lives elsewhere.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int32_t> letters) : letters_(letters) { check(); }
  explicit Word(std::vector<int32_t> letters) : letters_(std::move(letters)) { check(); }

  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int32_t at(size_t i) const { return letters_.at(i); }
  const std::vector<int32_t>& letters() const { return letters_; }

  Word prefix(size_t n) const {
    if (n > letters_.size()) n = letters_.size();
    return Word(std::vector<int32_t>(letters_.begin(), letters_.begin() + static_cast<long>(n)));
  }

  Word append(int32_t a) const {
    if (a < 0) throw std::invalid_argument("Word: negative letter");
    Word w = *this;
    w.letters_.push_back(a);
    return w;
  }

  Word concat(const Word& other) const {
    Word w = *this;
    w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
    return w;
  }

  bool is_prefix_of(const Word& other) const {
    if (length() > other.length()) return false;
    for (size_t i = 0; i < length(); ++i)
      if (letters_[i] != other.letters_[i]) return false;
    return true;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) { return a.letters_ < b.letters_; }

  std::string to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(letters_[i]);
    }
    return s + ")";
  }

 private:
  void check() const {
    for (int32_t a : letters_)
      if (a < 0) throw std::invalid_argument("Word: negative letter");
  }

  std::vector<int32_t> letters_;
};

struct SymbolicMetricParams {
  double lambda = 0.5;  // in (0,1)

  explicit SymbolicMetricParams(double l = 0.5) : lambda(l) {
    if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("SymbolicMetricParams: lambda must be in (0,1)");
  }
};

// Maximal common initial segment.
inline Word longest_common_prefix(const Word& a, const Word& b) {
  size_t n = 0;
  while (n < a.length() && n < b.length() && a.at(n) == b.at(n)) ++n;
  return a.prefix(n);
}

// lambda^|a ^ b|, the cylinder-level upper bound on the distance between any
// two sequences extending a and b.  An ultrametric on cylinder representatives.
inline double symbolic_dist(const Word& a, const Word& b, const SymbolicMetricParams& params) {
  return std::pow(params.lambda, static_cast<double>(longest_common_prefix(a, b).length()));
}

// Drops the first letter.
inline Word shift(const Word& w) {
  if (w.empty()) throw std::invalid_argument("shift: empty word");
  return Word(std::vector<int32_t>(w.letters().begin() + 1, w.letters().end()));
}

}  // namespace fracdioph

#endif  // FRACDIOPH_WORD_HPP
