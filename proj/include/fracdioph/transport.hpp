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

#ifndef FRACDIOPH_TRANSPORT_HPP
#define FRACDIOPH_TRANSPORT_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracdioph/rational.hpp"

namespace fracdioph {

// Exact 1-Wasserstein distance on the circle R/Z between two uniform atomic
// measures.  W1 = min_c integral |F_mu - F_nu - c|; the difference G of the
// CDFs is a step function with jumps at the atoms and the minimizer c is a
// weighted median of its values.
inline Rational w1_circle_exact(const std::vector<Rational>& mu_atoms, const std::vector<Rational>& nu_atoms) {
  if (mu_atoms.empty() || nu_atoms.empty()) throw std::invalid_argument("w1_circle_exact: empty measure");
  struct Jump {
    Rational pos;
    Rational delta;
  };
  std::vector<Jump> jumps;
  Rational wa(BigInt(1), BigInt(static_cast<int64_t>(mu_atoms.size())));
  Rational wb(BigInt(1), BigInt(static_cast<int64_t>(nu_atoms.size())));
  for (const Rational& a : mu_atoms) jumps.push_back({a.mod1(), wa});
  for (const Rational& b : nu_atoms) jumps.push_back({b.mod1(), -wb});
  std::sort(jumps.begin(), jumps.end(), [](const Jump& x, const Jump& y) { return x.pos < y.pos; });

  // Segments of constant G over [0,1), including [0, first) where G = 0.
  std::vector<std::pair<Rational, Rational>> segments;  // (G value, length)
  Rational g(0);
  Rational prev(0);
  size_t i = 0;
  if (!jumps.empty() && !(jumps[0].pos == Rational(0))) segments.push_back({g, jumps[0].pos});
  while (i < jumps.size()) {
    Rational pos = jumps[i].pos;
    while (i < jumps.size() && jumps[i].pos == pos) {
      g = g + jumps[i].delta;
      ++i;
    }
    Rational next = i < jumps.size() ? jumps[i].pos : Rational(1);
    if (next > pos) segments.push_back({g, next - pos});
  }

  // Weighted median of the G values by segment length.
  std::vector<std::pair<Rational, Rational>> vals = segments;
  std::sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Rational total(0);
  for (const auto& [v, len] : vals) total = total + len;
  Rational half = total / Rational(2);
  Rational acc(0);
  Rational median(0);
  for (const auto& [v, len] : vals) {
    acc = acc + len;
    if (acc >= half) {
      median = v;
      break;
    }
  }
  Rational cost(0);
  for (const auto& [v, len] : segments) cost = cost + (v - median).abs() * len;
  return cost;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_TRANSPORT_HPP
