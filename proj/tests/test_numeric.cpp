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

#include <gtest/gtest.h>

#include "fracdioph/bigint.hpp"
#include "fracdioph/rational.hpp"
#include "fracdioph/rng.hpp"
#include "fracdioph/transport.hpp"

namespace fracdioph {
namespace {

TEST(BigInt, SmallArithmeticAgainstInt64) {
  Rng rng(42);
  for (int trial = 0; trial < 3000; ++trial) {
    int64_t a = static_cast<int64_t>(rng.next_u64() % 2000001) - 1000000;
    int64_t b = static_cast<int64_t>(rng.next_u64() % 2000001) - 1000000;
    BigInt A(a), B(b);
    EXPECT_EQ((A + B).to_int64(), a + b);
    EXPECT_EQ((A - B).to_int64(), a - b);
    EXPECT_EQ((A * B).to_int64(), a * b);
    if (b != 0) {
      EXPECT_EQ((A / B).to_int64(), a / b);
      EXPECT_EQ((A % B).to_int64(), a % b);
    }
    EXPECT_EQ(A < B, a < b);
  }
}

TEST(BigInt, BigProductsAndDecimal) {
  BigInt two_64 = BigInt::pow(BigInt(2), 64);
  EXPECT_EQ(two_64.to_string(), "18446744073709551616");
  BigInt m = two_64 - BigInt(1);
  EXPECT_EQ(m.to_string(), "18446744073709551615");
  EXPECT_EQ(BigInt::from_decimal("18446744073709551615"), m);
  BigInt sq = m * m;
  EXPECT_EQ(sq.to_string(), "340282366920938463426481119284349108225");
  BigInt q, r;
  BigInt::divmod(sq, m, q, r);
  EXPECT_EQ(q, m);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(BigInt::gcd(BigInt(462), BigInt(1071)).to_int64(), 21);
}

TEST(BigInt, DivmodRandomizedIdentity) {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    BigInt a = BigInt(static_cast<int64_t>(rng.next_u64() >> 1));
    BigInt b = BigInt(static_cast<int64_t>(rng.next_u64() >> 20) + 1);
    a = a * b + BigInt(static_cast<int64_t>(rng.next_u64() % 1000));
    if (trial % 2) a = -a;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    EXPECT_EQ(q * b + r, a);
    EXPECT_TRUE(r.abs() < b.abs());
  }
}

TEST(Rational, ParsingAndNormalization) {
  EXPECT_EQ(Rational::from_string("3/6"), Rational(BigInt(1), BigInt(2)));
  EXPECT_EQ(Rational::from_string("-0.25"), Rational(BigInt(-1), BigInt(4)));
  EXPECT_EQ(Rational::from_string("2"), Rational(2));
  EXPECT_EQ(Rational::from_string("0.5") + Rational::from_string("0.5"), Rational(1));
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(Rational, FromDoubleIsExact) {
  double x = 0.1;
  Rational r = Rational::from_double(x);
  EXPECT_DOUBLE_EQ(r.to_double(), x);
  EXPECT_EQ(Rational::from_double(0.5), Rational(BigInt(1), BigInt(2)));
  EXPECT_EQ(Rational::from_double(-1.75), Rational(BigInt(-7), BigInt(4)));
}

TEST(Rational, Mod1AndCircleDist) {
  EXPECT_EQ(Rational::from_string("7/3").mod1(), Rational(BigInt(1), BigInt(3)));
  EXPECT_EQ(Rational::from_string("-1/3").mod1(), Rational(BigInt(2), BigInt(3)));
  EXPECT_EQ(circle_dist(Rational::from_string("1/10"), Rational::from_string("9/10")),
            Rational(BigInt(1), BigInt(5)));
  EXPECT_EQ(circle_dist(Rational(0), Rational::from_string("1/2")), Rational(BigInt(1), BigInt(2)));
}

TEST(Rational, SolveLinear) {
  // [[2,1],[1,1]] x = [3,2]  ->  x = (1,1)
  std::vector<std::vector<Rational>> a{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  std::vector<Rational> b{Rational(3), Rational(2)};
  auto x = solve_linear(a, b);
  EXPECT_EQ(x[0], Rational(1));
  EXPECT_EQ(x[1], Rational(1));
  std::vector<std::vector<Rational>> sing{{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
  EXPECT_THROW(solve_linear(sing, b), std::domain_error);
}

TEST(Transport, CircleW1Basics) {
  std::vector<Rational> zero{Rational(0)};
  std::vector<Rational> half{Rational(BigInt(1), BigInt(2))};
  EXPECT_EQ(w1_circle_exact(zero, zero), Rational(0));
  EXPECT_EQ(w1_circle_exact(zero, half), Rational(BigInt(1), BigInt(2)));
  // quarter turn
  std::vector<Rational> quarter{Rational(BigInt(1), BigInt(4))};
  EXPECT_EQ(w1_circle_exact(zero, quarter), Rational(BigInt(1), BigInt(4)));
  // mass that should wrap around rather than cross: {0.1, 0.9} vs {0.0, 0.8}
  std::vector<Rational> a{Rational::from_string("1/10"), Rational::from_string("9/10")};
  std::vector<Rational> b{Rational(0), Rational::from_string("8/10")};
  EXPECT_EQ(w1_circle_exact(a, b), Rational(BigInt(1), BigInt(10)));
}

TEST(Transport, MatchesExhaustiveCouplingOnSmallExamples) {
  // n=2 atoms each: the optimal coupling is one of two pairings.
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto rnd = [&] { return Rational(BigInt(static_cast<int64_t>(rng.next_below(1000))), BigInt(1000)); };
    std::vector<Rational> a{rnd(), rnd()}, b{rnd(), rnd()};
    Rational w = w1_circle_exact(a, b);
    Rational c1 = (circle_dist(a[0], b[0]) + circle_dist(a[1], b[1])) / Rational(2);
    Rational c2 = (circle_dist(a[0], b[1]) + circle_dist(a[1], b[0])) / Rational(2);
    Rational best = c1 < c2 ? c1 : c2;
    EXPECT_EQ(w, best) << "trial " << trial;
  }
}

}  // namespace
}  // namespace fracdioph
