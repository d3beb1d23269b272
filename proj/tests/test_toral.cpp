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

#include <cmath>

#include "fracdioph/rng.hpp"
#include "fracdioph/toral.hpp"

namespace fracdioph {
namespace {

RatPoint pt(const std::string& s) { return {Rational::from_string(s)}; }

TEST(Toral, HyperbolicValidation) {
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  EXPECT_TRUE(doubling.expanding);
  EXPECT_NEAR(std::abs(doubling.eigenvalues[0]), 2.0, 1e-12);

  EXPECT_THROW(validate_hyperbolic(IntMatrix::parse("1,1;0,1")), std::domain_error);  // eigenvalue 1
  EXPECT_THROW(validate_hyperbolic(IntMatrix::parse("1,0;0,0")), std::domain_error);  // singular

  // cat-like matrix: hyperbolic, moduli (3 +- sqrt 5)/2, not expanding
  ToralSystem cat = validate_hyperbolic(IntMatrix::parse("2,1;1,1"));
  EXPECT_FALSE(cat.expanding);
  double hi = std::max(std::abs(cat.eigenvalues[0]), std::abs(cat.eigenvalues[1]));
  double lo = std::min(std::abs(cat.eigenvalues[0]), std::abs(cat.eigenvalues[1]));
  EXPECT_NEAR(hi, (3 + std::sqrt(5.0)) / 2, 1e-9);
  EXPECT_NEAR(lo, (3 - std::sqrt(5.0)) / 2, 1e-9);
}

TEST(Toral, OrbitExamples) {
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  auto orb3 = orbit(doubling, pt("1/3"), 5);
  EXPECT_EQ(orb3[0][0], Rational::from_string("1/3"));
  EXPECT_EQ(orb3[1][0], Rational::from_string("2/3"));
  EXPECT_EQ(orb3[2][0], Rational::from_string("1/3"));

  auto orb5 = orbit(doubling, pt("1/5"), 4);
  EXPECT_EQ(orb5[1][0], Rational::from_string("2/5"));
  EXPECT_EQ(orb5[2][0], Rational::from_string("4/5"));
  EXPECT_EQ(orb5[3][0], Rational::from_string("3/5"));

  auto fixed = orbit(doubling, pt("0"), 3);
  for (const auto& p : fixed) EXPECT_TRUE(p[0].is_zero());
}

TEST(Toral, ShadowDigitsOracleForDoubling) {
  // the shadow of the first N binary digits is digits / (2^N - 1)
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  RatPoint x = {Rational::from_double(std::sqrt(2.0) - 1)};
  int n = 16, m = 4;
  ShadowResult res = periodic_shadow(doubling, x, n, m);
  // oracle: digit i = floor(2 T^i x); the shadow is (digit string)/(2^N - 1)
  BigInt acc(0);
  Rational t = x[0];
  for (int i = 0; i < n; ++i) {
    Rational twice = t + t;
    BigInt digit = twice.floor();
    acc = acc * BigInt(2) + digit;
    t = twice.mod1();
  }
  Rational oracle = Rational(acc, BigInt::pow(BigInt(2), static_cast<uint64_t>(n)) - BigInt(1));
  EXPECT_EQ(res.y[0], oracle.mod1());
  EXPECT_LE(res.shadow_quality, std::pow(2.0, -(m + 1)) + 1e-15);
  EXPECT_LE(res.shadow_quality, res.quality_bound);
}

TEST(Toral, ShadowOfPeriodicPointIsItself) {
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  // 1/5 has period 4 under doubling
  ShadowResult res = periodic_shadow(doubling, pt("1/5"), 8, 2);
  EXPECT_EQ(res.y[0], Rational::from_string("1/5"));
  EXPECT_EQ(res.shadow_quality, 0.0);
}

TEST(Toral, ShadowExactPeriodicity) {
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    RatPoint x = {Rational::from_double(rng.next_double())};
    int n = 8 + static_cast<int>(rng.next_below(20));
    ShadowResult res = periodic_shadow(doubling, x, n, 3);
    auto around = orbit(doubling, res.y, n + 1);
    EXPECT_EQ(around.front(), around.back());
    // reported quality matches a direct orbit comparison
    auto xs = orbit(doubling, x, n);
    auto ys = orbit(doubling, res.y, n);
    double direct = 0;
    for (int i = 0; i <= n - 3 - 1; ++i) direct = std::max(direct, torus_dist(xs[static_cast<size_t>(i)], ys[static_cast<size_t>(i)]));
    EXPECT_DOUBLE_EQ(res.shadow_quality, direct);
  }
}

TEST(Toral, DiagonalPlaneShadow) {
  ToralSystem tripling = validate_hyperbolic(IntMatrix::parse("3,0;0,3"));
  EXPECT_TRUE(tripling.expanding);
  RatPoint x = {Rational::from_double(0.7234104), Rational::from_double(0.1930129)};
  ShadowResult res = periodic_shadow(tripling, x, 10, 3);
  EXPECT_LE(res.shadow_quality, std::pow(3.0, -3) * std::sqrt(2.0) + 1e-12);
  auto around = orbit(tripling, res.y, 11);
  EXPECT_EQ(around.front(), around.back());
}

TEST(Toral, NonExpandingShadowUnsupported) {
  ToralSystem cat = validate_hyperbolic(IntMatrix::parse("2,1;1,1"));
  EXPECT_THROW(periodic_shadow(cat, {Rational(0), Rational(0)}, 8, 2), std::domain_error);
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  EXPECT_THROW(periodic_shadow(doubling, pt("1/7"), 3, 3), std::invalid_argument);  // N <= m
}

TEST(Colip, CircleBasics) {
  OrbitMeasure a{1, {pt("0")}};
  OrbitMeasure b{1, {pt("1/2")}};
  ColipResult same = colip_distance(a, a);
  EXPECT_DOUBLE_EQ(same.upper, 0.0);
  ColipResult opposite = colip_distance(a, b);
  EXPECT_TRUE(opposite.exact);
  EXPECT_DOUBLE_EQ(opposite.upper, 0.5);
  EXPECT_THROW(colip_distance(a, OrbitMeasure{1, {}}), std::invalid_argument);
}

TEST(Colip, TriangleInequalityOnRandomAtomTriples) {
  Rng rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    auto make = [&](int n) {
      OrbitMeasure m{1, {}};
      for (int i = 0; i < n; ++i)
        m.atoms.push_back({Rational(BigInt(static_cast<int64_t>(rng.next_below(997))), BigInt(997))});
      return m;
    };
    int n = 2 + static_cast<int>(rng.next_below(5));
    OrbitMeasure a = make(n), b = make(n), c = make(n);
    double ab = colip_distance(a, b).upper;
    double bc = colip_distance(b, c).upper;
    double ac = colip_distance(a, c).upper;
    EXPECT_LE(ac, ab + bc + 1e-12);
  }
}

TEST(Colip, TwoDimensionalBoundsBracketTheDistance) {
  ToralSystem tripling = validate_hyperbolic(IntMatrix::parse("3,0;0,3"));
  RatPoint x = {Rational::from_double(0.31), Rational::from_double(0.64)};
  OrbitMeasure mu = OrbitMeasure::from_orbit(tripling, x, 12);
  ShadowResult res = periodic_shadow(tripling, x, 12, 3);
  OrbitMeasure nu = OrbitMeasure::from_orbit(tripling, res.y, 12);
  ColipResult col = colip_distance(mu, nu);
  EXPECT_LE(col.lower, col.upper + 1e-12);
  EXPECT_GE(col.lower, 0.0);
  ColipResult same = colip_distance(mu, mu);
  EXPECT_DOUBLE_EQ(same.upper, 0.0);
}

TEST(Liouville, RationalAtomsAlwaysInside) {
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  ShadowResult res = periodic_shadow(doubling, {Rational::from_double(std::sqrt(2.0) - 1)}, 20, 4);
  OrbitMeasure nu = OrbitMeasure::from_orbit(doubling, res.y, 20);
  for (int n : {1, 3, 7, 10}) {
    LiouvilleMass lm = liouville_mass(nu, n);
    EXPECT_DOUBLE_EQ(lm.in_mass, 1.0);
    EXPECT_DOUBLE_EQ(lm.undecided, 0.0);
  }
}

TEST(Liouville, GoldenPointStaysOutsideAtHonestPrecision) {
  OrbitMeasure golden{1, {{Rational::from_double((std::sqrt(5.0) - 1) / 2)}}};
  // treat the atom as known only to 1e-13: omega(golden) = 2 < 3 keeps it out
  LiouvilleMass lm = liouville_mass(golden, 3, 1e-13);
  EXPECT_DOUBLE_EQ(lm.in_mass, 0.0);
  EXPECT_DOUBLE_EQ(lm.undecided, 0.0);
}

TEST(Liouville, NEqualsOneCoversTheCircle) {
  Rng rng(5);
  OrbitMeasure m{1, {}};
  for (int i = 0; i < 20; ++i) m.atoms.push_back({Rational::from_double(rng.next_double())});
  LiouvilleMass lm = liouville_mass(m, 1, 1e-13);
  EXPECT_DOUBLE_EQ(lm.in_mass, 1.0);
}

TEST(ShadowPipeline, PeriodicMeasuresConvergeWhileStayingLiouville) {
  ToralSystem doubling = validate_hyperbolic(IntMatrix::parse("2"));
  RatPoint x = {Rational::from_double(std::sqrt(2.0) - 1)};
  double prev = 1e300;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{16, 3}, {48, 5}, {96, 7}}) {
    ShadowResult res = periodic_shadow(doubling, x, n, m);
    OrbitMeasure mu = OrbitMeasure::from_orbit(doubling, x, n);
    OrbitMeasure nu = OrbitMeasure::from_orbit(doubling, res.y, n);
    double col = colip_distance(mu, nu).upper;
    EXPECT_LE(col, std::pow(2.0, -m) + static_cast<double>(m) / n + 1e-9);
    EXPECT_LT(col, prev);
    prev = col;
    EXPECT_DOUBLE_EQ(liouville_mass(nu, std::min(10, n)).in_mass, 1.0);
  }
}

}  // namespace
}  // namespace fracdioph
