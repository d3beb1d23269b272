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

#include "fracdioph/thermo.hpp"

namespace fracdioph {
namespace {

TEST(Pressure, CountingAndProbabilityVectors) {
  CifsSystem binary = make_touching_binary();
  // phi == 0: counting 2^n cylinders
  PressureEstimate counting = pressure(binary, Potential::bernoulli({1.0, 1.0}), 5);
  EXPECT_TRUE(counting.exact);
  EXPECT_NEAR(counting.value, std::log(2.0), 1e-15);
  // probability vector normalizes to zero pressure
  PressureEstimate prob = pressure(binary, Potential::bernoulli({1.0 / 3, 2.0 / 3}), 7);
  EXPECT_NEAR(prob.value, 0.0, 1e-12);
}

TEST(Pressure, MoranEquationForMiddleThirds) {
  // oracle: 2 (1/3)^s = 1 at s = log 2 / log 3
  double delta = std::log(2.0) / std::log(3.0);
  PressureEstimate p = pressure(make_middle_thirds(), Potential::geometric(delta), 4);
  EXPECT_NEAR(p.value, 0.0, 1e-12);
}

TEST(Pressure, StrictlyDecreasingInExponent) {
  CifsSystem gauss = make_gauss_system(2, 20);
  double prev = 1e300;
  for (double s : {0.55, 0.7, 0.85, 1.0, 1.3}) {
    PressureEstimate p = pressure(gauss, Potential::geometric(s), 2);
    EXPECT_LT(p.value, prev);
    prev = p.value;
  }
}

TEST(Pressure, DivergenceReportedAsError) {
  CifsSystem gauss = make_gauss_system(2, 20);
  EXPECT_THROW(pressure(gauss, Potential::geometric(0.4), 2), std::domain_error);
  EXPECT_THROW(pressure(gauss, Potential::geometric(0.4), 0), std::invalid_argument);
}

TEST(Bowen, DimensionOracles) {
  BowenResult thirds = bowen_dimension(make_middle_thirds());
  EXPECT_NEAR(thirds.delta, std::log(2.0) / std::log(3.0), 1e-6);
  BowenResult full = bowen_dimension(make_touching_binary());
  EXPECT_NEAR(full.delta, 1.0, 1e-6);
  BowenResult quarter = bowen_dimension(make_quarter_pair());
  EXPECT_NEAR(quarter.delta, 0.5, 1e-6);  // 2 (1/4)^s = 1
}

TEST(Bowen, IrregularSystemsRejected) {
  // single branch: P(0) = 0, no sign change on the bracket
  CifsSystem one = make_similarity_1d({0.5}, {0.0});
  EXPECT_THROW(bowen_dimension(one), std::domain_error);
}

TEST(GibbsWeights, LetterModeBasics) {
  CifsSystem thirds = make_middle_thirds();
  GibbsWeights gw(thirds, Potential::geometric(std::log(2.0) / std::log(3.0)));
  std::vector<double> p = gw.child_probs(Word{});
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[1], 0.5, 1e-12);
  EXPECT_NEAR(gw.weight(Word{0, 1, 0}), 0.125, 1e-12);
  EXPECT_DOUBLE_EQ(gw.gibbs_certificate(), 1.0);
}

TEST(GibbsWeights, LevelNormalizationAndCompatibility) {
  CifsSystem gauss = make_gauss_system(2, 6);
  GibbsWeights gw(gauss, Potential::geometric(0.8));
  for (int n : {1, 2, 3}) {
    double total = 0;
    for (const auto& [w, p] : gw.level_table(n)) total += p;
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
  // weight(w) = sum of children weights
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Word w = gw.sample_word(1 + static_cast<int>(rng.next_below(4)), rng);
    double sum = 0;
    for (int a = 0; a < gauss.letter_count(); ++a) sum += gw.weight(w.append(a));
    EXPECT_NEAR(sum, gw.weight(w), 1e-12);
  }
}

TEST(GibbsWeights, RatioStaysInCertifiedCorridor) {
  CifsSystem gauss = make_gauss_system(2, 8);
  GibbsWeights gw(gauss, Potential::geometric(0.8));
  double cg = gw.gibbs_certificate();
  EXPECT_GE(cg, 1.0);
  Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    int len = 1 + static_cast<int>(rng.next_below(7));
    Word w = gw.sample_word(len, rng);
    Word tau = gw.sample_word(len + 20, rng, w);
    double r = gw.gibbs_ratio(w, tau);
    EXPECT_GE(r, 1.0 / cg);
    EXPECT_LE(r, cg);
  }
}

TEST(GibbsWeights, BernoulliRatioIsExactlyOne) {
  CifsSystem binary = make_touching_binary();
  GibbsWeights gw(binary, Potential::bernoulli({1.0 / 3, 2.0 / 3}));
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    int len = 1 + static_cast<int>(rng.next_below(8));
    Word w = gw.sample_word(len, rng);
    Word tau = gw.sample_word(len + 10, rng, w);
    EXPECT_NEAR(gw.gibbs_ratio(w, tau), 1.0, 1e-12);
  }
}

TEST(Entropy, ClosedForms) {
  CifsSystem binary = make_touching_binary();
  GibbsWeights half(binary, Potential::bernoulli({0.5, 0.5}));
  EXPECT_NEAR(entropy(half, 8).value, std::log(2.0), 1e-12);
  GibbsWeights skewed(binary, Potential::bernoulli({1.0 / 3, 2.0 / 3}));
  double oracle = -(1.0 / 3) * std::log(1.0 / 3) - (2.0 / 3) * std::log(2.0 / 3);
  EXPECT_NEAR(oracle, std::log(3.0) - (2.0 / 3) * std::log(2.0), 1e-12);
  EXPECT_NEAR(entropy(skewed, 9).value, oracle, 1e-12);
  GibbsWeights atom(binary, Potential::bernoulli({1.0, 0.0}));
  EXPECT_NEAR(entropy(atom, 10).value, 0.0, 1e-15);
}

TEST(Lyapunov, ConstantDerivativeExactValues) {
  CifsSystem binary = make_touching_binary();
  GibbsWeights half(binary, Potential::bernoulli({0.5, 0.5}));
  Rng rng(1);
  ValueWithError chi = lyapunov(half, 20, 100, rng);
  EXPECT_TRUE(chi.exact);
  EXPECT_NEAR(chi.value, std::log(2.0), 1e-15);

  CifsSystem thirds = make_middle_thirds();
  GibbsWeights conf(thirds, Potential::bernoulli({0.5, 0.5}));
  Rng rng2(2);
  EXPECT_NEAR(lyapunov(conf, 20, 100, rng2).value, std::log(3.0), 1e-15);
}

TEST(Lyapunov, GaussMeasureAgainstQuadratureOracle) {
  // s = 1 conformal weights on the continued-fraction system approximate the
  // Gauss measure; chi = pi^2 / (6 log 2).  Oracle: Simpson quadrature of
  // 2 log(1/x) / ((1+x) log 2) over (0,1).
  double oracle = 0;
  int steps = 20000;
  auto f = [](double x) { return 2 * std::log(1.0 / x) / ((1 + x) * std::log(2.0)); };
  for (int i = 0; i < steps; ++i) {
    double a = (i + 1e-9) / steps, b = (i + 1.0) / steps;
    oracle += (b - a) / 6 * (f(a) + 4 * f(0.5 * (a + b)) + f(b));
  }
  EXPECT_NEAR(oracle, 3.14159265358979323846 * 3.14159265358979323846 / (6 * std::log(2.0)), 2e-3);

  CifsSystem gauss = make_gauss_system(1, 50);
  GibbsWeights gw(gauss, Potential::geometric(1.0));
  Rng rng(77);
  ValueWithError chi = lyapunov(gw, 24, 3000, rng);
  EXPECT_FALSE(chi.diverged);
  // the alphabet truncation biases the level sums downwards a little
  EXPECT_NEAR(chi.value, oracle, 0.45);
  EXPECT_GT(chi.value, 1.8);
}

TEST(Hofbauer, DimensionFormula) {
  CifsSystem binary = make_touching_binary();
  GibbsWeights half(binary, Potential::bernoulli({0.5, 0.5}));
  Rng rng(3);
  EXPECT_NEAR(hofbauer_dimension(half, 10, 100, rng).value, 1.0, 1e-12);

  GibbsWeights skewed(binary, Potential::bernoulli({1.0 / 3, 2.0 / 3}));
  Rng rng2(4);
  double oracle = (std::log(3.0) - (2.0 / 3) * std::log(2.0)) / std::log(2.0);
  EXPECT_NEAR(oracle, 0.9183, 1e-4);
  EXPECT_NEAR(hofbauer_dimension(skewed, 10, 100, rng2).value, oracle, 1e-12);

  // cross-check of the two dimension pipelines on middle thirds
  CifsSystem thirds = make_middle_thirds();
  GibbsWeights conf(thirds, Potential::bernoulli({0.5, 0.5}));
  Rng rng3(5);
  double hof = hofbauer_dimension(conf, 12, 100, rng3).value;
  double bowen = bowen_dimension(thirds).delta;
  EXPECT_NEAR(hof, bowen, 1e-6);
}

TEST(Hofbauer, RequiresPositiveLyapunov) {
  CifsSystem binary = make_touching_binary();
  GibbsWeights atom = GibbsWeights::point_mass(binary, Word{0});
  Rng rng(6);
  // the atom sits on a contracting fixed point: chi = log 2 > 0, fine;
  // a zero-Lyapunov case needs an expansion-free branch, which the
  // constructor forbids, so exercise the divergence flag path instead
  EXPECT_NO_THROW(hofbauer_dimension(atom, 6, 50, rng));
}

TEST(Potentials, TabulatedDepthOneMatchesBernoulli) {
  CifsSystem binary = make_touching_binary();
  std::map<Word, double> table;
  table[Word{0}] = std::log(1.0 / 3);
  table[Word{1}] = std::log(2.0 / 3);
  Potential tab = Potential::tabulated(1, table);
  PressureEstimate p = pressure(binary, tab, 4);
  EXPECT_TRUE(p.exact);
  EXPECT_NEAR(p.value, 0.0, 1e-12);
  GibbsWeights gw(binary, tab);
  std::vector<double> cp = gw.child_probs(Word{});
  EXPECT_NEAR(cp[0], 1.0 / 3, 1e-12);
  EXPECT_NEAR(cp[1], 2.0 / 3, 1e-12);
}

TEST(Potentials, TabulatedDepthTwoPressureBracket) {
  CifsSystem binary = make_touching_binary();
  std::map<Word, double> table;
  // a genuinely two-step potential
  table[Word{0, 0}] = std::log(0.40);
  table[Word{0, 1}] = std::log(0.25);
  table[Word{1, 0}] = std::log(0.20);
  table[Word{1, 1}] = std::log(0.55);
  Potential tab = Potential::tabulated(2, table);
  PressureEstimate p3 = pressure(binary, tab, 3);
  PressureEstimate p6 = pressure(binary, tab, 6);
  EXPECT_LE(p6.upper, p3.upper + 1e-12);
  EXPECT_GE(p6.lower, p3.lower - 1e-12);
  GibbsWeights gw(binary, tab);
  double total = 0;
  for (const auto& [w, weight] : gw.level_table(3)) total += weight;
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(PointMassWeights, DeterministicPath) {
  CifsSystem thirds = make_middle_thirds();
  GibbsWeights pm = GibbsWeights::point_mass(thirds, Word{0, 1});
  EXPECT_DOUBLE_EQ(pm.weight(Word{0, 1, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(pm.weight(Word{0, 0}), 0.0);
  Rng rng(8);
  EXPECT_EQ(pm.sample_word(6, rng), (Word{0, 1, 0, 1, 0, 1}));
  EXPECT_NEAR(entropy(pm, 8).value, 0.0, 1e-15);
}

}  // namespace
}  // namespace fracdioph
