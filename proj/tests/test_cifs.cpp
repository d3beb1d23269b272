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

#include "fracdioph/cifs.hpp"
#include "fracdioph/measure.hpp"
#include "fracdioph/rng.hpp"

namespace fracdioph {
namespace {

Word random_word(Rng& rng, const CifsSystem& sys, int min_len, int max_len) {
  std::vector<int32_t> letters;
  int len = min_len + static_cast<int>(rng.next_below(static_cast<uint64_t>(max_len - min_len + 1)));
  for (int i = 0; i < len; ++i)
    letters.push_back(static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(sys.letter_count()))));
  return Word(letters);
}

TEST(Cifs, ApplyWordExamples) {
  CifsSystem thirds = make_middle_thirds();
  EXPECT_NEAR(thirds.apply_word(Word{0, 0}, Vec{1.0})[0], 1.0 / 9, 1e-15);
  EXPECT_NEAR(thirds.apply_word(Word{}, Vec{0.7})[0], 0.7, 0);
  CifsSystem gauss = make_gauss_system(1, 5);
  EXPECT_NEAR(gauss.apply_word(Word{0, 0}, Vec{0.0})[0], 0.5, 1e-15);  // letters are values 1,1
  EXPECT_THROW(thirds.apply_word(Word{5}, Vec{0.5}), std::out_of_range);
  EXPECT_THROW(thirds.apply_word(Word{0}, Vec{2.5}), std::domain_error);
}

TEST(Cifs, CodingPointExamples) {
  CifsSystem thirds = make_middle_thirds();
  for (int n : {1, 4, 9}) {
    Word w(std::vector<int32_t>(static_cast<size_t>(n), 0));
    auto c = thirds.coding_point(w);
    EXPECT_NEAR(c.error_radius, std::pow(3.0, -n), 1e-12 * c.error_radius);
    EXPECT_LE(std::abs(c.point[0] - 0.0), c.error_radius);
  }
  auto c11 = thirds.coding_point(Word{1, 1});
  EXPECT_GE(c11.point[0], 8.0 / 9 - 1e-12);
  EXPECT_LE(c11.point[0], 1.0 + 1e-12);
  EXPECT_NEAR(c11.error_radius, 1.0 / 9, 1e-14);

  // twenty continued-fraction steps with partial quotient 1 land on the
  // golden point; the convergent-interval width is below 1e-8
  CifsSystem gauss = make_gauss_system(1, 3);
  Word ones(std::vector<int32_t>(20, 0));
  auto g = gauss.coding_point(ones);
  double golden = (std::sqrt(5.0) - 1) / 2;
  EXPECT_LE(g.error_radius, 1e-8);
  EXPECT_LE(std::abs(g.point[0] - golden), g.error_radius);
}

TEST(Cifs, CylinderDiameterExamples) {
  CifsSystem thirds = make_middle_thirds();
  EXPECT_DOUBLE_EQ(thirds.cylinder_diameter(Word{}), 1.0);
  Rng rng(3);
  for (int n = 1; n <= 10; ++n) {
    Word w = random_word(rng, thirds, n, n);
    // algebraically an exact product; interval endpoints keep an absolute
    // rounding floor of a few ulp of the ambient coordinates
    EXPECT_NEAR(thirds.cylinder_diameter(w), std::pow(3.0, -n), 1e-14 + 1e-12 * std::pow(3.0, -n));
  }
  // conformal bound: exact interval width within K_bd of derivative bound
  CifsSystem gauss = make_gauss_system(1, 3);
  Word w{0, 0};
  double exact = gauss.cylinder_diameter(w);  // interval image of [0,1]
  // oracle: u_{(1,1)}([0,1]) has endpoints u(0) = 1/2 and u(1) = 2/3
  double end_a = 1.0 / (1 + 1.0 / (1 + 1.0));
  double end_b = 1.0 / (1 + 1.0 / (1 + 0.0));
  EXPECT_NEAR(exact, std::abs(end_a - end_b), 1e-15);
  double kbd = gauss.distortion_constant();
  double bound = kbd * gauss.derivative_bounds(w).hi * gauss.seed_diameter();
  EXPECT_LE(exact, bound * (1 + 1e-12));
}

TEST(Cifs, DerivativeBoundsExamples) {
  CifsSystem thirds = make_middle_thirds();
  Interval d4 = thirds.derivative_bounds(Word{0, 1, 0, 1});
  EXPECT_DOUBLE_EQ(d4.lo, d4.hi);
  EXPECT_NEAR(d4.lo, std::pow(3.0, -4), 1e-16);

  CifsSystem gauss = make_gauss_system(1, 3);
  Interval g2 = gauss.derivative_bounds(Word{1});  // letter value 2
  EXPECT_NEAR(g2.lo, 1.0 / 9, 1e-15);
  EXPECT_NEAR(g2.hi, 1.0 / 4, 1e-15);

  // moebius: dense grid oracle within the certified range
  CifsSystem schottky = make_schottky_demo();
  Word w{0, 2, 1};
  Interval db = schottky.derivative_bounds(w);
  Rng rng(17);
  double seen_lo = 1e300, seen_hi = 0;
  for (int i = 0; i < 4000; ++i) {
    double a = 2 * 3.14159265358979323846 * rng.next_double();
    double r = std::sqrt(rng.next_double());
    Vec x{r * std::cos(a), r * std::sin(a)};
    // |u_w'(x)| via the chain rule along the composition
    double dv = 1;
    Vec y = x;
    for (size_t j = w.length(); j-- > 0;) {
      dv *= schottky.branch(w.at(j)).derivative_at(y);
      y = schottky.branch(w.at(j)).apply(y);
    }
    seen_lo = std::min(seen_lo, dv);
    seen_hi = std::max(seen_hi, dv);
  }
  EXPECT_GE(seen_lo, db.lo - 1e-12);
  EXPECT_LE(seen_hi, db.hi + 1e-12);
  EXPECT_LE(db.hi / db.lo, schottky.distortion_constant());
}

TEST(Cifs, ValidateExamples) {
  ValidationReport thirds = make_middle_thirds().validate();
  EXPECT_TRUE(thirds.contraction_ok);
  EXPECT_NEAR(thirds.s_max, 1.0 / 3, 1e-15);
  EXPECT_TRUE(thirds.strong_separation);
  EXPECT_TRUE(thirds.open_set_condition);
  for (const auto& item : thirds.items) {
    if (item.axiom == "strong_separation") {
      EXPECT_NEAR(item.value, 1.0 / 3, 1e-12);
    }
  }

  ValidationReport touching = make_touching_binary().validate();
  EXPECT_TRUE(touching.open_set_condition);
  EXPECT_FALSE(touching.strong_separation);

  ValidationReport gauss = make_gauss_system(2, 50).validate();
  EXPECT_TRUE(gauss.contraction_ok);
  EXPECT_NEAR(gauss.s_max, 0.25, 1e-15);
  bool trend_found = false;
  for (const auto& item : gauss.items)
    if (item.axiom == "contraction_vanishes_along_alphabet") {
      trend_found = true;
      EXPECT_TRUE(item.pass);
      EXPECT_NEAR(item.value, 1.0 / (51.0 * 51.0), 1e-15);  // sup|u'| = 1/a^2 at a = 51
    }
  EXPECT_TRUE(trend_found);

  ValidationReport schottky = make_schottky_demo().validate();
  EXPECT_TRUE(schottky.contraction_ok);
  EXPECT_TRUE(schottky.maps_into_seed_ok);
  EXPECT_TRUE(schottky.strong_separation);
}

TEST(Cifs, DiameterMonotoneUnderExtension) {
  Rng rng(5);
  for (const CifsSystem& sys : {make_middle_thirds(), make_gauss_system(1, 4), make_schottky_demo()}) {
    for (int trial = 0; trial < 300; ++trial) {
      Word w = random_word(rng, sys, 1, 6);
      Word ext = w.concat(random_word(rng, sys, 1, 5));
      EXPECT_LE(sys.cylinder_diameter(ext), sys.cylinder_diameter(w) * (1 + 1e-12));
    }
  }
}

TEST(Cifs, GeometricDecayBound) {
  for (const CifsSystem& sys : {make_middle_thirds(), make_quarter_pair(), make_schottky_demo()}) {
    double s = sys.contraction_sup();
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      Word w = random_word(rng, sys, 1, 8);
      EXPECT_LE(sys.cylinder_diameter(w),
                std::pow(s, static_cast<double>(w.length())) * sys.seed_diameter() * (1 + 1e-9));
    }
  }
}

TEST(Cifs, CodingContainment) {
  Rng rng(23);
  for (const CifsSystem& sys : {make_middle_thirds(), make_gauss_system(1, 4), make_schottky_demo()}) {
    for (int trial = 0; trial < 200; ++trial) {
      Word w = random_word(rng, sys, 1, 5);
      Word ext = w.concat(random_word(rng, sys, 1, 6));
      auto outer = sys.coding_point(w);
      auto inner = sys.coding_point(ext);
      EXPECT_LE(dist(inner.point, outer.point), outer.error_radius * (1 + 1e-9));
    }
  }
}

TEST(Cifs, SimilarityExactness) {
  CifsSystem quarter = make_quarter_pair();
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    Word a = random_word(rng, quarter, 1, 6);
    Word b = random_word(rng, quarter, 1, 6);
    Interval da = quarter.derivative_bounds(a);
    EXPECT_DOUBLE_EQ(da.lo, da.hi);
    double prod = quarter.cylinder_diameter(a.concat(b)) * quarter.seed_diameter();
    double split = quarter.cylinder_diameter(a) * quarter.cylinder_diameter(b);
    EXPECT_NEAR(prod, split, 1e-12 * split);
  }
}

TEST(Cifs, PathWalkerMatchesRegionOfWord) {
  Rng rng(47);
  for (const CifsSystem& sys : {make_middle_thirds(), make_gauss_system(1, 4), make_schottky_demo()}) {
    for (int trial = 0; trial < 200; ++trial) {
      Word w = random_word(rng, sys, 0, 7);
      detail::PathWalker walker = detail::PathWalker::root(sys);
      for (size_t i = 0; i < w.length(); ++i) walker = walker.extend(w.at(i));
      Region a = walker.region();
      Region b = sys.region_of_word(w);
      EXPECT_NEAR(a.diameter(), b.diameter(), 1e-14 + 1e-9 * a.diameter());
      EXPECT_LE(dist(a.center_point(), b.center_point()), 1e-12);
    }
  }
}

TEST(Cifs, MoebiusDiskImagesAreExact) {
  CifsSystem schottky = make_schottky_demo();
  // the factory maps the unit disk onto disks of radius 0.22 at distance 0.55
  for (int a = 0; a < 3; ++a) {
    Region img = schottky.branch(a).map_region(schottky.seed());
    ASSERT_EQ(img.kind, Region::Kind::Disk);
    EXPECT_NEAR(img.radius, 0.22, 1e-12);
    EXPECT_NEAR(norm(img.center), 0.55, 1e-12);
  }
  // image of a random interior disk under a branch contains images of points
  Rng rng(131);
  for (int trial = 0; trial < 500; ++trial) {
    double cx = 0.4 * (2 * rng.next_double() - 1), cy = 0.4 * (2 * rng.next_double() - 1);
    double r = 0.2 * rng.next_double() + 0.01;
    Region disk = Region::disk(Vec{cx, cy}, r);
    int b = static_cast<int>(rng.next_below(3));
    Region img = schottky.branch(b).map_region(disk);
    double ang = 2 * 3.14159265358979323846 * rng.next_double();
    double rr = r * std::sqrt(rng.next_double());
    Vec p{cx + rr * std::cos(ang), cy + rr * std::sin(ang)};
    Vec q = schottky.branch(b).apply(p);
    EXPECT_LE(dist(q, img.center), img.radius * (1 + 1e-9));
  }
}

CifsSystem make_rotated_pair() {
  // two twisted planar similarities on the unit disk
  std::vector<BranchMap> b;
  b.push_back(BranchMap::similarity(0.35, Vec{0.5, 0.1}, 0.7));
  b.push_back(BranchMap::similarity(0.3, Vec{-0.45, -0.2}, -1.1, /*refl=*/true));
  return CifsSystem(2, Region::disk(Vec{0, 0}, 1.0), std::move(b), "rotated_pair");
}

TEST(Cifs, RotatedAndReflectedSimilarities) {
  CifsSystem sys = make_rotated_pair();
  ValidationReport rep = sys.validate();
  EXPECT_TRUE(rep.usable());
  EXPECT_TRUE(rep.strong_separation);
  // exact disk transport: image of a point stays inside the image disk
  Rng rng(9);
  for (int trial = 0; trial < 400; ++trial) {
    Word w = random_word(rng, sys, 1, 6);
    Region img = sys.region_of_word(w);
    // the image of the seed center must lie in the image region
    Vec q = sys.apply_word(w, sys.seed_center());
    EXPECT_LE(dist(q, img.center_point()), img.radius * (1 + 1e-9));
    // derivative composition is exact for similarities
    Interval d = sys.derivative_bounds(w);
    EXPECT_DOUBLE_EQ(d.lo, d.hi);
  }
  // the walker composes conjugation parities correctly
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_word(rng, sys, 0, 7);
    detail::PathWalker walker = detail::PathWalker::root(sys);
    for (size_t i = 0; i < w.length(); ++i) walker = walker.extend(w.at(i));
    Region a = walker.region();
    Region b = sys.region_of_word(w);
    EXPECT_NEAR(a.diameter(), b.diameter(), 1e-14 + 1e-9 * a.diameter());
    EXPECT_LE(dist(a.center_point(), b.center_point()), 1e-12);
  }
}

TEST(Cifs, PeriodicFixedPointMatchesDeepCoding) {
  Rng rng(404);
  for (const CifsSystem& sys : {make_middle_thirds(), make_touching_binary(), make_rotated_pair()}) {
    for (int trial = 0; trial < 40; ++trial) {
      Word w = random_word(rng, sys, 1, 4);
      if (sys.dim() == 2 && [&] {
            for (size_t i = 0; i < w.length(); ++i)
              if (sys.branch(w.at(i)).reflect) return true;
            return false;
          }())
        continue;  // antiholomorphic cycles are out of the closed-form path
      auto fixed = periodic_fixed_point(sys, w);
      ASSERT_TRUE(fixed.has_value());
      // oracle: iterate the word many times from the seed center
      Word deep;
      while (deep.length() < 120) deep = deep.concat(w);
      auto coded = sys.coding_point(deep);
      EXPECT_LE(dist(*fixed, coded.point), coded.error_radius + 1e-12);
    }
  }
}

TEST(Cifs, ConstructorRejections) {
  EXPECT_THROW(BranchMap::similarity(1.5, Vec{0.0}), std::invalid_argument);
  EXPECT_THROW(BranchMap::gauss(0), std::invalid_argument);
  EXPECT_THROW(BranchMap::moebius({1, 0}, {0, 0}, {0, 0}, {0, 0}), std::invalid_argument);
  // moebius branches need a disk seed
  EXPECT_THROW(CifsSystem(2, Region::box(Vec{0, 0}, Vec{1, 1}),
                          {BranchMap::moebius({0.2, 0}, {0, 0}, {0, 0}, {1, 0})}),
               std::invalid_argument);
}

}  // namespace
}  // namespace fracdioph
