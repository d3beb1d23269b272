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

#ifndef FRACDIOPH_CIFS_HPP
#define FRACDIOPH_CIFS_HPP

#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracdioph/geometry.hpp"
#include "fracdioph/rng.hpp"
#include "fracdioph/word.hpp"

namespace fracdioph {

using Complex = std::complex<double>;

inline Complex to_complex(const Vec& v) { return {v[0], v.size() > 1 ? v[1] : 0.0}; }
inline Vec to_vec(Complex z) { return {z.real(), z.imag()}; }

// One contracting conformal branch.  Three families cover the systems built
// here: similarities (any dimension), Moebius maps of the plane, and the
// one-dimensional continued-fraction branches x -> 1/(a+x).
//
// Every family transports box/disk regions exactly, which is what makes
// cylinder enclosures monotone under word extension.
struct BranchMap {
  enum class Kind { Similarity, Moebius, Gauss1d };
  Kind kind = Kind::Similarity;

  // Similarity: x -> ratio * Q x + translation, Q orthogonal.
  double ratio = 0.5;       // in (0,1)
  double rotation = 0;      // d = 2 only, radians
  bool reflect = false;     // d = 2: conjugate by diag(1,-1); d = 1: x -> -x
  Vec translation;

  // Moebius: z -> (az+b)/(cz+d) on R^2 via the complex plane.
  Complex ma{1, 0}, mb{0, 0}, mc{0, 0}, md{1, 0};

  // Gauss branch: x -> 1/(letter + x), letter >= 1.
  int letter = 1;

  static BranchMap similarity(double r, Vec t, double rot = 0, bool refl = false) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("BranchMap: similarity ratio must be in (0,1)");
    BranchMap m;
    m.kind = Kind::Similarity;
    m.ratio = r;
    m.translation = std::move(t);
    m.rotation = rot;
    m.reflect = refl;
    return m;
  }
  static BranchMap moebius(Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a * d - b * c) < 1e-15) throw std::invalid_argument("BranchMap: moebius determinant is zero");
    BranchMap m;
    m.kind = Kind::Moebius;
    m.ma = a;
    m.mb = b;
    m.mc = c;
    m.md = d;
    return m;
  }
  static BranchMap gauss(int a) {
    if (a < 1) throw std::invalid_argument("BranchMap: gauss letter must be >= 1");
    BranchMap m;
    m.kind = Kind::Gauss1d;
    m.letter = a;
    return m;
  }

  Vec apply(const Vec& x) const {
    switch (kind) {
      case Kind::Similarity: {
        Vec y(x.size());
        if (x.size() == 2 && (rotation != 0 || reflect)) {
          double c = std::cos(rotation), s = std::sin(rotation);
          double x0 = x[0], x1 = reflect ? -x[1] : x[1];
          y[0] = ratio * (c * x0 - s * x1) + translation[0];
          y[1] = ratio * (s * x0 + c * x1) + translation[1];
        } else {
          double sign = (x.size() == 1 && reflect) ? -1.0 : 1.0;
          for (size_t i = 0; i < x.size(); ++i) y[i] = sign * ratio * x[i] + translation[i];
        }
        return y;
      }
      case Kind::Moebius: {
        Complex z = to_complex(x);
        return to_vec((ma * z + mb) / (mc * z + md));
      }
      case Kind::Gauss1d:
        return {1.0 / (letter + x[0])};
    }
    throw std::logic_error("BranchMap: bad kind");
  }

  double derivative_at(const Vec& x) const {
    switch (kind) {
      case Kind::Similarity:
        return ratio;
      case Kind::Moebius: {
        Complex z = to_complex(x);
        Complex den = mc * z + md;
        return std::abs(ma * md - mb * mc) / std::norm(den);
      }
      case Kind::Gauss1d: {
        double t = letter + x[0];
        return 1.0 / (t * t);
      }
    }
    throw std::logic_error("BranchMap: bad kind");
  }

  // Exact image of a region.  Boxes survive only maps that keep them
  // axis-aligned; everything else goes through disks.
  Region map_region(const Region& r) const {
    switch (kind) {
      case Kind::Similarity: {
        if (r.kind == Region::Kind::Disk) {
          return Region::disk(apply(r.center), ratio * r.radius);
        }
        if (r.dim() == 2 && (rotation != 0 || reflect))
          throw std::invalid_argument("BranchMap: rotated similarity needs a disk region");
        Vec a = apply(r.lo), b = apply(r.hi);
        for (size_t i = 0; i < a.size(); ++i)
          if (a[i] > b[i]) std::swap(a[i], b[i]);
        return Region::box(std::move(a), std::move(b));
      }
      case Kind::Moebius: {
        if (r.kind != Region::Kind::Disk) throw std::invalid_argument("BranchMap: moebius needs a disk region");
        return map_disk_moebius(to_complex(r.center), r.radius);
      }
      case Kind::Gauss1d: {
        // x -> 1/(a+x) is decreasing.
        double lo = r.lo[0], hi = r.hi[0];
        return Region::interval(1.0 / (letter + hi), 1.0 / (letter + lo));
      }
    }
    throw std::logic_error("BranchMap: bad kind");
  }

  // Exact [min,max] of |u'| over the region.
  Interval derivative_range(const Region& r) const {
    switch (kind) {
      case Kind::Similarity:
        return {ratio, ratio};
      case Kind::Moebius: {
        if (r.kind != Region::Kind::Disk) throw std::invalid_argument("BranchMap: moebius needs a disk region");
        double det = std::abs(ma * md - mb * mc);
        if (std::abs(mc) < 1e-300) {
          double v = det / std::norm(md);
          return {v, v};
        }
        double m = std::abs(mc * to_complex(r.center) + md);
        double spread = std::abs(mc) * r.radius;
        if (m <= spread) throw std::domain_error("BranchMap: moebius pole meets the region");
        double den_lo = m - spread, den_hi = m + spread;
        return {det / (den_hi * den_hi), det / (den_lo * den_lo)};
      }
      case Kind::Gauss1d: {
        double lo = r.lo[0], hi = r.hi[0];
        double a = static_cast<double>(letter);
        return {1.0 / ((a + hi) * (a + hi)), 1.0 / ((a + lo) * (a + lo))};
      }
    }
    throw std::logic_error("BranchMap: bad kind");
  }

 private:
  Region map_disk_moebius(Complex c0, double r0) const {
    if (std::abs(mc) < 1e-300) {
      Complex scale = ma / md;
      return Region::disk(to_vec(scale * c0 + mb / md), std::abs(scale) * r0);
    }
    // u(z) = a/c + eta / (cz + d), eta = (bc - ad)/c.
    Complex eta = (mb * mc - ma * md) / mc;
    Complex vc = mc * c0 + md;
    double vr = std::abs(mc) * r0;
    double denom = std::norm(vc) - vr * vr;
    if (denom <= 0) throw std::domain_error("BranchMap: moebius pole meets the region");
    Complex ic = std::conj(vc) / denom;
    double ir = vr / denom;
    return Region::disk(to_vec(ma / mc + eta * ic), std::abs(eta) * ir);
  }
};

struct ValidationItem {
  std::string axiom;
  bool pass = false;
  double value = 0;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool contraction_ok = false;
  bool maps_into_seed_ok = false;
  bool open_set_condition = false;
  bool strong_separation = false;
  double s_max = 0;
  double distortion_constant = 1;

  // The axioms a system must satisfy before the estimators are meaningful.
  // Separation failures are reported but do not block (Gibbs weights exist
  // without the open set condition).
  bool usable() const { return contraction_ok && maps_into_seed_ok; }
};

// A conformal iterated function system: a compact seed region (box or disk,
// which settles the cone condition) and a list of branches, optionally a
// truncation of an infinite family.
class CifsSystem {
 public:
  CifsSystem(int dim, Region seed, std::vector<BranchMap> branches, std::string name = "",
             bool truncated_infinite = false)
      : dim_(dim),
        seed_(std::move(seed)),
        branches_(std::move(branches)),
        name_(std::move(name)),
        truncated_infinite_(truncated_infinite) {
    if (branches_.empty()) throw std::invalid_argument("CifsSystem: no branches");
    if (static_cast<size_t>(dim_) != seed_.dim()) throw std::invalid_argument("CifsSystem: seed dimension mismatch");
    for (const auto& b : branches_) {
      if (dim_ >= 2 && b.kind == BranchMap::Kind::Similarity && (b.rotation != 0 || b.reflect) &&
          seed_.kind != Region::Kind::Disk)
        throw std::invalid_argument("CifsSystem: rotated similarities need a disk seed");
      if (b.kind == BranchMap::Kind::Moebius && seed_.kind != Region::Kind::Disk)
        throw std::invalid_argument("CifsSystem: moebius branches need a disk seed");
      if (b.kind == BranchMap::Kind::Gauss1d && dim_ != 1)
        throw std::invalid_argument("CifsSystem: gauss branches are one-dimensional");
    }
  }

  int dim() const { return dim_; }
  const Region& seed() const { return seed_; }
  const std::string& name() const { return name_; }
  bool truncated_infinite() const { return truncated_infinite_; }
  int letter_count() const { return static_cast<int>(branches_.size()); }
  const BranchMap& branch(int a) const {
    if (a < 0 || a >= letter_count()) throw std::out_of_range("CifsSystem: letter out of alphabet");
    return branches_[static_cast<size_t>(a)];
  }

  Vec seed_center() const { return seed_.center_point(); }
  double seed_diameter() const { return seed_.diameter(); }

  // Left-to-right composition u_{w_1} o ... o u_{w_n} evaluated at x.
  Vec apply_word(const Word& w, Vec x) const {
    if (!seed_.contains_point(x, 1e-9)) throw std::domain_error("apply_word: point outside the seed set");
    for (size_t i = w.length(); i-- > 0;) x = branch(w.at(i)).apply(x);
    return x;
  }

  // Exact enclosure of pi([w]); equals the seed for the empty word.
  Region region_of_word(const Word& w) const {
    Region r = seed_;
    for (size_t i = w.length(); i-- > 0;) r = branch(w.at(i)).map_region(r);
    return r;
  }

  // Upper bound on Diam(pi([w])), monotone under extension, exact for
  // similarity systems.
  double cylinder_diameter(const Word& w) const { return region_of_word(w).diameter(); }

  struct CodingResult {
    Vec point;
    double error_radius = 0;
  };

  // pi at the truncated word: the image of the seed center, with a containment
  // radius covering every infinite extension.
  CodingResult coding_point(const Word& w) const {
    if (w.empty()) throw std::invalid_argument("coding_point: needs a nonempty word");
    return {apply_word(w, seed_center()), cylinder_diameter(w)};
  }

  // [min,max] of |u_w'| over the seed; for similarities min == max.
  Interval derivative_bounds(const Word& w) const {
    Region r = seed_;
    double lo = 1, hi = 1;
    for (size_t i = w.length(); i-- > 0;) {
      Interval d = branch(w.at(i)).derivative_range(r);
      lo *= d.lo;
      hi *= d.hi;
      r = branch(w.at(i)).map_region(r);
    }
    return {lo, hi};
  }

  // max over letters of sup |u_a'|; must be < 1.
  double contraction_sup() const {
    if (!s_max_) {
      double s = 0;
      for (int a = 0; a < letter_count(); ++a) s = std::max(s, branch(a).derivative_range(seed_).hi);
      s_max_ = s;
    }
    return *s_max_;
  }

  // Certified multiplicative constant for |u_w'(x)| <=> |u_w'(y)|: measured
  // worst ratio over words to depth 6 times a safety factor of 2.
  double distortion_constant() const {
    if (!k_bd_) {
      double worst = 1;
      int m = letter_count();
      int depth = 6;
      // Full enumeration only while it stays small; random words otherwise.
      double total = std::pow(static_cast<double>(m), depth);
      if (total <= 4096) {
        Word w;
        enumerate_distortion(w, depth, worst);
      } else {
        Rng rng(0x9e3779b9);
        for (int trial = 0; trial < 2000; ++trial) {
          Word w;
          int len = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(depth)));
          for (int i = 0; i < len; ++i) w = w.append(static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(m))));
          Interval d = derivative_bounds(w);
          if (d.lo > 0) worst = std::max(worst, d.hi / d.lo);
        }
      }
      k_bd_ = 2 * worst;
    }
    return *k_bd_;
  }

  ValidationReport validate() const {
    ValidationReport rep;
    double s = contraction_sup();
    rep.s_max = s;
    rep.contraction_ok = s < 1 - 1e-12;
    rep.items.push_back({"uniform_contraction", rep.contraction_ok, s, "sup over letters of sup|u'|"});

    if (truncated_infinite_) {
      bool trend = true;
      double first = branch(0).derivative_range(seed_).hi;
      double prev = first;
      for (int a = 1; a < letter_count(); ++a) {
        double cur = branch(a).derivative_range(seed_).hi;
        if (cur > prev + 1e-12) trend = false;
        prev = cur;
      }
      trend = trend && prev <= first / 4;
      rep.items.push_back({"contraction_vanishes_along_alphabet", trend, prev, "sup|u'| at the truncation level"});
    }

    bool inside = true;
    double worst_excess = 0;
    for (int a = 0; a < letter_count(); ++a) {
      if (!branch(a).map_region(seed_).contained_in(seed_, 1e-12)) {
        inside = false;
        worst_excess = std::max(worst_excess, 1.0);
      }
    }
    rep.maps_into_seed_ok = inside;
    rep.items.push_back({"maps_into_seed", inside, worst_excess, "u_a(X) inside X, exact region check"});

    double kbd = distortion_constant();
    rep.distortion_constant = kbd;
    rep.items.push_back({"bounded_distortion", kbd < 1e6, kbd, "certified sup ratio of |u_w'| over the seed, depth <= 6"});

    // Level-1 separation, exact pairwise gaps.
    double min_gap = std::numeric_limits<double>::infinity();
    double worst_overlap = 0;
    for (int a = 0; a < letter_count(); ++a) {
      Region ra = branch(a).map_region(seed_);
      for (int b = a + 1; b < letter_count(); ++b) {
        Region rb = branch(b).map_region(seed_);
        double gap = signed_gap(ra, rb);
        min_gap = std::min(min_gap, gap);
        worst_overlap = std::max(worst_overlap, -gap);
      }
    }
    rep.open_set_condition = worst_overlap <= 1e-12;
    rep.strong_separation = min_gap > 1e-12;
    rep.items.push_back({"open_set_condition", rep.open_set_condition, worst_overlap > 0 ? -worst_overlap : 0.0,
                         "min signed gap of level-1 images"});
    rep.items.push_back({"strong_separation", rep.strong_separation, min_gap, "min pairwise gap of level-1 images"});

    bool cone = seed_.kind == Region::Kind::Box || seed_.kind == Region::Kind::Disk;
    rep.items.push_back({"cone_condition", cone, 0, "seed is a box or disk"});
    return rep;
  }

 private:
  void enumerate_distortion(Word& w, int remaining, double& worst) const {
    if (!w.empty()) {
      Interval d = derivative_bounds(w);
      if (d.lo > 0) worst = std::max(worst, d.hi / d.lo);
    }
    if (remaining == 0) return;
    for (int a = 0; a < letter_count(); ++a) {
      Word wa = w.append(a);
      enumerate_distortion(wa, remaining - 1, worst);
    }
  }

  // Negative when interiors overlap, zero when touching.
  static double signed_gap(const Region& a, const Region& b) {
    if (a.kind == Region::Kind::Disk && b.kind == Region::Kind::Disk)
      return dist(a.center, b.center) - a.radius - b.radius;
    if (a.kind == Region::Kind::Box && b.kind == Region::Kind::Box) {
      double g = -std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < a.lo.size(); ++i) g = std::max(g, std::max(b.lo[i] - a.hi[i], a.lo[i] - b.hi[i]));
      return g;
    }
    const Region& box = a.kind == Region::Kind::Box ? a : b;
    const Region& dsk = a.kind == Region::Kind::Box ? b : a;
    return box.dist_range(dsk.center).lo - dsk.radius;
  }

  int dim_;
  Region seed_;
  std::vector<BranchMap> branches_;
  std::string name_;
  bool truncated_infinite_;
  mutable std::optional<double> s_max_;
  mutable std::optional<double> k_bd_;
};

// Exact fixed point of u_w for contracting affine compositions: the coding
// image of the periodic sequence www... with no truncation error.  Empty for
// branch kinds whose compositions are not affine.
inline std::optional<Vec> periodic_fixed_point(const CifsSystem& sys, const Word& w) {
  if (w.empty()) return std::nullopt;
  for (size_t i = 0; i < w.length(); ++i)
    if (sys.branch(w.at(i)).kind != BranchMap::Kind::Similarity) return std::nullopt;
  // build T = u_{w_1} o ... o u_{w_n} by appending letters on the right:
  // T <- T o u_a means x -> scale * (s x + t) + offset
  if (sys.dim() == 1) {
    double scale = 1, offset = 0;
    for (size_t i = 0; i < w.length(); ++i) {
      const BranchMap& u = sys.branch(w.at(i));
      double s = (u.reflect ? -1.0 : 1.0) * u.ratio;
      offset = scale * u.translation[0] + offset;
      scale = scale * s;
    }
    return Vec{offset / (1 - scale)};
  }
  if (sys.dim() == 2) {
    Complex scale{1, 0}, offset{0, 0};
    for (size_t i = 0; i < w.length(); ++i) {
      const BranchMap& u = sys.branch(w.at(i));
      if (u.reflect) return std::nullopt;  // antiholomorphic cycles need a different solve
      Complex s = std::polar(u.ratio, u.rotation);
      Complex t{u.translation[0], u.translation[1]};
      offset = scale * t + offset;
      scale = scale * s;
    }
    return to_vec(offset / (Complex{1, 0} - scale));
  }
  // axis-aligned similarities in higher dimension
  Vec scale(static_cast<size_t>(sys.dim()), 1.0), offset(static_cast<size_t>(sys.dim()), 0.0);
  for (size_t i = 0; i < w.length(); ++i) {
    const BranchMap& u = sys.branch(w.at(i));
    if (u.rotation != 0 || u.reflect) return std::nullopt;
    for (size_t j = 0; j < scale.size(); ++j) {
      offset[j] = scale[j] * u.translation[j] + offset[j];
      scale[j] = scale[j] * u.ratio;
    }
  }
  Vec x(scale.size());
  for (size_t j = 0; j < scale.size(); ++j) x[j] = offset[j] / (1 - scale[j]);
  return x;
}

// --- Stock systems used across tests and bundled configs ---

inline CifsSystem make_similarity_1d(const std::vector<double>& ratios, const std::vector<double>& translations,
                                     std::string name = "similarity_1d") {
  std::vector<BranchMap> b;
  for (size_t i = 0; i < ratios.size(); ++i) b.push_back(BranchMap::similarity(ratios[i], Vec{translations[i]}));
  return CifsSystem(1, Region::interval(0, 1), std::move(b), std::move(name));
}

// {x/3, x/3 + 2/3} on [0,1].
inline CifsSystem make_middle_thirds() { return make_similarity_1d({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3}, "cantor"); }

// {x/2, x/2 + 1/2}: images touch at 1/2; the coding of x -> 2x.
inline CifsSystem make_touching_binary() { return make_similarity_1d({0.5, 0.5}, {0.0, 0.5}, "binary_full"); }

// Two maps of ratio 1/4 with a gap; dimension 1/2.
inline CifsSystem make_quarter_pair() { return make_similarity_1d({0.25, 0.25}, {0.0, 0.75}, "quarter_pair"); }

// Truncation of the continued-fraction family x -> 1/(a+x).  first_letter = 2
// keeps uniform contraction (sup|u_1'| = 1 on [0,1]).
inline CifsSystem make_gauss_system(int first_letter, int count, std::string name = "gauss") {
  std::vector<BranchMap> b;
  for (int a = first_letter; a < first_letter + count; ++a) b.push_back(BranchMap::gauss(a));
  return CifsSystem(1, Region::interval(0, 1), std::move(b), std::move(name), /*truncated_infinite=*/true);
}

// Three loxodromic-flavoured Moebius maps sending the unit disk into three
// separated sub-disks; twists chosen so no line or circle is invariant.
inline CifsSystem make_schottky_demo() {
  auto disk_map = [](Complex target, double scale, Complex twist) {
    // z -> target + scale * (z + twist)/(conj(twist) z + 1): a disk
    // automorphism followed by a contraction and translation.
    Complex a = scale + target * std::conj(twist);
    Complex b = scale * twist + target;
    Complex c = std::conj(twist);
    Complex d = Complex{1, 0};
    return BranchMap::moebius(a, b, c, d);
  };
  std::vector<BranchMap> b;
  double r = 0.55;
  b.push_back(disk_map(Complex{r, 0}, 0.22, Complex{0.30, 0.15}));
  b.push_back(disk_map(Complex{-r / 2, r * 0.8660254037844386}, 0.22, Complex{-0.10, 0.25}));
  b.push_back(disk_map(Complex{-r / 2, -r * 0.8660254037844386}, 0.22, Complex{0.05, -0.35}));
  return CifsSystem(2, Region::disk(Vec{0, 0}, 1.0), std::move(b), "schottky_demo");
}

}  // namespace fracdioph

#endif  // FRACDIOPH_CIFS_HPP
