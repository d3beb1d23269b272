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

#ifndef FRACDIOPH_GEOMETRY_HPP
#define FRACDIOPH_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdioph {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double dist(const Vec& a, const Vec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Affine hyperplane {x : <normal, x> = offset} with unit normal.
// In dimension 1 this degenerates to a point.
struct Hyperplane {
  Vec normal;
  double offset = 0;

  Hyperplane() = default;
  Hyperplane(Vec n, double c) : normal(std::move(n)), offset(c) {
    double nn = norm(normal);
    if (std::abs(nn - 1.0) > 1e-12) {
      if (nn == 0) throw std::invalid_argument("Hyperplane: zero normal");
      for (auto& v : normal) v /= nn;
      offset /= nn;
    }
  }

  static Hyperplane point1d(double c) { return Hyperplane(Vec{1.0}, c); }

  double signed_dist(const Vec& x) const { return dot(normal, x) - offset; }
};

// A hyperplane or a geometric sphere; the surfaces quantified in the global
// decay inequality.
struct GeneralizedSphere {
  enum class Kind { Plane, Sphere };
  Kind kind = Kind::Plane;
  Hyperplane plane;
  Vec center;        // sphere
  double radius = 0;  // sphere, > 0

  static GeneralizedSphere from_plane(Hyperplane h) {
    GeneralizedSphere s;
    s.kind = Kind::Plane;
    s.plane = std::move(h);
    return s;
  }
  static GeneralizedSphere from_sphere(Vec c, double r) {
    if (!(r > 0)) throw std::invalid_argument("GeneralizedSphere: radius must be > 0");
    GeneralizedSphere s;
    s.kind = Kind::Sphere;
    s.center = std::move(c);
    s.radius = r;
    return s;
  }

  double dist_to(const Vec& x) const {
    if (kind == Kind::Plane) return std::abs(plane.signed_dist(x));
    return std::abs(dist(x, center) - radius);
  }

  std::string to_string() const {
    std::string s = kind == Kind::Plane ? "plane[n=(" : "sphere[c=(";
    const Vec& v = kind == Kind::Plane ? plane.normal : center;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    s += "),";
    s += std::to_string(kind == Kind::Plane ? plane.offset : radius);
    return s + "]";
  }
};

// Closed interval of reals, used for ranges of scalar functions over regions.
struct Interval {
  double lo = 0, hi = 0;
};

// A cylinder's certified enclosure: an axis-aligned box or a disk/ball.
// Branch maps transport these exactly (per branch kind), which keeps region
// enclosures monotone under word extension.
struct Region {
  enum class Kind { Box, Disk };
  Kind kind = Kind::Box;
  Vec lo, hi;     // box corners
  Vec center;     // disk
  double radius = 0;

  static Region box(Vec lo_, Vec hi_) {
    Region r;
    r.kind = Kind::Box;
    r.lo = std::move(lo_);
    r.hi = std::move(hi_);
    for (size_t i = 0; i < r.lo.size(); ++i)
      if (r.lo[i] > r.hi[i]) throw std::invalid_argument("Region: inverted box");
    return r;
  }
  static Region interval(double a, double b) { return box(Vec{a}, Vec{b}); }
  static Region disk(Vec c, double r_) {
    if (r_ < 0) throw std::invalid_argument("Region: negative radius");
    Region r;
    r.kind = Kind::Disk;
    r.center = std::move(c);
    r.radius = r_;
    return r;
  }

  size_t dim() const { return kind == Kind::Box ? lo.size() : center.size(); }

  double diameter() const {
    if (kind == Kind::Disk) return 2 * radius;
    double s = 0;
    for (size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(s);
  }

  Vec center_point() const {
    if (kind == Kind::Disk) return center;
    Vec c(lo.size());
    for (size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }

  // Range of <n, x> for x in the region (n unit).
  Interval dot_range(const Vec& n) const {
    if (kind == Kind::Disk) {
      double c = dot(n, center);
      return {c - radius, c + radius};
    }
    double a = 0, b = 0;
    for (size_t i = 0; i < lo.size(); ++i) {
      if (n[i] >= 0) {
        a += n[i] * lo[i];
        b += n[i] * hi[i];
      } else {
        a += n[i] * hi[i];
        b += n[i] * lo[i];
      }
    }
    return {a, b};
  }

  // Range of ||x - p|| for x in the region.
  Interval dist_range(const Vec& p) const {
    if (kind == Kind::Disk) {
      double u = dist(center, p);
      return {std::max(0.0, u - radius), u + radius};
    }
    double near2 = 0, far2 = 0;
    for (size_t i = 0; i < lo.size(); ++i) {
      double nearest = std::max({lo[i] - p[i], p[i] - hi[i], 0.0});
      near2 += nearest * nearest;
      double farthest = std::max(std::abs(p[i] - lo[i]), std::abs(p[i] - hi[i]));
      far2 += farthest * farthest;
    }
    return {std::sqrt(near2), std::sqrt(far2)};
  }

  // Range of dist(x, S) for x in the region.
  Interval surface_dist_range(const GeneralizedSphere& s) const {
    if (s.kind == GeneralizedSphere::Kind::Plane) {
      Interval t = dot_range(s.plane.normal);
      double a = t.lo - s.plane.offset, b = t.hi - s.plane.offset;
      if (a <= 0 && b >= 0) return {0.0, std::max(-a, b)};
      double lo_ = std::min(std::abs(a), std::abs(b));
      double hi_ = std::max(std::abs(a), std::abs(b));
      return {lo_, hi_};
    }
    Interval u = dist_range(s.center);
    double a = u.lo - s.radius, b = u.hi - s.radius;
    if (a <= 0 && b >= 0) return {0.0, std::max(-a, b)};
    return {std::min(std::abs(a), std::abs(b)), std::max(std::abs(a), std::abs(b))};
  }

  bool intersects_ball(const Vec& x, double rho) const { return dist_range(x).lo <= rho; }
  bool inside_ball(const Vec& x, double rho) const { return dist_range(x).hi <= rho; }

  // Closed thickening membership; exact touching counts as intersecting.
  bool intersects_thickening(const GeneralizedSphere& s, double width) const {
    return surface_dist_range(s).lo <= width;
  }
  bool inside_thickening(const GeneralizedSphere& s, double width) const {
    return surface_dist_range(s).hi <= width;
  }

  bool contains_point(const Vec& x, double tol = 0.0) const {
    if (kind == Kind::Disk) return dist(x, center) <= radius + tol;
    for (size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
    return true;
  }

  // Whether this region is contained in `outer` (same or mixed kinds).
  bool contained_in(const Region& outer, double tol = 0.0) const {
    if (outer.kind == Kind::Disk) {
      if (kind == Kind::Disk) return dist(center, outer.center) + radius <= outer.radius + tol;
      Interval r = dist_range(outer.center);
      return r.hi <= outer.radius + tol;
    }
    if (kind == Kind::Box) {
      for (size_t i = 0; i < lo.size(); ++i)
        if (lo[i] < outer.lo[i] - tol || hi[i] > outer.hi[i] + tol) return false;
      return true;
    }
    for (size_t i = 0; i < center.size(); ++i)
      if (center[i] - radius < outer.lo[i] - tol || center[i] + radius > outer.hi[i] + tol) return false;
    return true;
  }

  // Separation between two regions (0 when they touch or overlap); exact for
  // box/box and disk/disk, a lower bound for mixed kinds.
  double gap_to(const Region& other) const {
    if (kind == Kind::Disk && other.kind == Kind::Disk)
      return std::max(0.0, dist(center, other.center) - radius - other.radius);
    if (kind == Kind::Box && other.kind == Kind::Box) {
      double s = 0;
      for (size_t i = 0; i < lo.size(); ++i) {
        double g = std::max({other.lo[i] - hi[i], lo[i] - other.hi[i], 0.0});
        s += g * g;
      }
      return std::sqrt(s);
    }
    const Region& b = kind == Kind::Box ? *this : other;
    const Region& d = kind == Kind::Box ? other : *this;
    return std::max(0.0, b.dist_range(d.center).lo - d.radius);
  }
};

}  // namespace fracdioph

#endif  // FRACDIOPH_GEOMETRY_HPP
