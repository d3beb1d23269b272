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

#ifndef FRACDIOPH_TORAL_HPP
#define FRACDIOPH_TORAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdioph/rational.hpp"
#include "fracdioph/transport.hpp"

namespace fracdioph {

using RatPoint = std::vector<Rational>;  // torus point, coordinates in [0,1)

struct IntMatrix {
  int d = 1;
  std::vector<int64_t> a;  // row-major

  static IntMatrix identity(int d) {
    IntMatrix m;
    m.d = d;
    m.a.assign(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) m.a[static_cast<size_t>(i) * d + i] = 1;
    return m;
  }
  int64_t at(int i, int j) const { return a[static_cast<size_t>(i) * d + j]; }

  // Parses "2" or "2,1;1,1".
  static IntMatrix parse(const std::string& s) {
    IntMatrix m;
    std::vector<std::vector<int64_t>> rows(1);
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) {
        rows.back().push_back(std::stoll(cur));
        cur.clear();
      }
    };
    for (char c : s) {
      if (c == ',') {
        flush();
      } else if (c == ';') {
        flush();
        rows.emplace_back();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur.push_back(c);
      }
    }
    flush();
    m.d = static_cast<int>(rows.size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != m.d) throw std::invalid_argument("IntMatrix: ragged matrix");
      for (int64_t v : r) m.a.push_back(v);
    }
    return m;
  }
};

struct ToralSystem {
  IntMatrix m;
  int d = 1;
  std::vector<std::complex<double>> eigenvalues;
  double min_unit_circle_gap = 0;  // min over eigenvalues of ||lambda| - 1|
  bool expanding = false;          // all |lambda| > 1
  double contraction = 0;          // 1 / min |lambda| when expanding
};

namespace detail {

// Characteristic polynomial by Faddeev-LeVerrier, exact over rationals.
// Returns monic coefficients c so that char(t) = t^d + c[0] t^{d-1} + ... + c[d-1].
inline std::vector<Rational> char_poly(const IntMatrix& m) {
  int d = m.d;
  std::vector<std::vector<Rational>> mk(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
  std::vector<std::vector<Rational>> a = mk;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rational(m.at(i, j));
  std::vector<Rational> c(static_cast<size_t>(d));
  mk = a;
  for (int k = 1; k <= d; ++k) {
    Rational tr(0);
    for (int i = 0; i < d; ++i) tr = tr + mk[static_cast<size_t>(i)][static_cast<size_t>(i)];
    Rational ck = -(tr / Rational(k));
    c[static_cast<size_t>(k - 1)] = ck;
    if (k == d) break;
    // M_{k+1} = A (M_k + c_k I)
    auto t = mk;
    for (int i = 0; i < d; ++i) t[static_cast<size_t>(i)][static_cast<size_t>(i)] = t[static_cast<size_t>(i)][static_cast<size_t>(i)] + ck;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s(0);
        for (int l = 0; l < d; ++l) s = s + a[static_cast<size_t>(i)][static_cast<size_t>(l)] * t[static_cast<size_t>(l)][static_cast<size_t>(j)];
        mk[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
      }
  }
  return c;
}

// Durand-Kerner on a monic polynomial with the given trailing coefficients.
inline std::vector<std::complex<double>> poly_roots(const std::vector<Rational>& coeffs) {
  int d = static_cast<int>(coeffs.size());
  std::vector<std::complex<double>> c(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = coeffs[static_cast<size_t>(i)].to_double();
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v{1, 0};
    for (int i = 0; i < d; ++i) v = v * z + c[static_cast<size_t>(i)];
    return v;
  };
  std::vector<std::complex<double>> z(static_cast<size_t>(d));
  std::complex<double> w{0.4, 0.9};
  std::complex<double> p{1, 0};
  for (int i = 0; i < d; ++i) {
    p *= w;
    z[static_cast<size_t>(i)] = p;
  }
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> den{1, 0};
      for (int j = 0; j < d; ++j)
        if (j != i) den *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      std::complex<double> step = eval(z[static_cast<size_t>(i)]) / den;
      z[static_cast<size_t>(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

}  // namespace detail

// Accepts an integer matrix whose eigenvalues all avoid the unit circle;
// rejects singular and non-hyperbolic matrices, naming the offender.
inline ToralSystem validate_hyperbolic(const IntMatrix& m) {
  ToralSystem sys;
  sys.m = m;
  sys.d = m.d;
  std::vector<Rational> cp = detail::char_poly(m);
  Rational det = cp.back();
  if (m.d % 2 == 1) det = -det;  // det = (-1)^d * c_d
  if (det.is_zero()) throw std::domain_error("validate_hyperbolic: singular matrix");
  sys.eigenvalues = detail::poly_roots(cp);
  sys.min_unit_circle_gap = 1e300;
  sys.expanding = true;
  for (auto lambda : sys.eigenvalues) {
    double gap = std::abs(std::abs(lambda) - 1.0);
    sys.min_unit_circle_gap = std::min(sys.min_unit_circle_gap, gap);
    if (std::abs(lambda) <= 1) sys.expanding = false;
    if (gap < 1e-9)
      throw std::domain_error("validate_hyperbolic: eigenvalue with modulus " + std::to_string(std::abs(lambda)) +
                              " sits on the unit circle");
  }
  double min_mod = 1e300;
  for (auto lambda : sys.eigenvalues) min_mod = std::min(min_mod, std::abs(lambda));
  sys.contraction = sys.expanding ? 1.0 / min_mod : 0.0;
  return sys;
}

inline RatPoint reduce_mod1(const RatPoint& x) {
  RatPoint y;
  y.reserve(x.size());
  for (const Rational& c : x) y.push_back(c.mod1());
  return y;
}

inline RatPoint apply_matrix(const IntMatrix& m, const RatPoint& x) {
  RatPoint y(static_cast<size_t>(m.d));
  for (int i = 0; i < m.d; ++i) {
    Rational s(0);
    for (int j = 0; j < m.d; ++j) s = s + Rational(m.at(i, j)) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

// (x, Tx, ..., T^{N-1}x) reduced into [0,1)^d; exact.
inline std::vector<RatPoint> orbit(const ToralSystem& sys, const RatPoint& x, int n) {
  if (n < 1) throw std::invalid_argument("orbit: N must be >= 1");
  std::vector<RatPoint> out;
  out.reserve(static_cast<size_t>(n));
  RatPoint cur = reduce_mod1(x);
  for (int i = 0; i < n; ++i) {
    out.push_back(cur);
    if (i + 1 < n) cur = reduce_mod1(apply_matrix(sys.m, cur));
  }
  return out;
}

// Euclidean distance on the torus between exact points, as a double.
inline double torus_dist(const RatPoint& a, const RatPoint& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double c = circle_dist(a[i], b[i]).to_double();
    s += c * c;
  }
  return std::sqrt(s);
}

// Uniformly weighted atomic measure on the torus.
struct OrbitMeasure {
  int d = 1;
  std::vector<RatPoint> atoms;

  static OrbitMeasure from_orbit(const ToralSystem& sys, const RatPoint& x, int n) {
    OrbitMeasure mu;
    mu.d = sys.d;
    mu.atoms = orbit(sys, x, n);
    return mu;
  }
};

struct ShadowResult {
  RatPoint y;             // exact periodic point
  int period = 0;         // N: T^N y = y exactly
  int m = 0;              // specification window dropped at the end
  double shadow_quality = 0;   // max over i <= N-m-1 of dist(T^i x, T^i y)
  double quality_bound = 0;    // sqrt(d) * contraction^m (normal matrices)
};

// Periodic shadow of an orbit segment for an expanding endomorphism: record
// the integer translations v_i = M x_i - x_{i+1} along the exact orbit, wrap
// them periodically, and solve (M^N - I) y = sum M^{N-1-i} v_i in exact
// rational arithmetic.  The atoms of the resulting orbit are all rational.
inline ShadowResult periodic_shadow(const ToralSystem& sys, const RatPoint& x0, int n, int m) {
  if (!sys.expanding)
    throw std::domain_error(
        "periodic_shadow: only expanding endomorphisms are supported; the general hyperbolic case needs "
        "stable/unstable shadowing");
  if (!(n > m && m >= 1)) throw std::invalid_argument("periodic_shadow: need N > m >= 1");
  int d = sys.d;
  std::vector<RatPoint> xs = orbit(sys, x0, n + 1);
  // v_i = M x_i - x_{i+1}, integer vectors.
  std::vector<RatPoint> vs;
  for (int i = 0; i < n; ++i) {
    RatPoint mx = apply_matrix(sys.m, xs[static_cast<size_t>(i)]);
    RatPoint v(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
      v[static_cast<size_t>(j)] = mx[static_cast<size_t>(j)] - xs[static_cast<size_t>(i + 1)][static_cast<size_t>(j)];
      if (!v[static_cast<size_t>(j)].is_integer()) throw std::logic_error("periodic_shadow: non-integer itinerary");
    }
    vs.push_back(std::move(v));
  }
  // w = sum_i M^{N-1-i} v_i via forward folding.
  RatPoint w = vs[0];
  for (int i = 1; i < n; ++i) {
    w = apply_matrix(sys.m, w);
    for (int j = 0; j < d; ++j) w[static_cast<size_t>(j)] = w[static_cast<size_t>(j)] + vs[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  // A = M^N - I over rationals.
  std::vector<std::vector<Rational>> mn(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
  for (int i = 0; i < d; ++i) mn[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(1);
  for (int step = 0; step < n; ++step) {
    std::vector<std::vector<Rational>> next(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s(0);
        for (int l = 0; l < d; ++l) s = s + Rational(sys.m.at(i, l)) * mn[static_cast<size_t>(l)][static_cast<size_t>(j)];
        next[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
      }
    mn = std::move(next);
  }
  for (int i = 0; i < d; ++i) mn[static_cast<size_t>(i)][static_cast<size_t>(i)] = mn[static_cast<size_t>(i)][static_cast<size_t>(i)] - Rational(1);
  RatPoint y0 = solve_linear(mn, w);
  ShadowResult res;
  res.y = reduce_mod1(y0);
  res.period = n;
  res.m = m;
  std::vector<RatPoint> ys = orbit(sys, res.y, n);
  double q = 0;
  for (int i = 0; i <= n - m - 1; ++i) q = std::max(q, torus_dist(xs[static_cast<size_t>(i)], ys[static_cast<size_t>(i)]));
  res.shadow_quality = q;
  res.quality_bound = std::sqrt(static_cast<double>(d)) * std::pow(sys.contraction, m);
  return res;
}

struct ColipResult {
  double lower = 0;
  double upper = 0;
  bool exact = false;
};

namespace detail {

inline double torus_dist_double(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double f = std::abs(a[i] - b[i]);
    f -= std::floor(f);
    f = std::min(f, 1 - f);
    s += f * f;
  }
  return std::sqrt(s);
}

}  // namespace detail

// Co-Lipschitz distance sup_f |int f dmu - int f dnu| over 1-Lipschitz
// f: X -> [-1,1].  On the circle the range constraint never binds (the torus
// has diameter 1/2), so the value is the exact circle W1 capped at 2.  In
// dimension two a greedy matching yields an upper bound and a family of
// distance-to-point witnesses a lower bound.
inline ColipResult colip_distance(const OrbitMeasure& mu, const OrbitMeasure& nu) {
  if (mu.atoms.empty() || nu.atoms.empty()) throw std::invalid_argument("colip_distance: empty measure");
  if (mu.atoms.size() > 10000 || nu.atoms.size() > 10000)
    throw std::invalid_argument("colip_distance: too many atoms");
  if (mu.d != nu.d) throw std::invalid_argument("colip_distance: dimension mismatch");
  ColipResult res;
  if (mu.d == 1) {
    std::vector<Rational> a, b;
    for (const auto& p : mu.atoms) a.push_back(p[0]);
    for (const auto& p : nu.atoms) b.push_back(p[0]);
    Rational w = w1_circle_exact(a, b);
    double v = std::min(w.to_double(), 2.0);
    res.lower = res.upper = v;
    res.exact = true;
    return res;
  }
  // double coordinates once, reused below
  auto to_dbl = [](const OrbitMeasure& m) {
    std::vector<std::vector<double>> pts;
    for (const auto& p : m.atoms) {
      std::vector<double> v;
      for (const auto& c : p) v.push_back(c.mod1().to_double());
      pts.push_back(std::move(v));
    }
    return pts;
  };
  std::vector<std::vector<double>> pa = to_dbl(mu), pb = to_dbl(nu);
  // Upper bound: greedy matching (equal uniform weights required).
  if (pa.size() != pb.size())
    throw std::invalid_argument("colip_distance: d >= 2 bound needs equal atom counts");
  std::vector<bool> used(pb.size(), false);
  double cost = 0;
  for (const auto& p : pa) {
    double best = 1e300;
    size_t bi = 0;
    for (size_t j = 0; j < pb.size(); ++j) {
      if (used[j]) continue;
      double dd = detail::torus_dist_double(p, pb[j]);
      if (dd < best) {
        best = dd;
        bi = j;
      }
    }
    used[bi] = true;
    cost += best;
  }
  res.upper = std::min(cost / static_cast<double>(pa.size()), 2.0);
  // Lower bound: witnesses f_p = dist(., p), 1-Lipschitz with range inside [-1,1].
  double lo = 0;
  auto probe = [&](const std::vector<double>& p) {
    double ma = 0, mb = 0;
    for (const auto& q : pa) ma += detail::torus_dist_double(p, q);
    for (const auto& q : pb) mb += detail::torus_dist_double(p, q);
    lo = std::max(lo, std::abs(ma / static_cast<double>(pa.size()) - mb / static_cast<double>(pb.size())));
  };
  for (const auto& p : pa) probe(p);
  for (const auto& p : pb) probe(p);
  res.lower = lo;
  return res;
}

struct LiouvilleMass {
  double in_mass = 0;      // fraction of atoms certified inside U_n
  double undecided = 0;    // fraction the precision could not decide
  int n = 0;
};

// Mass inside U_n, the union over rationals p/q (q >= n, representations not
// required to be reduced) of the open balls B(p/q, q^{-n}).  A rational atom
// is always inside: write it over a denominator that is a large enough
// multiple of its own.  Atoms carried at limited precision are scanned over
// the decidable range of q.
inline LiouvilleMass liouville_mass(const OrbitMeasure& nu, int n, double precision = 0.0) {
  if (n < 1) throw std::invalid_argument("liouville_mass: n must be >= 1");
  LiouvilleMass res;
  res.n = n;
  if (nu.atoms.empty()) throw std::invalid_argument("liouville_mass: empty measure");
  size_t inside = 0, undecided = 0;
  for (const RatPoint& atom : nu.atoms) {
    if (precision <= 0) {
      ++inside;  // exact rational atom
      continue;
    }
    // Precision-limited atom: scan q while the ball radius stays decidable.
    bool in = false, amb = false;
    for (int64_t q = n;; ++q) {
      double radius = std::pow(static_cast<double>(q), -n);
      if (radius <= 2 * precision) break;
      double d2 = 0;
      for (const Rational& c : atom) {
        double v = c.to_double();
        double nearest = std::round(v * static_cast<double>(q)) / static_cast<double>(q);
        d2 = std::max(d2, std::abs(v - nearest));
      }
      if (d2 < radius - precision) {
        in = true;
        break;
      }
      if (d2 <= radius + precision) amb = true;
    }
    if (in)
      ++inside;
    else if (amb)
      ++undecided;
  }
  res.in_mass = static_cast<double>(inside) / static_cast<double>(nu.atoms.size());
  res.undecided = static_cast<double>(undecided) / static_cast<double>(nu.atoms.size());
  return res;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_TORAL_HPP
