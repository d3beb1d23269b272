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

#ifndef FRACDIOPH_MEASURE_HPP
#define FRACDIOPH_MEASURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdioph/geometry.hpp"
#include "fracdioph/rng.hpp"
#include "fracdioph/thermo.hpp"

namespace fracdioph {

namespace detail {

// Composable exact form of u_{w_1} o ... o u_{w_n}, extended one letter at a
// time on the right.  Keeps deep descents O(1) per node: 1d branches compose
// as real Moebius transforms, planar ones as complex Moebius transforms with
// a conjugation parity, axis-aligned similarities as per-axis affine maps.
class PathWalker {
 public:
  static PathWalker root(const CifsSystem& sys) {
    PathWalker p;
    p.sys_ = &sys;
    if (sys.dim() == 1) {
      p.kind_ = Kind::Moebius1d;
      p.m1_ = {1, 0, 0, 1};
    } else if (axis_affine(sys)) {
      p.kind_ = Kind::AffineNd;
      p.scale_.assign(static_cast<size_t>(sys.dim()), 1.0);
      p.offset_.assign(static_cast<size_t>(sys.dim()), 0.0);
    } else {
      p.kind_ = Kind::Moebius2d;
      p.ca_ = {1, 0};
      p.cb_ = {0, 0};
      p.cc_ = {0, 0};
      p.cd_ = {1, 0};
      p.conj_parity_ = false;
    }
    return p;
  }

  PathWalker extend(int letter) const {
    const BranchMap& u = sys_->branch(letter);
    PathWalker p = *this;
    ++p.depth_;
    switch (kind_) {
      case Kind::Moebius1d: {
        // u as a real Moebius matrix, composed on the right.
        double a, b, c, d;
        if (u.kind == BranchMap::Kind::Gauss1d) {
          a = 0;
          b = 1;
          c = 1;
          d = static_cast<double>(u.letter);
        } else {
          a = (u.reflect ? -1.0 : 1.0) * u.ratio;
          b = u.translation[0];
          c = 0;
          d = 1;
        }
        p.m1_ = {m1_[0] * a + m1_[1] * c, m1_[0] * b + m1_[1] * d, m1_[2] * a + m1_[3] * c,
                 m1_[2] * b + m1_[3] * d};
        return p;
      }
      case Kind::AffineNd: {
        for (size_t i = 0; i < scale_.size(); ++i) {
          p.offset_[i] = offset_[i] + scale_[i] * u.translation[i];
          p.scale_[i] = scale_[i] * u.ratio;
        }
        return p;
      }
      case Kind::Moebius2d: {
        Complex a, b, c, d;
        bool uconj = false;
        if (u.kind == BranchMap::Kind::Moebius) {
          a = u.ma;
          b = u.mb;
          c = u.mc;
          d = u.md;
        } else {
          a = std::polar(u.ratio, u.rotation);
          b = Complex{u.translation[0], u.translation[1]};
          c = {0, 0};
          d = {1, 0};
          uconj = u.reflect;
        }
        if (conj_parity_) {
          a = std::conj(a);
          b = std::conj(b);
          c = std::conj(c);
          d = std::conj(d);
        }
        p.ca_ = ca_ * a + cb_ * c;
        p.cb_ = ca_ * b + cb_ * d;
        p.cc_ = cc_ * a + cd_ * c;
        p.cd_ = cc_ * b + cd_ * d;
        p.conj_parity_ = conj_parity_ != uconj;
        return p;
      }
    }
    throw std::logic_error("PathWalker: bad kind");
  }

  int depth() const { return depth_; }

  // Exact image of the seed under the composed map.
  Region region() const {
    const Region& seed = sys_->seed();
    switch (kind_) {
      case Kind::Moebius1d: {
        double lo = eval1(seed.lo[0]), hi = eval1(seed.hi[0]);
        double den_lo = m1_[2] * seed.lo[0] + m1_[3], den_hi = m1_[2] * seed.hi[0] + m1_[3];
        if (den_lo * den_hi <= 0) throw std::domain_error("PathWalker: pole inside interval");
        if (lo > hi) std::swap(lo, hi);
        return Region::interval(lo, hi);
      }
      case Kind::AffineNd: {
        Vec lo(scale_.size()), hi(scale_.size());
        for (size_t i = 0; i < scale_.size(); ++i) {
          double a = scale_[i] * seed.lo[i] + offset_[i];
          double b = scale_[i] * seed.hi[i] + offset_[i];
          lo[i] = std::min(a, b);
          hi[i] = std::max(a, b);
        }
        return Region::box(std::move(lo), std::move(hi));
      }
      case Kind::Moebius2d: {
        Complex c0 = to_complex(seed.center);
        if (conj_parity_) c0 = std::conj(c0);
        double r0 = seed.radius;
        if (std::abs(cc_) < 1e-300) {
          Complex scale = ca_ / cd_;
          return Region::disk(to_vec(scale * c0 + cb_ / cd_), std::abs(scale) * r0);
        }
        Complex eta = (cb_ * cc_ - ca_ * cd_) / cc_;
        Complex vc = cc_ * c0 + cd_;
        double vr = std::abs(cc_) * r0;
        double denom = std::norm(vc) - vr * vr;
        if (denom <= 0) throw std::domain_error("PathWalker: pole inside disk");
        return Region::disk(to_vec(ca_ / cc_ + eta * std::conj(vc) / denom), std::abs(eta) * vr / denom);
      }
    }
    throw std::logic_error("PathWalker: bad kind");
  }

  double diameter() const { return region().diameter(); }

 private:
  enum class Kind { Moebius1d, AffineNd, Moebius2d };

  static bool axis_affine(const CifsSystem& sys) {
    if (sys.seed().kind != Region::Kind::Box) return false;
    for (int a = 0; a < sys.letter_count(); ++a) {
      const BranchMap& b = sys.branch(a);
      if (b.kind != BranchMap::Kind::Similarity || b.rotation != 0 || b.reflect) return false;
    }
    return true;
  }

  double eval1(double x) const { return (m1_[0] * x + m1_[1]) / (m1_[2] * x + m1_[3]); }

  const CifsSystem* sys_ = nullptr;
  Kind kind_ = Kind::Moebius1d;
  int depth_ = 0;
  std::array<double, 4> m1_{1, 0, 0, 1};      // 1d Moebius [a b; c d]
  Vec scale_, offset_;                         // AffineNd
  Complex ca_, cb_, cc_, cd_;                  // 2d Moebius
  bool conj_parity_ = false;
};

}  // namespace detail

struct MassBracket {
  double lower = 0;
  double upper = 0;
  int level = 0;

  double mid() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

// What a mass query is restricted to: an optional closed ball, an optional
// closed surface thickening, and an optional cylinder-union event E.
struct MassTarget {
  std::optional<Vec> ball_center;
  double ball_radius = 0;
  std::optional<GeneralizedSphere> surface;
  double surface_width = 0;
  std::vector<Word> e_union;  // empty means the full space

  static MassTarget ball(Vec x, double rho) {
    MassTarget t;
    t.ball_center = std::move(x);
    t.ball_radius = rho;
    return t;
  }
  MassTarget& with_surface(GeneralizedSphere s, double width) {
    surface = std::move(s);
    surface_width = width;
    return *this;
  }
  static MassTarget thickening(GeneralizedSphere s, double width) {
    MassTarget t;
    t.surface = std::move(s);
    t.surface_width = width;
    return t;
  }
};

namespace detail {

struct MassDescent {
  const GibbsWeights* gw;
  const MassTarget* target;
  int max_level;
  double lower = 0, upper = 0;

  // e_candidates: members of the E union this node's word can still reach;
  // e_inside: the word already extends a member.
  void descend(const Word& w, const PathWalker& walker, double weight, bool e_inside,
               const std::vector<const Word*>& e_candidates) {
    if (weight <= 0) return;
    if (!e_inside && e_candidates.empty()) return;
    Region r = walker.region();

    bool in_ball = true, meets_ball = true;
    if (target->ball_center) {
      Interval d = r.dist_range(*target->ball_center);
      meets_ball = d.lo <= target->ball_radius;
      in_ball = d.hi <= target->ball_radius;
    }
    if (!meets_ball) return;
    bool in_surf = true, meets_surf = true;
    if (target->surface) {
      Interval d = r.surface_dist_range(*target->surface);
      meets_surf = d.lo <= target->surface_width;
      in_surf = d.hi <= target->surface_width;
    }
    if (!meets_surf) return;

    if (in_ball && in_surf && e_inside) {
      lower += weight;
      upper += weight;
      return;
    }
    if (walker.depth() >= max_level) {
      upper += weight;
      return;
    }
    std::vector<double> cp = gw->child_probs(w);
    for (size_t a = 0; a < cp.size(); ++a) {
      if (cp[a] <= 0) continue;
      Word wa = w.append(static_cast<int32_t>(a));
      bool child_inside = e_inside;
      std::vector<const Word*> child_cands;
      if (!child_inside) {
        for (const Word* e : e_candidates) {
          if (e->length() <= wa.length()) {
            if (e->is_prefix_of(wa)) {
              child_inside = true;
              break;
            }
          } else if (wa.is_prefix_of(*e)) {
            child_cands.push_back(e);
          }
        }
      }
      descend(wa, walker.extend(static_cast<int>(a)), weight * cp[a], child_inside, child_cands);
    }
  }
};

}  // namespace detail

// Bracketed mu-mass of the target set via cylinder covers.  The lower side
// counts cylinders certified inside, the upper side adds every cylinder that
// may touch; the gap shrinks with the level.
inline MassBracket mass_estimate(const GibbsWeights& gw, const MassTarget& target, int max_level) {
  if (max_level < 0 || max_level > 4096) throw std::invalid_argument("mass_estimate: level out of range");
  detail::MassDescent d{&gw, &target, max_level};
  std::vector<const Word*> cands;
  bool inside = target.e_union.empty();
  for (const Word& e : target.e_union) {
    if (e.empty()) inside = true;
    cands.push_back(&e);
  }
  Word w;
  d.descend(w, detail::PathWalker::root(gw.system()), 1.0, inside, cands);
  return {d.lower, std::min(d.upper, 1.0), max_level};
}

// Smallest level whose cylinder diameter certifiably drops below `width`.
inline int auto_level(const CifsSystem& sys, double width, int cap = 256) {
  double s = sys.contraction_sup();
  double diam = sys.seed_diameter();
  if (width >= diam) return 1;
  int lvl = static_cast<int>(std::ceil(std::log(width / diam) / std::log(s)));
  return std::max(1, std::min(cap, lvl));
}

// mu(closed ball B(x,rho)).
inline MassBracket ball_mass(const GibbsWeights& gw, const Vec& x, double rho, int level) {
  if (!(rho > 0)) throw std::invalid_argument("ball_mass: rho must be > 0");
  return mass_estimate(gw, MassTarget::ball(x, rho), level);
}

// mu(closed thickening of L at `width`, intersected with B(x,rho)).
inline MassBracket neighborhood_mass(const GibbsWeights& gw, const GeneralizedSphere& surface, double width,
                                     const Vec& x, double rho, int level) {
  if (!(rho > 0)) throw std::invalid_argument("neighborhood_mass: rho must be > 0");
  MassTarget t = MassTarget::ball(x, rho);
  t.with_surface(surface, width);
  return mass_estimate(gw, t, level);
}

struct LocalDimensionFit {
  double slope = 0;
  double residual = 0;
  int points_used = 0;
};

// Least-squares slope of log mass against log rho.
inline LocalDimensionFit local_dimension(const GibbsWeights& gw, const Vec& x, const std::vector<double>& rho_grid) {
  std::vector<double> lx, ly;
  for (double rho : rho_grid) {
    int level = auto_level(gw.system(), rho * 1e-3);
    MassBracket m = ball_mass(gw, x, rho, level);
    if (m.lower <= 0) continue;
    lx.push_back(std::log(rho));
    ly.push_back(std::log(m.mid()));
  }
  if (lx.size() < 2) throw std::domain_error("local_dimension: undefined, masses vanish along the grid");
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icept = (sy - slope * sx) / n;
  double rss = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    double e = ly[i] - (icept + slope * lx[i]);
    rss += e * e;
  }
  return {slope, std::sqrt(rss / n), static_cast<int>(lx.size())};
}

struct FedererReport {
  double worst_ratio = 0;
  int probes = 0;
  int skipped = 0;  // zero lower bracket at the small radius
  Vec worst_center;
  double worst_rho = 0;
};

// Worst bracket-safe doubling ratio mu(B(x,K rho)) / mu(B(x,rho)).
inline FedererReport federer_check(const GibbsWeights& gw, double K, const std::vector<Vec>& centers,
                                   const std::vector<double>& rho_grid) {
  if (!(K > 1)) throw std::invalid_argument("federer_check: K must be > 1");
  FedererReport rep;
  for (const Vec& x : centers) {
    for (double rho : rho_grid) {
      int level = auto_level(gw.system(), rho * 1e-3);
      MassBracket small = ball_mass(gw, x, rho, level);
      if (small.lower <= 0) {
        ++rep.skipped;
        continue;
      }
      MassBracket big = ball_mass(gw, x, K * rho, level);
      double ratio = big.upper / small.lower;
      ++rep.probes;
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_center = x;
        rep.worst_rho = rho;
      }
    }
  }
  return rep;
}

enum class DecayMode { Absolute, Quasi, Decaying };

struct DecayProbe {
  Vec center;
  double rho = 0;
  double beta = 0;
  GeneralizedSphere surface;
  double width = 0;      // the thickening actually used
  double mass_in = 0;    // upper bracket
  double mass_ball = 0;  // lower bracket
  int level = 0;
};

struct DecayFitReport {
  double c1 = 1;
  double alpha = 0;
  double goodness_of_fit = 0;
  double gamma = 0;  // quasi regime exponent, 0 otherwise
  DecayMode mode = DecayMode::Absolute;
  std::string grid_description;
  std::vector<DecayProbe> probes;
  size_t worst_probe = 0;  // index of the probe pair attaining alpha
  int violations = 0;
  int degenerate = 0;
};

struct DecayProbeSpec {
  std::vector<Vec> centers;
  std::vector<double> rho_grid;
  std::vector<double> beta_grid;             // absolute / decaying modes
  double gamma = 0.5;                        // quasi mode: beta = rho^{gamma * 2^j}
  std::vector<GeneralizedSphere> surfaces;
  std::vector<Word> e_union;                 // exceptional-set restriction; empty = full space
};

namespace detail {

// Upper bound on sup{dist(y, L) : y in B(x,rho) and y in Supp(mu)}.
inline double support_spread(const GibbsWeights& gw, const GeneralizedSphere& surface, const Vec& x, double rho,
                             int level) {
  struct Scan {
    const GibbsWeights* gw;
    const GeneralizedSphere* surface;
    const Vec* x;
    double rho;
    int max_level;
    double spread = 0;
    void rec(const Word& w, const PathWalker& walker, double weight) {
      if (weight <= 0) return;
      Region r = walker.region();
      Interval d = r.dist_range(*x);
      if (d.lo > rho) return;
      if (walker.depth() >= max_level || d.hi <= rho) {
        spread = std::max(spread, r.surface_dist_range(*surface).hi);
        return;
      }
      std::vector<double> cp = gw->child_probs(w);
      for (size_t a = 0; a < cp.size(); ++a) {
        if (cp[a] <= 0) continue;
        Word wa = w.append(static_cast<int32_t>(a));
        rec(wa, walker.extend(static_cast<int>(a)), weight * cp[a]);
      }
    }
  };
  Scan s{&gw, &surface, &x, rho, level};
  Word w;
  s.rec(w, PathWalker::root(gw.system()), 1.0);
  return s.spread;
}

}  // namespace detail

// Envelope fit of the decay inequality: for each probe family the thickening
// mass ratio is measured on the beta grid, alpha is the infimum of the
// log-log difference slopes between consecutive betas, and C1 is the matching
// intercept.  Every probe then satisfies mass_in <= C1 beta^alpha mass_ball
// by construction; `violations` re-checks that.
inline DecayFitReport decay_fit(const GibbsWeights& gw, DecayMode mode, const DecayProbeSpec& spec) {
  DecayFitReport rep;
  rep.mode = mode;
  rep.gamma = mode == DecayMode::Quasi ? spec.gamma : 0.0;
  double alpha = std::numeric_limits<double>::infinity();
  size_t worst = 0;

  for (const Vec& x : spec.centers) {
    for (double rho : spec.rho_grid) {
      for (const GeneralizedSphere& surface : spec.surfaces) {
        std::vector<double> betas = spec.beta_grid;
        if (mode == DecayMode::Quasi) {
          betas = {std::pow(rho, spec.gamma), std::pow(rho, 2 * spec.gamma), std::pow(rho, 4 * spec.gamma)};
        }
        if (betas.empty()) throw std::invalid_argument("decay_fit: empty beta grid");
        // the cover must resolve well below the thinnest window or the upper
        // bracket picks up boundary cylinders of the same order as the mass
        double min_width = rho;
        for (double b : betas) min_width = std::min(min_width, b * rho);
        int level = auto_level(gw.system(), std::max(min_width * 1e-3, 1e-280));
        MassBracket ball = ball_mass(gw, x, rho, level);
        if (ball.lower <= 0) {
          ++rep.degenerate;
          continue;
        }
        double spread = 1;
        if (mode == DecayMode::Decaying) spread = detail::support_spread(gw, surface, x, rho, level);
        size_t first_idx = rep.probes.size();
        for (double beta : betas) {
          double width = mode == DecayMode::Decaying ? beta * spread : beta * rho;
          MassTarget target = MassTarget::ball(x, rho);
          target.with_surface(surface, width);
          target.e_union = spec.e_union;
          MassBracket in = mass_estimate(gw, target, level);
          DecayProbe p;
          p.center = x;
          p.rho = rho;
          p.beta = beta;
          p.surface = surface;
          p.width = width;
          p.mass_in = in.upper;
          p.mass_ball = ball.lower;
          p.level = level;
          rep.probes.push_back(p);
        }
        for (size_t i = first_idx + 1; i < rep.probes.size(); ++i) {
          const DecayProbe& p0 = rep.probes[i - 1];
          const DecayProbe& p1 = rep.probes[i];
          if (p0.mass_in <= 0 || p1.mass_in <= 0) continue;
          double num = std::log(p1.mass_in / p1.mass_ball) - std::log(p0.mass_in / p0.mass_ball);
          double den = std::log(p1.beta) - std::log(p0.beta);
          if (den == 0) continue;
          double slope = num / den;
          if (slope < alpha) {
            alpha = slope;
            worst = i;
          }
        }
      }
    }
  }
  if (rep.probes.empty()) throw std::domain_error("decay_fit: every probe degenerated");
  if (!std::isfinite(alpha)) alpha = 0;  // no informative pair: all masses vanished
  rep.alpha = alpha;
  rep.worst_probe = worst;
  double c1 = 0;
  for (const DecayProbe& p : rep.probes) {
    if (p.mass_in <= 0) continue;
    c1 = std::max(c1, (p.mass_in / p.mass_ball) / std::pow(p.beta, alpha));
  }
  rep.c1 = std::max(c1, 1e-300);
  double rss = 0;
  int npts = 0;
  for (const DecayProbe& p : rep.probes) {
    if (p.mass_in <= 0) continue;
    double e = std::log(p.mass_in / p.mass_ball) - (std::log(rep.c1) + alpha * std::log(p.beta));
    rss += e * e;
    ++npts;
    if (p.mass_in > rep.c1 * std::pow(p.beta, alpha) * p.mass_ball * (1 + 1e-9)) ++rep.violations;
  }
  rep.goodness_of_fit = npts ? std::sqrt(rss / npts) : 0;
  return rep;
}

struct GlobalDecayReport {
  double exponent = 0;
  size_t worst_surface = 0;
  bool reducibility_flag = false;  // some surface keeps full mass at every beta
  std::vector<double> per_surface_exponent;
  std::vector<std::vector<double>> masses;  // [surface][beta], upper brackets
};

// Envelope fit of log mu(thickening(L, beta)) against log beta over a family
// of surfaces; a surface whose mass never drops below 1 is the reducibility
// witness.
inline GlobalDecayReport global_decay_scan(const GibbsWeights& gw, const std::vector<GeneralizedSphere>& surfaces,
                                           const std::vector<double>& beta_grid) {
  if (surfaces.empty()) throw std::invalid_argument("global_decay_scan: no surfaces");
  GlobalDecayReport rep;
  rep.exponent = std::numeric_limits<double>::infinity();
  for (size_t si = 0; si < surfaces.size(); ++si) {
    std::vector<double> ms;
    for (double beta : beta_grid) {
      int level = auto_level(gw.system(), beta * 1e-2);
      ms.push_back(mass_estimate(gw, MassTarget::thickening(surfaces[si], beta), level).upper);
    }
    rep.masses.push_back(ms);
    double se = std::numeric_limits<double>::infinity();
    bool all_full = true;
    for (size_t i = 0; i + 1 < ms.size(); ++i) {
      if (ms[i] < 0.999) all_full = false;
      if (ms[i] <= 0 || ms[i + 1] <= 0) continue;
      double den = std::log(beta_grid[i + 1]) - std::log(beta_grid[i]);
      if (den == 0) continue;
      se = std::min(se, (std::log(ms[i + 1]) - std::log(ms[i])) / den);
    }
    if (!ms.empty() && ms.back() < 0.999) all_full = false;
    if (all_full) {
      se = 0;
      rep.reducibility_flag = true;
    }
    rep.per_surface_exponent.push_back(std::isfinite(se) ? se : std::numeric_limits<double>::quiet_NaN());
    if (std::isfinite(se) && se < rep.exponent) {
      rep.exponent = se;
      rep.worst_surface = si;
    }
  }
  if (!std::isfinite(rep.exponent)) rep.exponent = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

struct EscapeConfig {
  double kappa = 0;   // in (0,1)
  int r = 1;          // look-ahead depth, >= 1
  std::string g_description = "all finite words";
  int k = 0;          // escape count used by a check
  double rho = 0;     // scale used by a check
};

namespace detail {

// Exact d=1 minimum, over all points c, of the mu_omega-mass of depth-r
// descendants whose interval avoids [c - halfwidth, c + halfwidth].
inline double min_avoid_mass_1d(const std::vector<std::pair<Interval, double>>& children, double halfwidth) {
  struct Event {
    double pos;
    int type;  // 0 = start (counts first), 1 = end
    double mass;
  };
  std::vector<Event> ev;
  double total = 0;
  for (const auto& [iv, m] : children) {
    ev.push_back({iv.lo - halfwidth, 0, m});
    ev.push_back({iv.hi + halfwidth, 1, m});
    total += m;
  }
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.type < b.type;
  });
  double cur = 0, best = 0;
  for (const Event& e : ev) {
    if (e.type == 0) {
      cur += e.mass;
      best = std::max(best, cur);
    } else {
      cur -= e.mass;
    }
  }
  return total - best;
}

inline void collect_descendants(const GibbsWeights& gw, const Word& w, const PathWalker& walker, double mass,
                                int remaining, std::vector<std::pair<Region, double>>& out) {
  if (mass <= 0) return;
  if (remaining == 0) {
    out.emplace_back(walker.region(), mass);
    return;
  }
  std::vector<double> cp = gw.child_probs(w);
  for (size_t a = 0; a < cp.size(); ++a) {
    if (cp[a] <= 0) continue;
    Word wa = w.append(static_cast<int32_t>(a));
    collect_descendants(gw, wa, walker.extend(static_cast<int>(a)), mass * cp[a], remaining - 1, out);
  }
}

}  // namespace detail

struct KappaSearchReport {
  std::optional<EscapeConfig> config;
  double best_kappa = 0;
  int r_used = 0;
  int words_probed = 0;
  bool reducibility_warning = false;
};

// Searches the dyadic grid for the largest kappa such that for every probed
// cylinder w (up to depth_max) and every tested hyperplane, the conditional
// mass of depth-(|w|+r) descendants staying clear of the kappa D_w
// neighborhood is at least kappa.  In dimension one the worst hyperplane
// position is computed exactly by an interval sweep.
inline KappaSearchReport kappa_r_search(const GibbsWeights& gw, int r_max, int depth_max = 4,
                                        int surface_samples = 64, uint64_t seed = 1) {
  const CifsSystem& sys = gw.system();
  KappaSearchReport rep;
  std::vector<std::pair<Word, detail::PathWalker>> probes;
  {
    std::vector<std::pair<Word, detail::PathWalker>> frontier{{Word(), detail::PathWalker::root(sys)}};
    probes = frontier;
    for (int d = 0; d < depth_max; ++d) {
      std::vector<std::pair<Word, detail::PathWalker>> next;
      for (auto& [w, walker] : frontier) {
        std::vector<double> cp = gw.child_probs(w);
        for (size_t a = 0; a < cp.size(); ++a) {
          if (cp[a] <= 0) continue;
          next.emplace_back(w.append(static_cast<int32_t>(a)), walker.extend(static_cast<int>(a)));
        }
      }
      probes.insert(probes.end(), next.begin(), next.end());
      frontier = std::move(next);
      if (probes.size() > 4096) break;
    }
  }
  rep.words_probed = static_cast<int>(probes.size());

  for (int r = 1; r <= r_max && !rep.config; ++r) {
    for (int ke = 1; ke <= 12; ++ke) {
      double kappa = std::pow(0.5, ke);
      bool ok = true;
      for (auto& [w, walker] : probes) {
        double dw = walker.diameter();
        std::vector<std::pair<Region, double>> desc;
        detail::collect_descendants(gw, w, walker, 1.0, r, desc);
        if (desc.empty()) {
          ok = false;
          break;
        }
        double worst_avoid;
        if (sys.dim() == 1) {
          std::vector<std::pair<Interval, double>> children;
          for (auto& [reg, m] : desc) children.push_back({{reg.lo[0], reg.hi[0]}, m});
          worst_avoid = detail::min_avoid_mass_1d(children, kappa * dw);
        } else {
          worst_avoid = std::numeric_limits<double>::infinity();
          Rng rng = substream(seed, "kappa_search:" + w.to_string());
          auto try_plane = [&](const Hyperplane& h) {
            GeneralizedSphere plane = GeneralizedSphere::from_plane(h);
            double avoid = 0;
            for (auto& [reg, m] : desc)
              if (reg.surface_dist_range(plane).lo > kappa * dw) avoid += m;
            worst_avoid = std::min(worst_avoid, avoid);
          };
          // lines through every pair of descendant centers catch invariant
          // hyperplanes exactly (the reducible case)
          for (size_t i = 0; i < desc.size() && desc.size() <= 64; ++i)
            for (size_t j = i + 1; j < desc.size(); ++j) {
              Vec ci = desc[i].first.center_point(), cj = desc[j].first.center_point();
              Vec dir{cj[0] - ci[0], cj[1] - ci[1]};
              double len = norm(dir);
              if (len < 1e-14) continue;
              Vec n{-dir[1] / len, dir[0] / len};
              try_plane(Hyperplane(n, dot(n, ci)));
            }
          for (int si = 0; si < surface_samples; ++si) {
            double angle = 2 * 3.14159265358979323846 * rng.next_double();
            Vec n{std::cos(angle), std::sin(angle)};
            double off;
            if (si % 2 == 0 && !desc.empty()) {
              const Region& target = desc[static_cast<size_t>(rng.next_below(desc.size()))].first;
              off = dot(n, target.center_point());
            } else {
              Interval range = walker.region().dot_range(n);
              off = range.lo + (range.hi - range.lo) * rng.next_double();
            }
            try_plane(Hyperplane(std::move(n), off));
          }
        }
        if (worst_avoid < kappa) {
          ok = false;
          break;
        }
      }
      if (ok) {
        EscapeConfig cfg;
        cfg.kappa = kappa;
        cfg.r = r;
        rep.config = cfg;
        rep.best_kappa = kappa;
        rep.r_used = r;
        break;
      }
    }
  }
  rep.reducibility_warning = !rep.config.has_value();
  return rep;
}

struct EscapeCheckResult {
  double observed = 0;
  double bound = 0;   // (1 - kappa)^k
  double sigma = 0;   // binomial standard error at the bound
  int trials = 0;
  bool pass = false;
};

// Monte Carlo check of the escape inequality: under the conditional measure
// on [w], the event {pi(tau) within kappa rho of L and tau in E(|w|, rho, k)}
// has frequency at most (1-kappa)^k plus three standard errors.
inline EscapeCheckResult escape_bound_check(const GibbsWeights& gw, const EscapeConfig& cfg,
                                            const GeneralizedSphere& surface, const Word& w, int trials,
                                            uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("escape_bound_check: needs at least 100 trials");
  if (!(cfg.kappa > 0 && cfg.kappa < 1) || cfg.k < 0 || cfg.rho <= 0)
    throw std::invalid_argument("escape_bound_check: bad config");
  const CifsSystem& sys = gw.system();
  detail::PathWalker base = detail::PathWalker::root(sys);
  for (size_t i = 0; i < w.length(); ++i) base = base.extend(w.at(i));

  Rng rng = substream(seed, "escape:" + w.to_string() + ":" + std::to_string(cfg.k));
  // diameters computed in floating point sit a few ulp off exact level
  // boundaries; counting "D >= rho" with a hair of slack keeps boundary
  // levels in, which can only enlarge the tested event
  double rho_floor = cfg.rho * (1 - 1e-9);
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    Word tau = w;
    detail::PathWalker walker = base;
    int count = walker.diameter() >= rho_floor ? 1 : 0;  // i = |w| term
    // extend until the diameter certifiably drops below rho and the coding
    // error is negligible next to the thickening width
    double target = std::min(cfg.rho * 1e-3, cfg.kappa * cfg.rho * 1e-3);
    while (walker.diameter() > target && walker.depth() < 4096) {
      int32_t a = gw.sample_child(tau, rng);
      tau = tau.append(a);
      walker = walker.extend(static_cast<int>(a));
      if (walker.diameter() >= rho_floor) ++count;
    }
    Region r = walker.region();
    bool near = r.surface_dist_range(surface).lo <= cfg.kappa * cfg.rho;
    if (near && count >= cfg.k) ++hits;
  }
  EscapeCheckResult res;
  res.observed = static_cast<double>(hits) / trials;
  res.bound = std::pow(1 - cfg.kappa, cfg.k);
  res.sigma = std::sqrt(res.bound * (1 - res.bound) / trials);
  res.trials = trials;
  res.pass = res.observed <= res.bound + 3 * res.sigma;
  return res;
}

// The dimension-zero failure ratio mu(B(x, rho^2) cap E) / (rho^alpha
// mu(B(x,rho))), evaluated bracket-safely from below.
inline double dimension_zero_ratio(const GibbsWeights& gw, const Vec& x, double rho, double alpha,
                                   const std::vector<Word>& e_union = {}) {
  int level_num = auto_level(gw.system(), rho * rho * 1e-2, 512);
  int level_den = auto_level(gw.system(), rho * 1e-2, 512);
  MassTarget num = MassTarget::ball(x, rho * rho);
  num.e_union = e_union;
  MassBracket mnum = mass_estimate(gw, num, level_num);
  MassBracket mden = ball_mass(gw, x, rho, level_den);
  if (mden.upper <= 0) return std::numeric_limits<double>::infinity();
  return mnum.lower / (std::pow(rho, alpha) * mden.upper);
}

}  // namespace fracdioph

#endif  // FRACDIOPH_MEASURE_HPP
