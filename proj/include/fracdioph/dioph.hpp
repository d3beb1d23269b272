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

#ifndef FRACDIOPH_DIOPH_HPP
#define FRACDIOPH_DIOPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdioph/geometry.hpp"
#include "fracdioph/measure.hpp"
#include "fracdioph/parallel.hpp"
#include "fracdioph/rng.hpp"
#include "fracdioph/thermo.hpp"

namespace fracdioph {

// One record-setting rational approximation p/q to a point of R^d.
struct Approximant {
  int64_t q = 0;
  std::vector<int64_t> p;
  double err_sup = 0;   // sup-norm of x - p/q
  double err_prod = 0;  // product of per-coordinate errors
};

// Brute-force oracle: for q = 1..Q_max round each coordinate and keep the
// entries whose sup-norm error sets a new record.  Per-coordinate rounding is
// optimal for the sup norm, so the record list realizes the best errors.
inline std::vector<Approximant> best_approx(const Vec& x, int64_t q_max) {
  if (q_max < 1) throw std::invalid_argument("best_approx: q_max must be >= 1");
  for (double c : x)
    if (!std::isfinite(c)) throw std::invalid_argument("best_approx: non-finite coordinate");
  std::vector<Approximant> records;
  double best = std::numeric_limits<double>::infinity();
  for (int64_t q = 1; q <= q_max; ++q) {
    double sup = 0, prod = 1;
    std::vector<int64_t> p(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      double target = static_cast<double>(q) * x[i];
      p[i] = static_cast<int64_t>(std::llround(target));
      double err = std::abs(x[i] - static_cast<double>(p[i]) / static_cast<double>(q));
      sup = std::max(sup, err);
      prod *= err;
    }
    if (sup < best) {
      best = sup;
      records.push_back({q, std::move(p), sup, prod});
      if (sup == 0) break;  // exact rational hit
    }
  }
  return records;
}

struct OmegaEstimate {
  double omega_hat = 0;       // Theil-Sen slope of -log err against log q
  double omega_mult_hat = 0;  // same with the multiplicative error
  double omega_peak = 0;      // max single-record exponent; monotone in Q_max
  bool exact_hit = false;     // a record hit the point exactly
  int records_used = 0;
};

namespace detail {

// Median of pairwise slopes.  Record errors carry multiplicative noise from
// the partial-quotient sizes; the median is insensitive to the handful of
// records a near-rational drags away, where a least-squares fit is not.
inline double theil_sen_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> slopes;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (xs[j] != xs[i]) slopes.push_back((ys[j] - ys[i]) / (xs[j] - xs[i]));
  if (slopes.empty()) return 0;
  std::sort(slopes.begin(), slopes.end());
  size_t n = slopes.size();
  return n % 2 ? slopes[n / 2] : 0.5 * (slopes[n / 2 - 1] + slopes[n / 2]);
}

}  // namespace detail

// Exponent-of-irrationality estimators from a record list.  The limsup is
// approached through record errors err_k ~ q_k^{-omega}.  Only records that
// are best approximations of the second kind (q * err strictly decreasing)
// enter the fit: in one dimension those are exactly the continued-fraction
// convergents, and dropping the intermediate-fraction runs removes their
// flat-q/collapsing-error pairs, which would otherwise dominate a slope
// estimate.  The pairwise-median slope of -log err against log q is then
// insensitive to the handful of outlier records a near-rational leaves.
// Exact hits are flagged infinite; q = 1 records carry no slope information.
inline OmegaEstimate omega_from_records(const std::vector<Approximant>& records) {
  OmegaEstimate est;
  std::vector<double> lq, le_sup, le_prod;
  double best_second_kind = std::numeric_limits<double>::infinity();
  for (const Approximant& a : records) {
    if (a.err_sup == 0) {
      est.exact_hit = true;
      break;
    }
    double second_kind = static_cast<double>(a.q) * a.err_sup;
    bool improves = second_kind < best_second_kind;
    if (improves) best_second_kind = second_kind;
    if (a.q < 2) continue;
    est.omega_peak = std::max(est.omega_peak, -std::log(a.err_sup) / std::log(static_cast<double>(a.q)));
    if (!improves) continue;
    lq.push_back(std::log(static_cast<double>(a.q)));
    le_sup.push_back(-std::log(a.err_sup));
    le_prod.push_back(a.err_prod > 0 ? -std::log(a.err_prod) : le_sup.back());
  }
  est.records_used = static_cast<int>(lq.size());
  if (est.exact_hit) {
    est.omega_hat = std::numeric_limits<double>::infinity();
    est.omega_mult_hat = std::numeric_limits<double>::infinity();
    est.omega_peak = std::numeric_limits<double>::infinity();
    return est;
  }
  if (lq.size() >= 2) {
    est.omega_hat = detail::theil_sen_slope(lq, le_sup);
    est.omega_mult_hat = detail::theil_sen_slope(lq, le_prod);
  } else if (lq.size() == 1) {
    est.omega_hat = est.omega_peak;
    est.omega_mult_hat = le_prod[0] / lq[0];
  }
  // The pigeonhole bounds omega >= 1 + 1/d and omega_x >= d + 1 hold for
  // every point, so clamping removes only provably impossible outputs.
  if (!records.empty() && est.records_used > 0) {
    double d = static_cast<double>(records.front().p.size());
    est.omega_hat = std::max(est.omega_hat, 1 + 1 / d);
    est.omega_mult_hat = std::max(est.omega_mult_hat, d + 1);
  }
  return est;
}

inline OmegaEstimate omega_estimate(const Vec& x, int64_t q_max) { return omega_from_records(best_approx(x, q_max)); }

struct ContinuedFraction {
  std::vector<int64_t> quotients;    // partial quotients a_1, a_2, ...
  std::vector<int64_t> p;            // convergent numerators
  std::vector<int64_t> q;            // convergent denominators
  bool terminated = false;           // x indistinguishable from a rational
};

// Standard continued fraction of x in (0,1): x = 1/(a_1 + 1/(a_2 + ...)).
inline ContinuedFraction continued_fraction(double x, int n_terms) {
  if (!(x > 0 && x < 1)) throw std::invalid_argument("continued_fraction: x must be in (0,1)");
  ContinuedFraction cf;
  long double y = x;
  int64_t p_prev = 1, q_prev = 0;  // p_0 = 0, q_0 = 1 with the inverted start
  int64_t p_cur = 0, q_cur = 1;
  for (int k = 0; k < n_terms; ++k) {
    long double inv = 1.0L / y;
    int64_t a = static_cast<int64_t>(std::floor(inv));
    if (a < 1) a = 1;
    // overflow guard for the recurrence
    if (q_cur > (std::numeric_limits<int64_t>::max() - q_prev) / std::max<int64_t>(a, 1)) break;
    int64_t p_next = a * p_cur + p_prev;
    int64_t q_next = a * q_cur + q_prev;
    cf.quotients.push_back(a);
    cf.p.push_back(p_next);
    cf.q.push_back(q_next);
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    long double frac = inv - static_cast<long double>(a);
    if (frac < 1e-14L) {
      cf.terminated = true;
      break;
    }
    y = frac;
  }
  return cf;
}

struct DiophReport {
  Vec x;
  int64_t q_max = 0;
  std::vector<Approximant> records;
  OmegaEstimate omega;
  bool vwa_flag = false;   // omega_hat above 1 + 1/d by the margin used
  bool vwma_flag = false;  // omega_mult_hat above d + 1 by the margin used
  double margin = 0;
};

// The flags compare the estimated exponents against the very-well-approximable
// thresholds with a margin absorbing finite-Q_max estimator noise (the
// exponents are clamped at the pigeonhole floor, so a zero margin would flag
// everything).
inline DiophReport dioph_report(const Vec& x, int64_t q_max, double margin = 0.25) {
  DiophReport rep;
  rep.x = x;
  rep.q_max = q_max;
  rep.records = best_approx(x, q_max);
  rep.omega = omega_from_records(rep.records);
  double d = static_cast<double>(x.size());
  rep.margin = margin;
  rep.vwa_flag = rep.omega.omega_hat > 1 + 1.0 / d + margin;
  rep.vwma_flag = rep.omega.omega_mult_hat > d + 1 + margin;
  return rep;
}

struct ExtremalitySummary {
  int n_points = 0;
  int64_t q_max = 0;
  int exact_hits = 0;
  double median_omega = 0;
  std::vector<double> margins;
  std::vector<double> exceed_fraction;  // per margin, share with omega_hat > 1 + 1/d + margin
  double noise_floor = 0;               // max coding error radius of the sample
  bool downgraded = false;              // coding error too coarse for this q_max
  std::vector<double> omegas;           // per sampled point (inf for exact hits)
  std::vector<Vec> points;
};

// Samples points of the pushforward measure by following cylinder weights and
// coding, then scans each for its irrationality exponent.  A sample is only
// trustworthy when the coding error radius is far below the finest rational
// spacing probed, so the error floor is reported and the run is downgraded
// when it cannot be met.
inline ExtremalitySummary extremality_experiment(const GibbsWeights& gw, int n_points, int64_t q_max, uint64_t seed,
                                                 std::vector<double> margins = {0.1, 0.25, 0.5}, int threads = 0) {
  const CifsSystem& sys = gw.system();
  double d = static_cast<double>(sys.dim());
  double target = std::pow(static_cast<double>(q_max), -(d + 2));
  int depth = auto_level(sys, target, 2048);
  ExtremalitySummary sum;
  sum.n_points = n_points;
  sum.q_max = q_max;
  sum.margins = std::move(margins);
  sum.omegas.assign(static_cast<size_t>(n_points), 0.0);
  sum.points.assign(static_cast<size_t>(n_points), Vec());
  std::vector<double> radius(static_cast<size_t>(n_points), 0.0);
  std::vector<char> hit(static_cast<size_t>(n_points), 0);
  // per-point substreams: identical output for every thread count
  parallel_for(static_cast<size_t>(n_points), threads, [&](size_t i) {
    Rng rng = substream(seed, "extremality:" + std::to_string(i));
    Word w = gw.sample_word(depth, rng);
    Vec point;
    if (gw.mode() == GibbsWeights::Mode::PointMassPeriodic) {
      // atomic measures: evaluate the exact periodic point, no truncation
      std::optional<Vec> exact = periodic_fixed_point(sys, w.prefix(depth));
      if (exact) {
        point = *exact;
      } else {
        auto coded = sys.coding_point(w);
        point = coded.point;
        radius[i] = coded.error_radius;
      }
    } else {
      auto coded = sys.coding_point(w);
      point = coded.point;
      radius[i] = coded.error_radius;
    }
    OmegaEstimate est = omega_estimate(point, q_max);
    if (est.exact_hit) hit[i] = 1;
    sum.omegas[i] = est.omega_hat;
    sum.points[i] = point;
  });
  double worst_radius = 0;
  for (int i = 0; i < n_points; ++i) {
    worst_radius = std::max(worst_radius, radius[static_cast<size_t>(i)]);
    if (hit[static_cast<size_t>(i)]) ++sum.exact_hits;
  }
  sum.noise_floor = worst_radius;
  sum.downgraded = worst_radius > target;
  std::vector<double> sorted = sum.omegas;
  std::sort(sorted.begin(), sorted.end());
  sum.median_omega = sorted.empty() ? 0 : sorted[sorted.size() / 2];
  for (double m : sum.margins) {
    int count = 0;
    for (double o : sum.omegas)
      if (o > 1 + 1.0 / d + m) ++count;
    sum.exceed_fraction.push_back(n_points ? static_cast<double>(count) / n_points : 0);
  }
  return sum;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_DIOPH_HPP
