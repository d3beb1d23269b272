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

#ifndef FRACDIOPH_REPORTS_HPP
#define FRACDIOPH_REPORTS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracdioph/csv.hpp"
#include "fracdioph/dioph.hpp"
#include "fracdioph/measure.hpp"
#include "fracdioph/parallel.hpp"
#include "fracdioph/system_io.hpp"
#include "fracdioph/toral.hpp"

namespace fracdioph {

// The run layer shared by the CLI and the acceptance suite: every command
// produces CSV documents through these functions, so determinism checks can
// compare the emitted strings directly.

struct ReportBundle {
  std::vector<std::pair<std::string, CsvDoc>> files;  // (file name, document)

  CsvDoc& add(const std::string& name, uint64_t seed, const std::string& config_id,
              std::vector<std::string> columns) {
    CsvDoc doc;
    doc.seed = seed;
    doc.config_id = config_id;
    doc.columns = std::move(columns);
    files.emplace_back(name, std::move(doc));
    return files.back().second;
  }

  std::string concatenated() const {
    std::string s;
    for (const auto& [name, doc] : files) s += "== " + name + " ==\n" + doc.to_string();
    return s;
  }
};

// --- surface sampling (normals uniform on the sphere, offsets uniform over
// the seed's footprint; sphere centers uniform on the seed, radii
// log-uniform) ---

inline Vec sample_unit_normal(int dim, Rng& rng) {
  if (dim == 1) return {1.0};
  if (dim == 2) {
    double a = 2 * 3.14159265358979323846 * rng.next_double();
    return {std::cos(a), std::sin(a)};
  }
  while (true) {
    Vec v(static_cast<size_t>(dim));
    double n2 = 0;
    for (auto& c : v) {
      c = 2 * rng.next_double() - 1;
      n2 += c * c;
    }
    if (n2 > 1e-6 && n2 <= 1) {
      double n = std::sqrt(n2);
      for (auto& c : v) c /= n;
      return v;
    }
  }
}

inline GeneralizedSphere sample_hyperplane(const CifsSystem& sys, Rng& rng) {
  Vec n = sample_unit_normal(sys.dim(), rng);
  Interval range = sys.seed().dot_range(n);
  double off = range.lo + (range.hi - range.lo) * rng.next_double();
  return GeneralizedSphere::from_plane(Hyperplane(std::move(n), off));
}

inline Vec sample_seed_point(const CifsSystem& sys, Rng& rng) {
  const Region& s = sys.seed();
  if (s.kind == Region::Kind::Box) {
    Vec p(s.lo.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = s.lo[i] + (s.hi[i] - s.lo[i]) * rng.next_double();
    return p;
  }
  while (true) {
    Vec p(s.center.size());
    double n2 = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      p[i] = 2 * rng.next_double() - 1;
      n2 += p[i] * p[i];
    }
    if (n2 <= 1) {
      for (size_t i = 0; i < p.size(); ++i) p[i] = s.center[i] + s.radius * p[i];
      return p;
    }
  }
}

inline GeneralizedSphere sample_sphere_surface(const CifsSystem& sys, Rng& rng) {
  double diam = sys.seed_diameter();
  double lr = std::log(0.02 * diam) + (std::log(0.5 * diam) - std::log(0.02 * diam)) * rng.next_double();
  return GeneralizedSphere::from_sphere(sample_seed_point(sys, rng), std::exp(lr));
}

// mu-distributed sample points (symbolic sampling, then coding).
inline std::vector<Vec> sample_support_points(const GibbsWeights& gw, int count, int depth, uint64_t seed) {
  std::vector<Vec> pts(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = substream(seed, "support_point:" + std::to_string(i));
    Word w = gw.sample_word(depth, rng);
    pts[static_cast<size_t>(i)] = gw.system().coding_point(w).point;
  }
  return pts;
}

// --- validate ---

inline ReportBundle report_validate(const SystemConfig& cfg, uint64_t seed) {
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump());
  CsvDoc& doc = b.add("validate.csv", seed, id, {"axiom", "pass", "value", "witness"});
  ValidationReport rep = cfg.system->validate();
  for (const auto& item : rep.items) doc.add_row({item.axiom, item.pass ? "PASS" : "FAIL", fmt(item.value), item.witness});
  return b;
}

// --- dimension ---

inline ReportBundle report_dimension(const SystemConfig& cfg, int level, uint64_t seed) {
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump());
  CsvDoc& doc = b.add("dimension.csv", seed, id, {"quantity", "value", "error", "level"});
  BowenResult res = bowen_dimension(*cfg.system, level);
  double err = std::abs(res.pressure_residual) / std::log(1.0 / cfg.system->contraction_sup());
  doc.add_row({"bowen_dimension", fmt(res.delta), fmt(err), fmt(res.level)});
  return b;
}

// --- thermo ---

inline ReportBundle report_thermo(const SystemConfig& cfg, int level, int samples, uint64_t seed) {
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump());
  CsvDoc& doc = b.add("thermo.csv", seed, id, {"quantity", "value", "error", "level"});
  GibbsWeights gw = cfg.make_weights();
  // level sums enumerate m^n cylinders; cap n by the alphabet size
  int m = cfg.system->letter_count();
  int cap = std::max(1, static_cast<int>(std::log(4e6) / std::log(static_cast<double>(std::max(2, m)))));
  int lvl = std::min(level, cap);
  if (cfg.weight_kind == SystemConfig::WeightKind::Potential) {
    PressureEstimate pe = pressure(*cfg.system, cfg.potential, std::min(lvl, 6));
    doc.add_row({"pressure", fmt(pe.value), fmt(pe.upper - pe.lower), fmt(pe.level)});
  }
  try {
    BowenResult bd = bowen_dimension(*cfg.system, std::min(lvl, 6));
    doc.add_row({"bowen_dimension", fmt(bd.delta), fmt(std::abs(bd.pressure_residual)), fmt(bd.level)});
  } catch (const std::domain_error&) {
    doc.add_row({"bowen_dimension", "nan", "nan", fmt(lvl)});
  }
  ValueWithError h = entropy(gw, lvl);
  doc.add_row({"entropy", fmt(h.value), fmt(h.error), fmt(h.level)});
  Rng rng(seed);
  ValueWithError chi = lyapunov(gw, lvl + 12, samples, rng);
  doc.add_row({"lyapunov", fmt(chi.value), fmt(chi.error), fmt(chi.level)});
  if (chi.diverged) doc.add_row({"lyapunov_divergence_flag", "1", "0", fmt(chi.level)});
  if (chi.value > 0 && !chi.diverged) {
    Rng rng2(seed + 1);
    ValueWithError hof = hofbauer_dimension(gw, lvl, samples, rng2);
    doc.add_row({"hofbauer_dimension", fmt(hof.value), fmt(hof.error), fmt(hof.level)});
  }
  if (gw.tail_mass() > 0) doc.add_row({"truncation_tail_mass", fmt(gw.tail_mass()), "0", fmt(lvl)});
  doc.add_row({"gibbs_certificate", fmt(gw.gibbs_certificate()), "0", fmt(lvl)});
  return b;
}

// --- sample ---

inline ReportBundle report_sample(const SystemConfig& cfg, int count, int depth, uint64_t seed) {
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump());
  std::vector<std::string> cols{"id"};
  for (int i = 0; i < cfg.system->dim(); ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("error_radius");
  CsvDoc& doc = b.add("sample.csv", seed, id, cols);
  GibbsWeights gw = cfg.make_weights();
  for (int i = 0; i < count; ++i) {
    Rng rng = substream(seed, "sample:" + std::to_string(i));
    Word w = gw.sample_word(depth, rng);
    auto c = cfg.system->coding_point(w);
    std::vector<std::string> row{fmt(i)};
    for (double v : c.point) row.push_back(fmt(v));
    row.push_back(fmt(c.error_radius));
    doc.add_row(std::move(row));
  }
  return b;
}

// --- decay-fit ---

struct DecayRunConfig {
  DecayMode mode = DecayMode::Absolute;
  double gamma = 0.5;
  int n_centers = 8;
  int n_surfaces = 12;
  std::vector<double> rho_grid = {1.0 / 9, 1.0 / 27, 1.0 / 81};
  std::vector<double> beta_grid = {1e-3, 1e-7, 1e-11};
  bool adversarial_centers = true;  // add surfaces through sampled support points
};

inline ReportBundle report_decay_fit(const SystemConfig& cfg, const DecayRunConfig& run, uint64_t seed,
                                     DecayFitReport* out = nullptr) {
  GibbsWeights gw = cfg.make_weights();
  DecayProbeSpec spec;
  spec.gamma = run.gamma;
  spec.rho_grid = run.rho_grid;
  spec.beta_grid = run.beta_grid;
  // sampled centers must sit far closer to the support than the thinnest
  // probed window, or adversarial surfaces through them probe a gap
  double min_width = 1;
  for (double rho : run.rho_grid)
    for (double beta : run.beta_grid) min_width = std::min(min_width, beta * rho);
  if (run.mode == DecayMode::Quasi)
    for (double rho : run.rho_grid) min_width = std::min(min_width, rho * std::pow(rho, 4 * run.gamma));
  int depth = auto_level(*cfg.system, std::max(min_width * 1e-2, 1e-18));
  spec.centers = sample_support_points(gw, run.n_centers, depth, seed);
  Rng rng = substream(seed, "decay_surfaces");
  for (int i = 0; i < run.n_surfaces; ++i) spec.surfaces.push_back(sample_hyperplane(*cfg.system, rng));
  if (run.adversarial_centers) {
    for (const Vec& x : spec.centers) {
      Vec n = sample_unit_normal(cfg.system->dim(), rng);
      spec.surfaces.push_back(GeneralizedSphere::from_plane(Hyperplane(n, dot(n, x))));
    }
  }
  DecayFitReport rep = decay_fit(gw, run.mode, spec);
  if (out) *out = rep;

  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump() + "|decay");
  CsvDoc& probes = b.add("decay_probes.csv", seed, id,
                         {"rho", "beta", "width", "mass_in", "mass_ball", "level", "surface"});
  for (const DecayProbe& p : rep.probes)
    probes.add_row({fmt(p.rho), fmt(p.beta), fmt(p.width), fmt(p.mass_in), fmt(p.mass_ball), fmt(p.level),
                    p.surface.to_string()});
  CsvDoc& fit = b.add("decay_fit.csv", seed, id,
                      {"mode", "gamma", "c1", "alpha", "goodness", "violations", "probes", "degenerate"});
  std::string mode_name = run.mode == DecayMode::Absolute ? "absolute" : run.mode == DecayMode::Quasi ? "quasi" : "decaying";
  fit.add_row({mode_name, fmt(rep.gamma), fmt(rep.c1), fmt(rep.alpha), fmt(rep.goodness_of_fit),
               fmt(rep.violations), fmt(rep.probes.size()), fmt(rep.degenerate)});
  return b;
}

// --- global-decay ---

inline ReportBundle report_global_decay(const SystemConfig& cfg, int n_surfaces, std::vector<double> beta_grid,
                                        bool include_spheres, uint64_t seed, GlobalDecayReport* out = nullptr) {
  GibbsWeights gw = cfg.make_weights();
  std::vector<GeneralizedSphere> surfaces;
  Rng rng = substream(seed, "global_decay");
  for (int i = 0; i < n_surfaces; ++i) {
    if (include_spheres && i % 3 == 2)
      surfaces.push_back(sample_sphere_surface(*cfg.system, rng));
    else
      surfaces.push_back(sample_hyperplane(*cfg.system, rng));
  }
  GlobalDecayReport rep = global_decay_scan(gw, surfaces, beta_grid);
  if (out) *out = rep;
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump() + "|global");
  CsvDoc& doc = b.add("global_decay.csv", seed, id, {"surface", "exponent", "mass_at_min_beta"});
  for (size_t i = 0; i < surfaces.size(); ++i)
    doc.add_row({surfaces[i].to_string(), fmt(rep.per_surface_exponent[i]), fmt(rep.masses[i].back())});
  CsvDoc& sum = b.add("global_decay_fit.csv", seed, id, {"exponent", "worst_surface", "reducibility_flag"});
  sum.add_row({fmt(rep.exponent), fmt(rep.worst_surface), fmt(rep.reducibility_flag)});
  return b;
}

// --- escape-check ---

struct EscapeRunResult {
  EscapeConfig config;
  bool config_found = false;
  std::vector<EscapeCheckResult> checks;  // k = 1..k_max
};

inline ReportBundle report_escape(const SystemConfig& cfg, int r_max, int k_max, int trials, uint64_t seed,
                                  EscapeRunResult* out = nullptr) {
  GibbsWeights gw = cfg.make_weights();
  const CifsSystem& sys = *cfg.system;
  KappaSearchReport search = kappa_r_search(gw, r_max);
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump() + "|escape");
  CsvDoc& doc = b.add("escape_check.csv", seed, id,
                      {"kappa", "r", "k", "rho", "observed", "bound", "sigma", "pass", "trials"});
  EscapeRunResult run;
  run.config_found = search.config.has_value();
  if (!search.config) {
    doc.add_row({"nan", "0", "0", "0", "0", "0", "0", "0", "0"});
    if (out) *out = run;
    return b;
  }
  EscapeConfig base = *search.config;
  run.config = base;
  // Probe cylinder: depth-2 word (0,1) when available; the surface passes
  // through a genuine limit-set point deep inside it (the coding image of a
  // long extension), so the thickening carries mass and the bound is tested
  // with power.  Scales shrink geometrically so the escape count reaches k.
  Word w = sys.letter_count() >= 2 ? Word{0, 1} : Word{0, 0};
  Word deep = w;
  for (int i = 0; i < 60; ++i) deep = deep.append(0);
  Vec through = sys.coding_point(deep).point;
  GeneralizedSphere surface;
  if (sys.dim() == 1) {
    surface = GeneralizedSphere::from_plane(Hyperplane::point1d(through[0]));
  } else {
    Rng nrng = substream(seed, "escape_surface");
    Vec normal = sample_unit_normal(sys.dim(), nrng);
    surface = GeneralizedSphere::from_plane(Hyperplane(normal, dot(normal, through)));
  }
  double dw = sys.cylinder_diameter(w);
  double shrink = sys.contraction_sup();
  for (int k = 1; k <= k_max; ++k) {
    EscapeConfig ecfg = base;
    ecfg.k = k;
    ecfg.rho = dw * std::pow(shrink, k - 1);
    EscapeCheckResult res = escape_bound_check(gw, ecfg, surface, w, trials, seed);
    run.checks.push_back(res);
    doc.add_row({fmt(ecfg.kappa), fmt(ecfg.r), fmt(k), fmt(ecfg.rho), fmt(res.observed), fmt(res.bound),
                 fmt(res.sigma), fmt(res.pass), fmt(res.trials)});
  }
  if (out) *out = run;
  return b;
}

// --- omega ---

inline ReportBundle report_omega(const Vec& x, int64_t q_max, uint64_t seed, DiophReport* out = nullptr,
                                 double margin = 0.25) {
  DiophReport rep = dioph_report(x, q_max, margin);
  if (out) *out = rep;
  ReportBundle b;
  std::string xs;
  for (double c : x) xs += fmt(c) + ";";
  std::string id = config_hash_hex("omega|" + xs + "|" + std::to_string(q_max));
  CsvDoc& recs = b.add("omega_records.csv", seed, id, {"q", "p", "err_sup", "err_prod"});
  for (const Approximant& a : rep.records) {
    std::string ps;
    for (size_t i = 0; i < a.p.size(); ++i) ps += (i ? ";" : "") + std::to_string(a.p[i]);
    recs.add_row({fmt(a.q), ps, fmt(a.err_sup), fmt(a.err_prod)});
  }
  CsvDoc& sum = b.add("omega.csv", seed, id,
                      {"omega_hat", "omega_mult_hat", "omega_peak", "exact_hit", "vwa_flag", "vwma_flag", "margin",
                       "q_max"});
  sum.add_row({fmt(rep.omega.omega_hat), fmt(rep.omega.omega_mult_hat), fmt(rep.omega.omega_peak),
               fmt(rep.omega.exact_hit), fmt(rep.vwa_flag), fmt(rep.vwma_flag), fmt(margin), fmt(q_max)});
  return b;
}

// --- extremality ---

inline ReportBundle report_extremality(const SystemConfig& cfg, int n_points, int64_t q_max, uint64_t seed,
                                       std::vector<double> margins, ExtremalitySummary* out = nullptr,
                                       int threads = 0) {
  GibbsWeights gw = cfg.make_weights();
  ExtremalitySummary sum = extremality_experiment(gw, n_points, q_max, seed, margins, threads);
  if (out) *out = sum;
  ReportBundle b;
  std::string id = config_hash_hex(cfg.raw.dump() + "|extremality|" + std::to_string(q_max));
  std::vector<std::string> cols{"id"};
  for (int i = 0; i < cfg.system->dim(); ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("omega_hat");
  CsvDoc& pts = b.add("extremality_points.csv", seed, id, cols);
  for (size_t i = 0; i < sum.omegas.size(); ++i) {
    std::vector<std::string> row{fmt(i)};
    for (double v : sum.points[i]) row.push_back(fmt(v));
    row.push_back(fmt(sum.omegas[i]));
    pts.add_row(std::move(row));
  }
  CsvDoc& doc = b.add("extremality.csv", seed, id,
                      {"n_points", "q_max", "median_omega", "margin", "exceed_fraction", "exact_hits",
                       "noise_floor", "downgraded"});
  for (size_t i = 0; i < sum.margins.size(); ++i)
    doc.add_row({fmt(sum.n_points), fmt(sum.q_max), fmt(sum.median_omega), fmt(sum.margins[i]),
                 fmt(sum.exceed_fraction[i]), fmt(sum.exact_hits), fmt(sum.noise_floor), fmt(sum.downgraded)});
  return b;
}

// --- toral-shadow ---

struct ToralShadowRun {
  ShadowResult shadow;
  double colip = 0;
  double colip_bound = 0;
  std::vector<LiouvilleMass> liouville;  // n = 1..n_max
  bool exact_period_verified = false;
};

inline ReportBundle report_toral_shadow(const IntMatrix& m, const RatPoint& x, int n, int window, int liouville_n_max,
                                        uint64_t seed, ToralShadowRun* out = nullptr) {
  ToralSystem sys = validate_hyperbolic(m);
  ToralShadowRun run;
  run.shadow = periodic_shadow(sys, x, n, window);
  OrbitMeasure mu = OrbitMeasure::from_orbit(sys, x, n);
  OrbitMeasure nu = OrbitMeasure::from_orbit(sys, run.shadow.y, n);
  // exact periodicity: T^N y equals y in rational arithmetic
  std::vector<RatPoint> around = orbit(sys, run.shadow.y, n + 1);
  run.exact_period_verified = around.front() == around.back();
  ColipResult col = colip_distance(mu, nu);
  run.colip = col.upper;
  double far_cap = std::sqrt(static_cast<double>(sys.d)) / 2;
  run.colip_bound = run.shadow.shadow_quality * (static_cast<double>(n - window) / n) +
                    far_cap * (static_cast<double>(window) / n);
  for (int nn = 1; nn <= liouville_n_max; ++nn) run.liouville.push_back(liouville_mass(nu, nn));
  if (out) *out = run;

  ReportBundle b;
  std::string id = config_hash_hex("toral|" + std::to_string(n) + "|" + std::to_string(window));
  CsvDoc& doc = b.add("toral_shadow.csv", seed, id,
                      {"N", "m", "shadow_quality", "quality_bound", "colip", "colip_bound", "liouville_mass_n",
                       "liouville_mass", "exact_period"});
  doc.add_row({fmt(n), fmt(window), fmt(run.shadow.shadow_quality), fmt(run.shadow.quality_bound), fmt(run.colip),
               fmt(run.colip_bound), fmt(liouville_n_max), fmt(run.liouville.back().in_mass),
               fmt(run.exact_period_verified)});
  return b;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_REPORTS_HPP
