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

// Command-line harness: reproducible runs over system definition files, CSV
// artifacts per command.  Exit codes: 0 ok, 1 domain failure, 2 usage.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracdioph/reports.hpp"

namespace {

using namespace fracdioph;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  uint64_t seed = 0;
  int threads = 0;
  bool svg = false;
};

void write_bundle(const ReportBundle& bundle, const CommonOpts& opts) {
  for (const auto& [name, doc] : bundle.files) {
    std::string path = opts.out_dir + "/" + name;
    write_file_atomic(path, doc.to_string());
    std::cout << path << "\n";
  }
}

void fail_json(const std::string& type, const std::string& message) {
  nlohmann::json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  std::cerr << j.dump() << "\n";
}

// Loads and gates a system config: parse errors and broken core axioms
// (contraction, maps leaving the seed) are hard failures; separation
// failures only warn, several experiments need such systems.
SystemConfig load_checked(const std::string& path) {
  SystemConfig cfg = load_system_file(path);
  ValidationReport rep = cfg.system->validate();
  if (!rep.usable()) {
    std::string what = "system fails core axioms:";
    for (const auto& item : rep.items)
      if (!item.pass) what += " " + item.axiom;
    throw std::domain_error(what);
  }
  return cfg;
}

Vec parse_point(const std::string& s) {
  Vec out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (cur == "golden")
      out.push_back((std::sqrt(5.0) - 1) / 2);
    else if (cur == "sqrt2")
      out.push_back(std::sqrt(2.0) - 1);
    else if (cur == "sqrt3")
      out.push_back(std::sqrt(3.0) - 1);
    else if (cur == "pi")
      out.push_back(3.14159265358979323846 - 3);
    else
      out.push_back(std::stod(cur));
    cur.clear();
  };
  for (char c : s) {
    if (c == ',')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  if (out.empty()) throw std::invalid_argument("empty point");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamically defined measures: decay estimation and Diophantine experiments"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker threads (default: FRACDIOPH_THREADS or 1)");
  };
  auto add_config = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_option("--config", opts.config_path, "system definition file")->required();
  };
  auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", opts.seed, "run seed")->required(); };

  auto* c_validate = app.add_subcommand("validate", "check the system axioms and report witnesses");
  add_config(c_validate);

  auto* c_dimension = app.add_subcommand("dimension", "Bowen dimension via the pressure root");
  add_config(c_dimension);
  int dim_level = 3;
  c_dimension->add_option("--level", dim_level, "pressure estimation level");

  auto* c_thermo = app.add_subcommand("thermo", "pressure, entropy, Lyapunov exponent, dimension");
  add_config(c_thermo);
  add_seed(c_thermo);
  int thermo_level = 12, thermo_samples = 4000;
  c_thermo->add_option("--level", thermo_level, "cylinder level for entropy sums");
  c_thermo->add_option("--samples", thermo_samples, "Monte Carlo samples for the Lyapunov exponent");

  auto* c_sample = app.add_subcommand("sample", "sample points of the measure");
  add_config(c_sample);
  add_seed(c_sample);
  int sample_n = 100, sample_depth = 30;
  c_sample->add_option("--npoints", sample_n, "number of points");
  c_sample->add_option("--depth", sample_depth, "coding depth");

  auto* c_decay = app.add_subcommand("decay-fit", "envelope fit of the decay inequalities");
  add_config(c_decay);
  add_seed(c_decay);
  std::string decay_mode = "absolute";
  DecayRunConfig decay_run;
  c_decay->add_option("--mode", decay_mode, "absolute | quasi | decaying");
  c_decay->add_option("--gamma", decay_run.gamma, "quasi regime exponent");
  c_decay->add_option("--ncenters", decay_run.n_centers, "sampled support centers");
  c_decay->add_option("--nsurfaces", decay_run.n_surfaces, "sampled surfaces");
  c_decay->add_option("--rho-grid", decay_run.rho_grid, "ball radii");
  c_decay->add_option("--beta-grid", decay_run.beta_grid, "relative widths");
  c_decay->add_flag("--svg", opts.svg, "emit a log-log scatter");

  auto* c_global = app.add_subcommand("global-decay", "fit of the global thickening decay");
  add_config(c_global);
  add_seed(c_global);
  int global_nsurf = 40;
  bool global_spheres = false;
  std::vector<double> global_betas = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  c_global->add_option("--nsurfaces", global_nsurf, "number of surfaces");
  c_global->add_option("--beta-grid", global_betas, "thickening widths");
  c_global->add_flag("--spheres", global_spheres, "mix spheres into the surface family");

  auto* c_escape = app.add_subcommand("escape-check", "kappa search plus the escape probability bound");
  add_config(c_escape);
  add_seed(c_escape);
  int escape_rmax = 3, escape_kmax = 12, escape_trials = 10000;
  c_escape->add_option("--rmax", escape_rmax, "max look-ahead depth for the kappa search");
  c_escape->add_option("--kmax", escape_kmax, "largest escape count k");
  c_escape->add_option("--trials", escape_trials, "Monte Carlo trials per k");

  auto* c_omega = app.add_subcommand("omega", "irrationality exponents of a point");
  add_common(c_omega);
  std::string omega_x = "golden";
  int64_t omega_qmax = 100000;
  double omega_margin = 0.25;
  c_omega->add_option("--x", omega_x, "point: comma-separated coordinates or golden|sqrt2|sqrt3|pi");
  c_omega->add_option("--qmax", omega_qmax, "largest denominator scanned");
  c_omega->add_option("--margin", omega_margin, "flag margin above the pigeonhole thresholds");

  auto* c_extremality = app.add_subcommand("extremality", "exponent distribution over sampled points");
  add_config(c_extremality);
  add_seed(c_extremality);
  int ext_n = 200;
  int64_t ext_qmax = 10000;
  std::vector<double> ext_margins = {0.1, 0.25, 0.5};
  c_extremality->add_option("--npoints", ext_n, "sample size");
  c_extremality->add_option("--qmax", ext_qmax, "largest denominator scanned");
  c_extremality->add_option("--margin", ext_margins, "thresholds above the pigeonhole floor");

  auto* c_toral = app.add_subcommand("toral-shadow", "periodic shadowing of an expanding toral orbit");
  add_common(c_toral);
  std::string toral_matrix = "2", toral_x = "0.4142135623730951";
  int toral_n = 64, toral_m = 6, toral_liouville = 10;
  c_toral->add_option("--matrix", toral_matrix, "integer matrix, rows ; separated");
  c_toral->add_option("--x", toral_x, "starting point, exact decimal/rational coordinates , separated");
  c_toral->add_option("--N", toral_n, "orbit length and period");
  c_toral->add_option("--m", toral_m, "specification window");
  c_toral->add_option("--liouville-n", toral_liouville, "check U_n membership up to this n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (c_validate->parsed()) {
      SystemConfig cfg = load_system_file(opts.config_path);
      write_bundle(report_validate(cfg, opts.seed), opts);
      return 0;
    }
    if (c_dimension->parsed()) {
      write_bundle(report_dimension(load_checked(opts.config_path), dim_level, opts.seed), opts);
      return 0;
    }
    if (c_thermo->parsed()) {
      write_bundle(report_thermo(load_checked(opts.config_path), thermo_level, thermo_samples, opts.seed), opts);
      return 0;
    }
    if (c_sample->parsed()) {
      write_bundle(report_sample(load_checked(opts.config_path), sample_n, sample_depth, opts.seed), opts);
      return 0;
    }
    if (c_decay->parsed()) {
      if (decay_mode == "absolute")
        decay_run.mode = DecayMode::Absolute;
      else if (decay_mode == "quasi")
        decay_run.mode = DecayMode::Quasi;
      else if (decay_mode == "decaying")
        decay_run.mode = DecayMode::Decaying;
      else
        throw std::invalid_argument("unknown decay mode " + decay_mode);
      SystemConfig cfg = load_checked(opts.config_path);
      DecayFitReport rep;
      ReportBundle bundle = report_decay_fit(cfg, decay_run, opts.seed, &rep);
      write_bundle(bundle, opts);
      if (opts.svg) {
        std::vector<double> xs, ys;
        for (const DecayProbe& p : rep.probes)
          if (p.mass_in > 0) {
            xs.push_back(std::log(p.beta));
            ys.push_back(std::log(p.mass_in / p.mass_ball));
          }
        write_file_atomic(opts.out_dir + "/decay_fit.svg", svg_scatter(xs, ys, "log mass ratio vs log beta"));
        std::cout << opts.out_dir + "/decay_fit.svg\n";
      }
      return 0;
    }
    if (c_global->parsed()) {
      write_bundle(report_global_decay(load_checked(opts.config_path), global_nsurf, global_betas, global_spheres,
                                       opts.seed),
                   opts);
      return 0;
    }
    if (c_escape->parsed()) {
      EscapeRunResult run;
      write_bundle(report_escape(load_checked(opts.config_path), escape_rmax, escape_kmax, escape_trials, opts.seed,
                                 &run),
                   opts);
      if (!run.config_found) {
        fail_json("reducibility", "no (kappa, r) admissible up to r_max; the system may preserve a hyperplane");
        return 1;
      }
      return 0;
    }
    if (c_omega->parsed()) {
      write_bundle(report_omega(parse_point(omega_x), omega_qmax, opts.seed, nullptr, omega_margin), opts);
      return 0;
    }
    if (c_extremality->parsed()) {
      write_bundle(report_extremality(load_checked(opts.config_path), ext_n, ext_qmax, opts.seed, ext_margins,
                                      nullptr, opts.threads),
                   opts);
      return 0;
    }
    if (c_toral->parsed()) {
      IntMatrix m = IntMatrix::parse(toral_matrix);
      RatPoint x;
      std::string cur;
      for (char ch : toral_x + ",") {
        if (ch == ',') {
          if (!cur.empty()) x.push_back(Rational::from_string(cur));
          cur.clear();
        } else {
          cur.push_back(ch);
        }
      }
      write_bundle(report_toral_shadow(m, x, toral_n, toral_m, toral_liouville, opts.seed), opts);
      return 0;
    }
  } catch (const std::domain_error& e) {
    fail_json("domain", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    fail_json("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    fail_json("internal", e.what());
    return 1;
  }
  return 2;
}
