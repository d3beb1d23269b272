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

#ifndef FRACDIOPH_THERMO_HPP
#define FRACDIOPH_THERMO_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fracdioph/cifs.hpp"
#include "fracdioph/rng.hpp"
#include "fracdioph/word.hpp"

namespace fracdioph {

// Potential on the sequence space.
//  - geometric(s):  phi(w) = s * log|u'_{w_1}(pi(shift w))|
//  - bernoulli(p):  phi(w) = log p_{w_1}   (weights >= 0, not all zero)
//  - tabulated:     phi(w) = value[w|_depth], locally constant
struct Potential {
  enum class Kind { Geometric, Bernoulli, Tabulated };
  Kind kind = Kind::Bernoulli;
  double s = 0;                        // geometric exponent
  std::vector<double> weights;         // bernoulli
  int table_depth = 1;                 // tabulated
  std::map<Word, double> table;        // tabulated: word of length table_depth -> phi
  double holder_exponent = 1.0;

  static Potential geometric(double s_) {
    Potential p;
    p.kind = Kind::Geometric;
    p.s = s_;
    return p;
  }
  static Potential bernoulli(std::vector<double> w) {
    double total = 0;
    for (double v : w) {
      if (v < 0) throw std::invalid_argument("Potential: negative bernoulli weight");
      total += v;
    }
    if (total <= 0) throw std::invalid_argument("Potential: bernoulli weights sum to zero");
    Potential p;
    p.kind = Kind::Bernoulli;
    p.weights = std::move(w);
    return p;
  }
  static Potential tabulated(int depth, std::map<Word, double> values) {
    Potential p;
    p.kind = Kind::Tabulated;
    p.table_depth = depth;
    p.table = std::move(values);
    return p;
  }
};

// phi depends only on the first letter exactly when the potential is
// bernoulli, depth-1 tabulated, or geometric over constant-derivative
// (similarity) branches.  That case admits closed forms everywhere.
inline bool letter_potential(const CifsSystem& sys, const Potential& pot) {
  switch (pot.kind) {
    case Potential::Kind::Bernoulli:
      return true;
    case Potential::Kind::Tabulated:
      return pot.table_depth == 1;
    case Potential::Kind::Geometric:
      for (int a = 0; a < sys.letter_count(); ++a)
        if (sys.branch(a).kind != BranchMap::Kind::Similarity) return false;
      return true;
  }
  return false;
}

// log of the per-letter value exp(phi) when phi is a letter potential.
inline std::vector<double> letter_log_values(const CifsSystem& sys, const Potential& pot) {
  std::vector<double> lv(static_cast<size_t>(sys.letter_count()));
  for (int a = 0; a < sys.letter_count(); ++a) {
    switch (pot.kind) {
      case Potential::Kind::Bernoulli:
        lv[static_cast<size_t>(a)] =
            pot.weights[static_cast<size_t>(a)] > 0 ? std::log(pot.weights[static_cast<size_t>(a)])
                                                    : -std::numeric_limits<double>::infinity();
        break;
      case Potential::Kind::Geometric:
        lv[static_cast<size_t>(a)] = pot.s * std::log(sys.branch(a).ratio);
        break;
      case Potential::Kind::Tabulated: {
        auto it = pot.table.find(Word{a});
        lv[static_cast<size_t>(a)] = it == pot.table.end() ? -std::numeric_limits<double>::infinity() : it->second;
        break;
      }
    }
  }
  return lv;
}

// Summability of the potential; at a truncation level the finite sum always
// exists, so this guards the certified tail for truncated infinite families
// (gauss: sup e^phi over [a] is a^{-2s}, summable iff s > 1/2).
inline void check_summable(const CifsSystem& sys, const Potential& pot) {
  if (pot.kind == Potential::Kind::Bernoulli &&
      pot.weights.size() != static_cast<size_t>(sys.letter_count()))
    throw std::invalid_argument("Potential: bernoulli weight count != alphabet size");
  if (sys.truncated_infinite() && pot.kind == Potential::Kind::Geometric && pot.s <= 0.5)
    throw std::domain_error("Potential: level sums diverge beyond the truncation (geometric s <= 1/2)");
}

struct PressureEstimate {
  double value = 0;
  double lower = 0;
  double upper = 0;
  int level = 1;
  bool exact = false;
};

namespace detail {

// sup / inf of S_n phi over the cylinder [w], certified via derivative bounds.
inline Interval birkhoff_range(const CifsSystem& sys, const Potential& pot, const Word& w) {
  switch (pot.kind) {
    case Potential::Kind::Bernoulli: {
      double s = 0;
      for (size_t i = 0; i < w.length(); ++i) {
        double p = pot.weights[static_cast<size_t>(w.at(i))];
        if (p <= 0) return {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        s += std::log(p);
      }
      return {s, s};
    }
    case Potential::Kind::Geometric: {
      // S_n phi(tau) = s * log|u_w'(pi(shift^n tau))| by the chain rule.
      Interval d = sys.derivative_bounds(w);
      double a = pot.s * std::log(d.lo), b = pot.s * std::log(d.hi);
      if (a > b) std::swap(a, b);
      return {a, b};
    }
    case Potential::Kind::Tabulated: {
      double lo = 0, hi = 0;
      int t = pot.table_depth;
      for (size_t j = 0; j < w.length(); ++j) {
        // Known part of (shift^j tau)|_t from w; complete with table extremes.
        std::vector<int32_t> known(w.letters().begin() + static_cast<long>(j), w.letters().end());
        double vlo = std::numeric_limits<double>::infinity(), vhi = -vlo;
        for (const auto& [key, val] : pot.table) {
          bool match = true;
          for (size_t k = 0; k < std::min(known.size(), static_cast<size_t>(t)); ++k)
            if (key.at(k) != known[k]) {
              match = false;
              break;
            }
          if (match) {
            vlo = std::min(vlo, val);
            vhi = std::max(vhi, val);
          }
        }
        if (!std::isfinite(vlo))
          return {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        lo += vlo;
        hi += vhi;
      }
      return {lo, hi};
    }
  }
  throw std::logic_error("birkhoff_range: bad potential");
}

inline void level_sum_rec(const CifsSystem& sys, const Potential& pot, Word& w, int remaining, double& z_lo,
                          double& z_hi) {
  if (remaining == 0) {
    Interval r = birkhoff_range(sys, pot, w);
    if (std::isfinite(r.hi)) {
      z_lo += std::exp(r.lo);
      z_hi += std::exp(r.hi);
    }
    return;
  }
  for (int a = 0; a < sys.letter_count(); ++a) {
    Word wa = w.append(a);
    level_sum_rec(sys, pot, wa, remaining - 1, z_lo, z_hi);
  }
}

}  // namespace detail

// Level-n estimator P_n = (1/n) log sum_{|w|=n} exp(sup_[w] S_n phi), with the
// matching inf-side lower bound.  Exact (level-free) for letter potentials.
inline PressureEstimate pressure(const CifsSystem& sys, const Potential& pot, int n) {
  if (n < 1) throw std::invalid_argument("pressure: level must be >= 1");
  check_summable(sys, pot);
  PressureEstimate est;
  if (letter_potential(sys, pot)) {
    double z = 0;
    for (double lv : letter_log_values(sys, pot)) z += std::exp(lv);
    est.value = est.lower = est.upper = std::log(z);
    est.level = n;
    est.exact = true;
    return est;
  }
  double budget = std::pow(static_cast<double>(sys.letter_count()), n);
  if (budget > 4e6) throw std::invalid_argument("pressure: level sum too large at this alphabet size");
  double z_lo = 0, z_hi = 0;
  Word w;
  detail::level_sum_rec(sys, pot, w, n, z_lo, z_hi);
  if (!(z_lo > 0)) throw std::domain_error("pressure: degenerate level sum");
  est.lower = std::log(z_lo) / n;
  est.upper = std::log(z_hi) / n;
  est.value = 0.5 * (est.lower + est.upper);
  est.level = n;
  return est;
}

struct BowenResult {
  double delta = 0;
  double pressure_residual = 0;
  int level = 1;
};

// Root of s -> P(s log|u'|) on [0, d]; P is strictly decreasing in s because
// log|u'| < 0.  Bisection to |P| < tol.
inline BowenResult bowen_dimension(const CifsSystem& sys, int level = 3, double tol = 1e-9) {
  double lo = 0, hi = static_cast<double>(sys.dim());
  double s_floor = sys.truncated_infinite() ? std::nextafter(0.5, 1.0) : 0.0;
  lo = std::max(lo, s_floor);
  auto p_at = [&](double s) { return pressure(sys, Potential::geometric(s), level).value; };
  double p_lo = p_at(lo), p_hi = p_at(hi);
  if (std::abs(p_hi) < tol && p_lo > tol) return {hi, p_hi, level};  // root at the full dimension
  if (!(p_lo > tol && p_hi < -tol))
    throw std::domain_error("bowen_dimension: no sign change on [0,d]; system is irregular at this truncation");
  double mid = 0, p_mid = 0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    p_mid = p_at(mid);
    if (std::abs(p_mid) < tol) break;
    (p_mid > 0 ? lo : hi) = mid;
  }
  return {mid, p_mid, level};
}

// Cylinder weights of a Gibbs state, built as a consistent tree measure: the
// conditional child law at a node is proportional to exp(S phi) evaluated on
// the periodic extension of the recent-suffix context of each child word.
// Compatibility and normalization then hold exactly at every level, and the
// Gibbs ratio stays within a certified multiplicative corridor (equal to 1
// for letter potentials, measured and doubled otherwise).
class GibbsWeights {
 public:
  enum class Mode { Letter, General, PointMassPeriodic };

  GibbsWeights(const CifsSystem& sys, Potential pot, int coding_depth = 24)
      : sys_(&sys), pot_(std::move(pot)), coding_depth_(coding_depth) {
    check_summable(sys, pot_);
    memory_ = sys.letter_count() <= 16 ? 10 : 4;
    if (letter_potential(sys, pot_)) {
      mode_ = Mode::Letter;
      std::vector<double> lv = letter_log_values(sys, pot_);
      double z = 0;
      for (double v : lv) z += std::exp(v);
      letter_probs_.resize(lv.size());
      for (size_t a = 0; a < lv.size(); ++a) letter_probs_[a] = std::exp(lv[a]) / z;
      pressure_ = std::log(z);
      certificate_ = 1.0;
    } else {
      mode_ = Mode::General;
      pressure_ = pressure(sys, pot_, std::min(3, 12 / std::max(1, sys.letter_count() / 8 + 1))).value;
      certificate_ = 0;  // computed lazily
    }
    compute_tail();
  }

  // The measure concentrated on the periodic orbit closure of `word`
  // repeated forever: the zero-entropy reference weights.
  static GibbsWeights point_mass(const CifsSystem& sys, Word word) {
    if (word.empty()) throw std::invalid_argument("GibbsWeights: point mass needs a nonempty word");
    GibbsWeights g(sys, word);
    return g;
  }

  const CifsSystem& system() const { return *sys_; }
  const Potential& potential() const { return pot_; }
  Mode mode() const { return mode_; }
  double pressure_value() const { return pressure_; }
  double tail_mass() const { return tail_mass_; }

  // Conditional law of the next letter after `prefix`.
  std::vector<double> child_probs(const Word& prefix) const {
    size_t m = static_cast<size_t>(sys_->letter_count());
    switch (mode_) {
      case Mode::Letter:
        return letter_probs_;
      case Mode::PointMassPeriodic: {
        std::vector<double> p(m, 0.0);
        p[static_cast<size_t>(periodic_word_.at(prefix.length() % periodic_word_.length()))] = 1.0;
        return p;
      }
      case Mode::General: {
        // The conditional law is keyed on the recent suffix; distortion makes
        // older letters exponentially irrelevant and the certificate below
        // measures whatever corridor this truncation leaves.
        Word context = suffix_context(prefix);
        std::string key = word_key(context);
        {
          std::lock_guard<std::mutex> lock(cache_->mu);
          auto it = cache_->map.find(key);
          if (it != cache_->map.end()) return it->second;
        }
        std::vector<double> lg(m);
        double best = -std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < m; ++a) {
          lg[a] = log_g(context.append(static_cast<int32_t>(a)));
          best = std::max(best, lg[a]);
        }
        std::vector<double> p(m);
        double z = 0;
        for (size_t a = 0; a < m; ++a) {
          p[a] = std::exp(lg[a] - best);
          z += p[a];
        }
        for (auto& v : p) v /= z;
        std::lock_guard<std::mutex> lock(cache_->mu);
        cache_->map.emplace(std::move(key), p);
        return p;
      }
    }
    throw std::logic_error("child_probs: bad mode");
  }

  // mu([w]); the product of conditionals along the path.
  double weight(const Word& w) const {
    double p = 1;
    Word prefix;
    for (size_t i = 0; i < w.length(); ++i) {
      std::vector<double> cp = child_probs(prefix);
      p *= cp[static_cast<size_t>(w.at(i))];
      if (p == 0) return 0;
      prefix = prefix.append(w.at(i));
    }
    return p;
  }

  int32_t sample_child(const Word& prefix, Rng& rng) const {
    std::vector<double> cp = child_probs(prefix);
    double u = rng.next_double();
    double acc = 0;
    for (size_t a = 0; a < cp.size(); ++a) {
      acc += cp[a];
      if (u < acc) return static_cast<int32_t>(a);
    }
    return static_cast<int32_t>(cp.size() - 1);
  }

  Word sample_word(int depth, Rng& rng, const Word& start = Word()) const {
    Word w = start;
    for (int i = static_cast<int>(start.length()); i < depth; ++i) w = w.append(sample_child(w, rng));
    return w;
  }

  std::vector<std::pair<Word, double>> level_table(int n) const {
    double budget = std::pow(static_cast<double>(sys_->letter_count()), n);
    if (budget > 4e6) throw std::invalid_argument("level_table: too many cylinders at this level");
    std::vector<std::pair<Word, double>> out;
    Word w;
    table_rec(w, 1.0, n, out);
    return out;
  }

  // Certified corridor for weight(w) / exp(S phi - P|w|); exactly 1 for
  // letter potentials, sampled with a safety factor of 2 otherwise.
  double gibbs_certificate() const {
    if (certificate_ > 0) return certificate_;
    Rng rng(0x5eedULL);
    double worst = 1;
    for (int trial = 0; trial < 200; ++trial) {
      int len = 1 + static_cast<int>(rng.next_below(8));
      Word w = sample_word(len, rng);
      Word tau = sample_word(len + coding_depth_, rng, w);
      double r = gibbs_ratio(w, tau);
      worst = std::max(worst, std::max(r, 1.0 / r));
    }
    certificate_ = 2 * worst;
    return certificate_;
  }

  // weight(w) / exp(S_{|w|} phi(tau) - P |w|) for tau extending w.
  double gibbs_ratio(const Word& w, const Word& tau) const {
    if (!w.is_prefix_of(tau)) throw std::invalid_argument("gibbs_ratio: tau must extend w");
    double s = birkhoff_sum(tau, w.length());
    double lw = std::log(weight(w));
    return std::exp(lw - (s - pressure_ * static_cast<double>(w.length())));
  }

  // S_n phi along a truncated sequence.
  double birkhoff_sum(const Word& tau, size_t n) const {
    double s = 0;
    for (size_t j = 0; j < n; ++j) s += phi_at(tau, j);
    return s;
  }

 private:
  GibbsWeights(const CifsSystem& sys, Word periodic)
      : sys_(&sys), pot_(Potential::bernoulli(std::vector<double>(static_cast<size_t>(sys.letter_count()), 1.0))),
        mode_(Mode::PointMassPeriodic),
        periodic_word_(std::move(periodic)) {
    pressure_ = 0;
    certificate_ = 1;
    tail_mass_ = 0;
  }

  // phi(shift^j tau), truncation error inherited from the finite tau.
  double phi_at(const Word& tau, size_t j) const {
    if (j >= tau.length()) throw std::invalid_argument("phi_at: word too short");
    switch (pot_.kind) {
      case Potential::Kind::Bernoulli: {
        double p = pot_.weights[static_cast<size_t>(tau.at(j))];
        return p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
      }
      case Potential::Kind::Geometric: {
        std::vector<int32_t> rest(tau.letters().begin() + static_cast<long>(j) + 1, tau.letters().end());
        Vec x = rest.empty() ? sys_->seed_center() : sys_->apply_word(Word(rest), sys_->seed_center());
        return pot_.s * std::log(sys_->branch(tau.at(j)).derivative_at(x));
      }
      case Potential::Kind::Tabulated: {
        std::vector<int32_t> key;
        for (size_t k = j; k < tau.length() && key.size() < static_cast<size_t>(pot_.table_depth); ++k)
          key.push_back(tau.at(k));
        while (key.size() < static_cast<size_t>(pot_.table_depth)) key.push_back(key.empty() ? 0 : key.back());
        auto it = pot_.table.find(Word(key));
        return it == pot_.table.end() ? -std::numeric_limits<double>::infinity() : it->second;
      }
    }
    throw std::logic_error("phi_at: bad potential");
  }

  Word suffix_context(const Word& prefix) const {
    size_t len = prefix.length();
    size_t keep = std::min(len, static_cast<size_t>(memory_));
    return Word(std::vector<int32_t>(prefix.letters().end() - static_cast<long>(keep), prefix.letters().end()));
  }

  // log g(w) = S_{|w|} phi on the periodic extension of w.  For geometric
  // potentials one backward pass computes every coding point along the tail.
  double log_g(const Word& w) const {
    size_t n = w.length();
    std::vector<int32_t> tau = w.letters();
    while (tau.size() < n + static_cast<size_t>(coding_depth_)) tau.push_back(w.at(tau.size() % n));
    if (pot_.kind != Potential::Kind::Geometric) return birkhoff_sum(Word(tau), n);
    size_t len = tau.size();
    Vec y = sys_->seed_center();  // y approximates pi(shift^{j+1} tau) walking backwards
    std::vector<double> logd(len);
    for (size_t j = len; j-- > 0;) {
      logd[j] = std::log(sys_->branch(tau[j]).derivative_at(y));
      y = sys_->branch(tau[j]).apply(y);
    }
    double s = 0;
    for (size_t j = 0; j < n; ++j) s += logd[j];
    return pot_.s * s;
  }

  void table_rec(Word& w, double p, int remaining, std::vector<std::pair<Word, double>>& out) const {
    if (remaining == 0) {
      out.emplace_back(w, p);
      return;
    }
    std::vector<double> cp = child_probs(w);
    for (size_t a = 0; a < cp.size(); ++a) {
      if (cp[a] == 0) continue;
      Word wa = w.append(static_cast<int32_t>(a));
      table_rec(wa, p * cp[a], remaining - 1, out);
    }
  }

  void compute_tail() {
    tail_mass_ = 0;
    if (!sys_->truncated_infinite()) return;
    if (pot_.kind == Potential::Kind::Geometric) {
      // gauss family: sup_{[a]} e^phi = a^{-2s}; integral tail bound.
      const BranchMap& last = sys_->branch(sys_->letter_count() - 1);
      if (last.kind == BranchMap::Kind::Gauss1d && pot_.s > 0.5) {
        double m = static_cast<double>(last.letter);
        tail_mass_ = std::pow(m, 1.0 - 2 * pot_.s) / (2 * pot_.s - 1);
      } else {
        tail_mass_ = std::numeric_limits<double>::infinity();
      }
    }
  }

  static std::string word_key(const Word& w) {
    std::string key;
    key.reserve(w.length() * 4);
    for (int32_t a : w.letters()) key.append(reinterpret_cast<const char*>(&a), 4);
    return key;
  }

  const CifsSystem* sys_;
  Potential pot_;
  Mode mode_ = Mode::Letter;
  int coding_depth_ = 24;
  int memory_ = 10;  // suffix-context length for general-mode conditionals
  std::vector<double> letter_probs_;
  Word periodic_word_;
  double pressure_ = 0;
  // conditional-law memo, shared by copies (same measure) and lock-guarded so
  // finished weights can be used from several threads
  struct CondCache {
    std::mutex mu;
    std::unordered_map<std::string, std::vector<double>> map;
  };

  mutable double certificate_ = 0;
  double tail_mass_ = 0;
  std::shared_ptr<CondCache> cache_ = std::make_shared<CondCache>();
};

struct ValueWithError {
  double value = 0;
  double error = 0;
  int level = 0;
  bool exact = false;
  bool diverged = false;
};

// (1/n) sum over level-n cylinders of -w log w.
inline ValueWithError entropy(const GibbsWeights& gw, int n) {
  double h = 0;
  for (const auto& [w, p] : gw.level_table(n))
    if (p > 0) h -= p * std::log(p);
  ValueWithError r;
  r.value = h / n;
  r.level = n;
  r.exact = gw.mode() != GibbsWeights::Mode::General;
  r.error = r.exact ? 0 : std::abs(r.value) * 1e-2;
  return r;
}

// Lyapunov exponent: integral of log(1/|u'_{w_1}(pi(shift w))|) d mu.
// Exact level-1 sum for constant-derivative systems, Monte Carlo otherwise.
inline ValueWithError lyapunov(const GibbsWeights& gw, int depth, int samples, Rng& rng) {
  const CifsSystem& sys = gw.system();
  bool constant_derivative = true;
  for (int a = 0; a < sys.letter_count(); ++a)
    if (sys.branch(a).kind != BranchMap::Kind::Similarity) constant_derivative = false;
  ValueWithError r;
  if (constant_derivative) {
    Word empty;
    std::vector<double> cp = gw.child_probs(empty);
    double chi = 0;
    for (int a = 0; a < sys.letter_count(); ++a)
      if (cp[static_cast<size_t>(a)] > 0) chi += cp[static_cast<size_t>(a)] * std::log(1.0 / sys.branch(a).ratio);
    // Stationarity: for tree weights built from a letter potential or a
    // periodic point mass the letter law is level-invariant.
    r.value = chi;
    r.exact = true;
    r.level = 1;
    return r;
  }
  double sum = 0, sum2 = 0;
  for (int i = 0; i < samples; ++i) {
    Word w = gw.sample_word(depth, rng);
    Word rest = shift(w);
    Vec x = gw.system().apply_word(rest, sys.seed_center());
    double v = std::log(1.0 / sys.branch(w.at(0)).derivative_at(x));
    sum += v;
    sum2 += v * v;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sum2 / samples - mean * mean);
  r.value = mean;
  r.error = std::sqrt(var / samples);
  r.level = depth;
  r.diverged = !std::isfinite(gw.tail_mass()) && gw.system().truncated_infinite();
  return r;
}

// h / chi, the exact-dimension formula for positive Lyapunov exponent.
inline ValueWithError hofbauer_dimension(const GibbsWeights& gw, int entropy_level, int samples, Rng& rng) {
  ValueWithError h = entropy(gw, entropy_level);
  ValueWithError chi = lyapunov(gw, entropy_level + 12, samples, rng);
  if (chi.diverged) throw std::domain_error("hofbauer_dimension: Lyapunov exponent diverges");
  if (!(chi.value > 0)) throw std::domain_error("hofbauer_dimension: requires positive Lyapunov exponent");
  ValueWithError r;
  r.value = h.value / chi.value;
  r.error = h.error / chi.value + chi.error * h.value / (chi.value * chi.value);
  r.level = entropy_level;
  r.exact = h.exact && chi.exact;
  return r;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_THERMO_HPP
