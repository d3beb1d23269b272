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

#ifndef FRACDIOPH_SYSTEM_IO_HPP
#define FRACDIOPH_SYSTEM_IO_HPP

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracdioph/cifs.hpp"
#include "fracdioph/thermo.hpp"

namespace fracdioph {

// A parsed system definition file: the CIFS together with the measure it
// carries.  Numbers round-trip through nlohmann::json's shortest-exact dump.
struct SystemConfig {
  std::shared_ptr<CifsSystem> system;
  enum class WeightKind { Potential, PointMass } weight_kind = WeightKind::Potential;
  Potential potential = Potential::bernoulli({1});
  Word point_mass_word;
  nlohmann::json raw;

  GibbsWeights make_weights() const {
    if (weight_kind == WeightKind::PointMass) return GibbsWeights::point_mass(*system, point_mass_word);
    return GibbsWeights(*system, potential);
  }
};

namespace detail {

inline Vec json_vec(const nlohmann::json& j) {
  Vec v;
  for (const auto& c : j) v.push_back(c.get<double>());
  return v;
}

inline Complex json_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at(0).get<double>(), j.size() > 1 ? j.at(1).get<double>() : 0.0};
}

}  // namespace detail

inline SystemConfig parse_system(const nlohmann::json& j) {
  SystemConfig cfg;
  cfg.raw = j;
  int dim = j.at("dim").get<int>();
  Region seed = Region::interval(0, 1);
  const auto& js = j.at("seed_set");
  std::string skind = js.at("kind").get<std::string>();
  if (skind == "box")
    seed = Region::box(detail::json_vec(js.at("lo")), detail::json_vec(js.at("hi")));
  else if (skind == "disk")
    seed = Region::disk(detail::json_vec(js.at("center")), js.at("radius").get<double>());
  else
    throw std::invalid_argument("system file: seed_set.kind must be box or disk");

  std::vector<BranchMap> branches;
  bool truncated = false;
  if (j.contains("alphabet") && j.at("alphabet").contains("infinite_family")) {
    const auto& ja = j.at("alphabet");
    std::string fam = ja.at("infinite_family").get<std::string>();
    if (fam != "gauss") throw std::invalid_argument("system file: unknown infinite family");
    int first = ja.value("first_letter", 2);
    int count = ja.at("truncation").get<int>();
    for (int a = first; a < first + count; ++a) branches.push_back(BranchMap::gauss(a));
    truncated = true;
  } else {
    for (const auto& jb : j.at("branches")) {
      std::string kind = jb.at("kind").get<std::string>();
      if (kind == "similarity") {
        branches.push_back(BranchMap::similarity(jb.at("ratio").get<double>(), detail::json_vec(jb.at("translation")),
                                                 jb.value("rotation", 0.0), jb.value("reflect", false)));
      } else if (kind == "moebius") {
        branches.push_back(BranchMap::moebius(detail::json_complex(jb.at("a")), detail::json_complex(jb.at("b")),
                                              detail::json_complex(jb.at("c")), detail::json_complex(jb.at("d"))));
      } else if (kind == "gauss") {
        branches.push_back(BranchMap::gauss(jb.at("letter").get<int>()));
      } else {
        throw std::invalid_argument("system file: unknown branch kind " + kind);
      }
    }
  }
  cfg.system = std::make_shared<CifsSystem>(dim, seed, std::move(branches), j.value("name", std::string("system")),
                                            truncated);

  if (j.contains("potential")) {
    const auto& jp = j.at("potential");
    std::string pk = jp.at("kind").get<std::string>();
    if (pk == "geometric") {
      cfg.potential = Potential::geometric(jp.at("s").get<double>());
    } else if (pk == "bernoulli") {
      std::vector<double> w;
      for (const auto& v : jp.at("weights")) w.push_back(v.get<double>());
      cfg.potential = Potential::bernoulli(std::move(w));
    } else if (pk == "point_mass") {
      cfg.weight_kind = SystemConfig::WeightKind::PointMass;
      std::vector<int32_t> letters;
      for (const auto& v : jp.at("word")) letters.push_back(v.get<int32_t>());
      cfg.point_mass_word = Word(letters);
    } else {
      throw std::invalid_argument("system file: unknown potential kind " + pk);
    }
    if (jp.contains("holder_exponent")) cfg.potential.holder_exponent = jp.at("holder_exponent").get<double>();
  } else {
    cfg.potential = Potential::bernoulli(
        std::vector<double>(static_cast<size_t>(cfg.system->letter_count()), 1.0 / cfg.system->letter_count()));
  }
  return cfg;
}

inline nlohmann::json system_to_json(const SystemConfig& cfg) {
  // The parsed source is kept verbatim: writing back what was read is the
  // bit-exact round trip for rational inputs.
  return cfg.raw;
}

inline SystemConfig load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_system(j);
}

inline void save_system_file(const SystemConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write system file: " + path);
  out << system_to_json(cfg).dump(2) << "\n";
}

}  // namespace fracdioph

#endif  // FRACDIOPH_SYSTEM_IO_HPP
