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

#ifndef FRACDIOPH_CSV_HPP
#define FRACDIOPH_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdioph/rng.hpp"
#include "fracdioph/version.hpp"

namespace fracdioph {

// Fixed-width shortest-ish float formatting; one code path so repeated runs
// are byte-identical.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string fmt(int64_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(size_t v) { return std::to_string(v); }
inline std::string fmt(bool v) { return v ? "1" : "0"; }

struct CsvDoc {
  std::string tool = "fracdioph";
  uint64_t seed = 0;
  std::string config_id;  // hash of the run configuration
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> r) {
    if (r.size() != columns.size()) throw std::logic_error("CsvDoc: row width mismatch");
    rows.push_back(std::move(r));
  }

  std::string to_string() const {
    std::string s = "# " + tool + " " + kVersion + " seed=" + std::to_string(seed) + " config=" + config_id + "\n";
    for (size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
      s += "\n";
    }
    return s;
  }
};

inline std::string config_hash_hex(const std::string& canonical) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
  return buf;
}

// write-temp-then-rename so readers never observe a partial file
inline void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, target);
}

// Minimal scatter plot, log-log, for the optional decay-fit artifact.
inline std::string svg_scatter(const std::vector<double>& xs, const std::vector<double>& ys,
                               const std::string& title) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (double v : xs) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  for (double v : ys) {
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  const double w = 640, h = 480, pad = 40;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\">\n";
  s += "<text x=\"10\" y=\"20\">" + title + "</text>\n";
  s += "<rect x=\"" + fmt(pad) + "\" y=\"" + fmt(pad) + "\" width=\"" + fmt(w - 2 * pad) + "\" height=\"" +
       fmt(h - 2 * pad) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (size_t i = 0; i < xs.size(); ++i) {
    double px = pad + (xs[i] - xmin) / (xmax - xmin) * (w - 2 * pad);
    double py = h - pad - (ys[i] - ymin) / (ymax - ymin) * (h - 2 * pad);
    s += "<circle cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) + "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace fracdioph

#endif  // FRACDIOPH_CSV_HPP
