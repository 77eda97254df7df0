// Copyright 2026 The qtsp Authors
//
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

#include "qtsp/io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qtsp {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& what) { throw std::runtime_error(what); }

json Parse(std::istream& in, const char* what) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    Fail(std::string(what) + ": " + e.what());
  }
}

void CheckHeader(const json& doc, const char* format) {
  if (!doc.is_object()) Fail(std::string(format) + ": top level must be an object");
  const auto found = doc.value("format", std::string(format));
  if (found != format) Fail(std::string("expected format '") + format + "', got '" + found + "'");
  const int version = doc.value("version", kFileFormatVersion);
  if (version != kFileFormatVersion) {
    Fail(std::string(format) + ": unsupported version " + std::to_string(version));
  }
}

template <typename T>
T Field(const json& doc, const char* key) {
  if (!doc.contains(key)) Fail(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    Fail(std::string("field '") + key + "': " + e.what());
  }
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string Upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// One key per line; matrices one row per line.
void WriteDocument(const json& doc, std::ostream& out) {
  out << "{\n";
  size_t i = 0;
  for (const auto& [key, value] : doc.items()) {
    out << "  " << json(key).dump() << ": ";
    if (value.is_array() && !value.empty() && value.front().is_array()) {
      out << "[\n";
      for (size_t r = 0; r < value.size(); ++r) {
        out << "    " << value[r].dump() << (r + 1 < value.size() ? ",\n" : "\n");
      }
      out << "  ]";
    } else {
      out << value.dump();
    }
    out << (++i < doc.size() ? ",\n" : "\n");
  }
  out << "}\n";
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void WriteInstance(const TspInstance& instance, std::ostream& out) {
  const int n = instance.size();
  json doc;
  doc["format"] = "qtsp-instance";
  doc["version"] = kFileFormatVersion;
  doc["n"] = n;
  if (instance.coords()) {
    json pts = json::array();
    for (const auto& p : *instance.coords()) pts.push_back({p.x, p.y});
    doc["coords"] = pts;
  }
  json dist = json::array();
  for (int u = 0; u < n; ++u) {
    json row = json::array();
    for (int v = 0; v < n; ++v) row.push_back(instance.distance(u, v));
    dist.push_back(row);
  }
  doc["dist"] = dist;
  json missing = json::array();
  for (const auto& p : instance.non_edges()) missing.push_back({p.first, p.second});
  doc["non_edges"] = missing;
  WriteDocument(doc, out);
}

TspInstance ReadInstance(std::istream& in) {
  const json doc = Parse(in, "instance");
  CheckHeader(doc, "qtsp-instance");
  const int n = Field<int>(doc, "n");
  if (n < 2) Fail("instance: n must be >= 2");

  std::vector<CityPair> non_edges;
  if (doc.contains("non_edges")) {
    for (const auto& p : Field<std::vector<std::vector<int>>>(doc, "non_edges")) {
      if (p.size() != 2) Fail("instance: each non-edge must be a pair");
      non_edges.push_back({p[0], p[1]});
    }
  }
  std::optional<Eigen::MatrixXd> dist;
  if (doc.contains("dist")) {
    const auto rows = Field<std::vector<std::vector<double>>>(doc, "dist");
    if (static_cast<int>(rows.size()) != n) Fail("instance: dist must have n rows");
    dist.emplace(n, n);
    for (int u = 0; u < n; ++u) {
      if (static_cast<int>(rows[u].size()) != n) {
        Fail("instance: dist row " + std::to_string(u) + " must have n entries");
      }
      for (int v = 0; v < n; ++v) (*dist)(u, v) = rows[u][v];
    }
  }
  try {
    if (doc.contains("coords")) {
      const auto raw = Field<std::vector<std::vector<double>>>(doc, "coords");
      if (static_cast<int>(raw.size()) != n) Fail("instance: coords must have n points");
      std::vector<Point> pts;
      for (const auto& p : raw) {
        if (p.size() != 2) Fail("instance: each coordinate must be [x, y]");
        pts.push_back({p[0], p[1]});
      }
      auto instance = TspInstance::FromCoordinates(std::move(pts), std::move(non_edges));
      if (dist) {
        const double scale = std::max(1.0, instance.max_distance());
        if ((instance.distances() - *dist).cwiseAbs().maxCoeff() > 1e-9 * scale) {
          Fail("instance: dist disagrees with the distances implied by coords");
        }
      }
      return instance;
    }
    if (!dist) Fail("instance: needs coords or dist");
    return TspInstance::FromDistances(std::move(*dist), std::move(non_edges));
  } catch (const std::invalid_argument& e) {
    Fail(std::string("instance: ") + e.what());
  }
}

TspInstance ReadTsplib(std::istream& in, const TsplibOptions& options) {
  int n = -1;
  std::string line;
  int line_no = 0;
  bool in_coords = false;
  std::vector<Point> pts;
  std::vector<bool> seen;
  int read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "TSPLIB line " + std::to_string(line_no) + ": ";
    line = Trim(line);
    if (line.empty()) continue;
    if (Upper(line) == "EOF") break;
    if (in_coords) {
      std::istringstream fields(line);
      long id = 0;
      double x = 0.0;
      double y = 0.0;
      if (!(fields >> id >> x >> y)) {
        // A keyword after the section ends it; anything else is malformed.
        if (std::isalpha(static_cast<unsigned char>(line[0]))) {
          Fail(where + "unsupported section '" + line + "'");
        }
        Fail(where + "expected '<id> <x> <y>'");
      }
      if (id < 1 || id > n) Fail(where + "node id " + std::to_string(id) + " out of range");
      if (seen[id - 1]) Fail(where + "duplicate node id " + std::to_string(id));
      if (!std::isfinite(x) || !std::isfinite(y)) Fail(where + "non-finite coordinate");
      seen[id - 1] = true;
      pts[id - 1] = {x, y};
      ++read;
      continue;
    }
    const auto colon = line.find(':');
    const std::string key = Upper(Trim(line.substr(0, colon)));
    const std::string value = colon == std::string::npos ? "" : Trim(line.substr(colon + 1));
    if (key == "NODE_COORD_SECTION") {
      if (n < 0) Fail(where + "NODE_COORD_SECTION before DIMENSION");
      in_coords = true;
      pts.assign(n, {});
      seen.assign(n, false);
    } else if (key == "TYPE") {
      if (Upper(value) != "TSP") Fail(where + "only TYPE: TSP is supported, got '" + value + "'");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (Upper(value) != "EUC_2D") {
        Fail(where + "only EDGE_WEIGHT_TYPE: EUC_2D is supported, got '" + value + "'");
      }
    } else if (key == "DIMENSION") {
      try {
        n = std::stoi(value);
      } catch (const std::exception&) {
        Fail(where + "bad DIMENSION '" + value + "'");
      }
      if (n < 2) Fail(where + "DIMENSION must be >= 2");
    } else if (key == "NAME" || key == "COMMENT" || key == "DISPLAY_DATA_TYPE") {
      // informational
    } else {
      Fail(where + "unsupported keyword '" + key + "'");
    }
  }
  if (!in_coords) Fail("TSPLIB: missing NODE_COORD_SECTION");
  if (read != n) {
    Fail("TSPLIB: expected " + std::to_string(n) + " nodes, read " + std::to_string(read));
  }
  auto instance = TspInstance::FromCoordinates(std::move(pts));
  if (!options.round_distances) return instance;
  Eigen::MatrixXd d = instance.distances();
  // nint() as in the TSPLIB definition of EUC_2D.
  d = (d.array() + 0.5).floor().matrix();
  return TspInstance::FromDistances(std::move(d));
}

TspInstance LoadInstance(const std::string& path, const TsplibOptions& options) {
  auto in = OpenInput(path);
  try {
    return EndsWith(path, ".tsp") ? ReadTsplib(in, options) : ReadInstance(in);
  } catch (const std::runtime_error& e) {
    Fail(path + ": " + e.what());
  }
}

void SaveInstance(const TspInstance& instance, const std::string& path) {
  auto out = OpenOutput(path);
  WriteInstance(instance, out);
}

void WriteHeatmap(const Heatmap& heatmap, std::ostream& out) {
  const int n = heatmap.size();
  out << "qtsp-heatmap " << kFileFormatVersion << ' ' << n << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) out << (v ? " " : "") << heatmap(u, v);
    out << '\n';
  }
}

Heatmap ReadHeatmap(std::istream& in) {
  std::string tag;
  int version = 0;
  int n = 0;
  if (!(in >> tag >> version >> n) || tag != "qtsp-heatmap") {
    Fail("heatmap: expected header 'qtsp-heatmap <version> <n>'");
  }
  if (version != kFileFormatVersion) {
    Fail("heatmap: unsupported version " + std::to_string(version));
  }
  if (n < 2) Fail("heatmap: n must be >= 2");
  Heatmap h{Eigen::MatrixXd(n, n)};
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      double x = 0.0;
      if (!(in >> x)) {
        Fail("heatmap: missing entry (" + std::to_string(u) + ", " + std::to_string(v) + ")");
      }
      if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        Fail("heatmap: entry (" + std::to_string(u) + ", " + std::to_string(v) +
             ") is outside [0, 1]");
      }
      h.values(u, v) = x;
    }
  }
  if ((h.values - h.values.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    Fail("heatmap: matrix is not symmetric");
  }
  if (h.values.diagonal().cwiseAbs().maxCoeff() != 0.0) Fail("heatmap: diagonal must be zero");
  return h;
}

Heatmap LoadHeatmap(const std::string& path) {
  auto in = OpenInput(path);
  try {
    return ReadHeatmap(in);
  } catch (const std::runtime_error& e) {
    Fail(path + ": " + e.what());
  }
}

void SaveHeatmap(const Heatmap& heatmap, const std::string& path) {
  auto out = OpenOutput(path);
  WriteHeatmap(heatmap, out);
}

void WriteTour(const TourRecord& record, std::ostream& out) {
  json doc;
  doc["format"] = "qtsp-tour";
  doc["version"] = kFileFormatVersion;
  doc["method"] = record.method;
  doc["n"] = record.order.size();
  doc["tour"] = record.order;
  doc["length"] = record.length;
  WriteDocument(doc, out);
}

TourRecord ReadTour(std::istream& in) {
  const json doc = Parse(in, "tour");
  CheckHeader(doc, "qtsp-tour");
  TourRecord r;
  r.method = doc.value("method", std::string());
  r.order = Field<std::vector<City>>(doc, "tour");
  r.length = Field<double>(doc, "length");
  if (doc.contains("n") && Field<size_t>(doc, "n") != r.order.size()) {
    Fail("tour: n does not match the tour size");
  }
  if (!IsPermutation(r.order, static_cast<int>(r.order.size()))) {
    Fail("tour: not a permutation of 0..n-1");
  }
  return r;
}

void WriteEvolutionCsv(const EvolutionTrace& trace, std::ostream& out) {
  out << "t,A,B,ground_probability,energy_expectation\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (size_t i = 0; i < trace.times.size(); ++i) {
    out << trace.times[i] << ',' << trace.a[i] << ',' << trace.b[i] << ','
        << trace.ground_probability[i] << ',' << trace.energy_expectation[i] << '\n';
  }
}

void WriteLossCsv(const std::vector<double>& loss_trace, std::ostream& out) {
  out << "step,loss\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (size_t i = 0; i < loss_trace.size(); ++i) out << i << ',' << loss_trace[i] << '\n';
}

void WriteEnergyCsv(const std::vector<double>& energy_trace, std::ostream& out) {
  out << "sweep,best_energy\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (size_t i = 0; i < energy_trace.size(); ++i) out << i + 1 << ',' << energy_trace[i] << '\n';
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) Fail("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace qtsp
