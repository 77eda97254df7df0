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

// File formats.
//
// Instance (JSON):
//   {"format": "qtsp-instance", "version": 1, "n": 3,
//    "coords": [[x, y], ...],        optional
//    "dist": [[...], ...],           optional, row-major
//    "non_edges": [[u, v], ...]}     optional
// At least one of coords / dist is required. When both are present they must
// agree to 1e-9.
//
// TSPLIB: TYPE TSP, EDGE_WEIGHT_TYPE EUC_2D, NODE_COORD_SECTION only.
// Distances are exact Euclidean unless rounding to TSPLIB's nint() is asked
// for, in which case the instance keeps no coordinates.
//
// Heatmap (text): a header line "qtsp-heatmap 1 <n>" followed by n rows of n
// values in [0, 1].
//
// Tour result (JSON): {"format": "qtsp-tour", "version": 1, "method": ...,
//   "n": ..., "tour": [...], "length": ...}.
//
// All readers throw std::runtime_error naming the offending field or line.

#ifndef QTSP_IO_H_
#define QTSP_IO_H_

#include <fstream>
#include <string>
#include <vector>

#include "qtsp/heatmap.h"
#include "qtsp/instance.h"
#include "qtsp/schrodinger.h"

namespace qtsp {

inline constexpr int kFileFormatVersion = 1;

void WriteInstance(const TspInstance& instance, std::ostream& out);
TspInstance ReadInstance(std::istream& in);

struct TsplibOptions {
  bool round_distances = false;
};

TspInstance ReadTsplib(std::istream& in, const TsplibOptions& options = {});

// Picks TSPLIB for a ".tsp" extension and JSON otherwise.
TspInstance LoadInstance(const std::string& path, const TsplibOptions& options = {});
void SaveInstance(const TspInstance& instance, const std::string& path);

void WriteHeatmap(const Heatmap& heatmap, std::ostream& out);
Heatmap ReadHeatmap(std::istream& in);
Heatmap LoadHeatmap(const std::string& path);
void SaveHeatmap(const Heatmap& heatmap, const std::string& path);

struct TourRecord {
  std::string method;
  std::vector<City> order;
  double length = 0.0;
};

void WriteTour(const TourRecord& record, std::ostream& out);
TourRecord ReadTour(std::istream& in);

// CSV traces for plotting.
void WriteEvolutionCsv(const EvolutionTrace& trace, std::ostream& out);  // t,A,B,...
void WriteLossCsv(const std::vector<double>& loss_trace, std::ostream& out);      // step,loss
void WriteEnergyCsv(const std::vector<double>& energy_trace, std::ostream& out);  // sweep,...

// Opens a file for writing or throws std::runtime_error.
std::ofstream OpenOutput(const std::string& path);

}  // namespace qtsp

#endif  // QTSP_IO_H_
