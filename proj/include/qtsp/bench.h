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

// Instance generation, one-call solvers and Length / Gap / Time reporting.

#ifndef QTSP_BENCH_H_
#define QTSP_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtsp/heatmap.h"
#include "qtsp/instance.h"
#include "qtsp/local_search.h"
#include "qtsp/schrodinger.h"

namespace qtsp {

enum class Method { kSa, kSqa, kSchrodinger, kHeatmapSearch };

// "sa", "sqa", "schrodinger", "heatmap+search".
std::string MethodName(Method method);
// Also accepts "heatmap". Throws std::invalid_argument.
Method ParseMethod(std::string_view name);

// Uniform points in the unit square, deterministic in seed.
std::vector<TspInstance> GenerateInstances(int n, int count, std::uint64_t seed);

// Mixes several values into one 64-bit seed.
std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> parts);

struct MethodSettings {
  // QUBO penalty for the annealers; unset means DefaultPenalty.
  std::optional<double> penalty_a;
  // Independent annealing runs per instance; the shortest valid tour wins.
  int anneal_runs = 1;

  int sqa_sweeps = 1000;
  int replicas = 20;
  // Unset means replicas * sqa_sweeps, the same number of flip proposals.
  std::optional<int> sa_sweeps;
  // Unset entries come from the default schedules.
  std::optional<double> t_initial;
  std::optional<double> t_final;
  std::optional<double> gamma_initial;
  std::optional<double> gamma_final;
  std::optional<double> sqa_temperature;

  double evolution_time = 10.0;
  // Unset means max(10, 100 * evolution_time).
  std::optional<int> evolution_steps;
  int shots = 100;

  HeatmapConfig heatmap;
  // m_top is capped at n - 1 on small instances.
  SearchParams search;

  void Validate() const;
};

struct MethodRun {
  std::optional<Tour> tour;
  std::string error;  // set when no valid tour came out
  double seconds = 0.0;
  // heatmap+search only: seconds is the heatmap part, this the search part.
  std::optional<double> search_seconds;

  std::vector<double> energy_trace;       // sa / sqa, from the best run
  std::optional<EvolutionTrace> evolution;  // schrodinger
  std::optional<HeatmapResult> heatmap;     // heatmap+search
};

// Throws on invalid settings or inputs; an annealer that ends in an invalid
// encoding yields a run without a tour.
MethodRun RunMethod(const TspInstance& instance, Method method, const MethodSettings& settings,
                    std::uint64_t seed);

struct BenchConfig {
  std::vector<int> sizes = {20};
  int instances_per_size = 10;
  std::vector<Method> methods = {Method::kHeatmapSearch};
  std::uint64_t seed = 0;
  MethodSettings settings;

  void Validate() const;
};

struct InstanceOutcome {
  int index = 0;
  bool ok = false;
  double length = 0.0;
  double reference = 0.0;
  double gap_percent = 0.0;
  double seconds = 0.0;
  std::optional<double> search_seconds;
  std::string error;
};

struct BenchRow {
  Method method = Method::kSa;
  int n = 0;
  int instances = 0;
  int failures = 0;
  // Means over the instances that produced a tour.
  double mean_length = 0.0;
  double gap_percent = 0.0;
  // True when the reference is Held-Karp; otherwise the best tour any method
  // found on that instance.
  bool exact_reference = false;
  double mean_time_seconds = 0.0;
  std::optional<double> mean_search_seconds;
  std::vector<InstanceOutcome> outcomes;
};

// Rows ordered by method (as configured) then size. Per-instance failures are
// recorded, never thrown.
std::vector<BenchRow> RunBenchmark(const BenchConfig& config);

struct ReferenceEntry {
  std::string method;
  std::string type;
  int n = 0;
  double length = 0.0;
  double gap_percent = 0.0;
  std::string time;
};

std::vector<ReferenceEntry> LoadReferenceTable(const std::string& path);

// "30.28s", "6.78m", "1.04h".
std::string FormatDuration(double seconds);

// Aligned text. Reference rows for the benchmarked sizes are appended.
std::string FormatTable(const std::vector<BenchRow>& rows,
                        const std::vector<ReferenceEntry>& reference = {});
std::string FormatCsv(const std::vector<BenchRow>& rows);
std::string FormatJson(const std::vector<BenchRow>& rows);

}  // namespace qtsp

#endif  // QTSP_BENCH_H_
