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

#include "qtsp/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qtsp/annealers.h"
#include "qtsp/oracle.h"
#include "qtsp/qubo.h"

namespace qtsp {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<Tour> Decode(const TspInstance& instance, const BinaryAssignment& x) {
  auto decoded = DecodeAssignment(instance, x);
  if (auto* tour = std::get_if<Tour>(&decoded)) return std::move(*tour);
  return std::nullopt;
}

void RunAnnealer(const TspInstance& instance, Method method, const MethodSettings& s,
                 std::uint64_t seed, MethodRun& run) {
  const auto model = BuildTspQubo(instance, s.penalty_a.value_or(DefaultPenalty(instance)));
  SaSchedule sa;
  SqaSchedule sqa;
  if (method == Method::kSa) {
    sa = DefaultSaSchedule(model, s.sa_sweeps.value_or(s.replicas * s.sqa_sweeps));
    if (s.t_initial) sa.t_initial = *s.t_initial;
    if (s.t_final) sa.t_final = *s.t_final;
  } else {
    sqa = DefaultSqaSchedule(model, s.sqa_sweeps, s.replicas);
    if (s.gamma_initial) sqa.gamma_initial = *s.gamma_initial;
    if (s.gamma_final) sqa.gamma_final = *s.gamma_final;
    if (s.sqa_temperature) sqa.temperature = *s.sqa_temperature;
  }
  for (int r = 0; r < s.anneal_runs; ++r) {
    const auto run_seed = DeriveSeed({seed, static_cast<std::uint64_t>(r)});
    auto result = method == Method::kSa ? SimulatedAnnealing(model, sa, run_seed)
                                        : SimulatedQuantumAnnealing(model, sqa, run_seed);
    auto tour = Decode(instance, result.best_assignment);
    if (tour && (!run.tour || tour->length() < run.tour->length())) {
      run.tour = std::move(tour);
      run.energy_trace = std::move(result.energy_trace);
    }
  }
  if (!run.tour) run.error = "annealer ended in an invalid encoding";
}

void RunSchrodinger(const TspInstance& instance, const MethodSettings& s, std::uint64_t seed,
                    MethodRun& run) {
  const auto model = BuildTspQubo(instance, s.penalty_a.value_or(DefaultPenalty(instance)));
  AnnealSchedule schedule;
  schedule.t_final = s.evolution_time;
  schedule.steps = s.evolution_steps.value_or(
      std::max(kMinEvolutionSteps, static_cast<int>(std::ceil(100.0 * s.evolution_time))));
  auto evolved = Evolve(model, schedule);
  for (const auto& x : SampleAssignments(evolved.state, s.shots, seed)) {
    auto tour = Decode(instance, x);
    if (tour && (!run.tour || tour->length() < run.tour->length())) run.tour = std::move(tour);
  }
  run.evolution = std::move(evolved.trace);
  if (!run.tour) run.error = "no valid tour among " + std::to_string(s.shots) + " shots";
}

void RunHeatmapSearch(const TspInstance& instance, const MethodSettings& s, std::uint64_t seed,
                      MethodRun& run) {
  HeatmapConfig hc = s.heatmap;
  hc.seed = seed;
  auto heat = OptimizeHeatmap(instance, hc);
  SearchParams sp = s.search;
  sp.seed = DeriveSeed({seed, 1});
  sp.m_top = std::min(sp.m_top, instance.size() - 1);
  auto found = GuidedSearch(instance, heat.heatmap, sp);
  run.seconds = heat.wall_time;
  run.search_seconds = found.wall_time;
  run.tour = std::move(found.best_tour);
  run.heatmap = std::move(heat);
}

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

std::string Fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

std::string RowTime(const BenchRow& row) {
  std::string t = FormatDuration(row.mean_time_seconds);
  if (row.mean_search_seconds) t += " +" + FormatDuration(*row.mean_search_seconds);
  return t;
}

}  // namespace

std::string MethodName(Method method) {
  switch (method) {
    case Method::kSa:
      return "sa";
    case Method::kSqa:
      return "sqa";
    case Method::kSchrodinger:
      return "schrodinger";
    case Method::kHeatmapSearch:
      return "heatmap+search";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  if (name == "sa") return Method::kSa;
  if (name == "sqa") return Method::kSqa;
  if (name == "schrodinger") return Method::kSchrodinger;
  if (name == "heatmap+search" || name == "heatmap") return Method::kHeatmapSearch;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected sa, sqa, schrodinger or heatmap+search)");
}

std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (auto p : parts) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::vector<TspInstance> GenerateInstances(int n, int count, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("instances need n >= 2");
  if (count < 1) throw std::invalid_argument("instance count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TspInstance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<Point> pts(n);
    for (auto& p : pts) {
      p.x = unit(rng);
      p.y = unit(rng);
    }
    out.push_back(TspInstance::FromCoordinates(std::move(pts)));
  }
  return out;
}

void MethodSettings::Validate() const {
  if (penalty_a && !(*penalty_a > 0.0)) throw std::invalid_argument("penalty A must be positive");
  if (anneal_runs < 1) throw std::invalid_argument("anneal runs must be >= 1");
  if (sqa_sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
  if (replicas < 2) throw std::invalid_argument("replicas must be >= 2");
  if (sa_sweeps && *sa_sweeps < 1) throw std::invalid_argument("SA sweeps must be >= 1");
  if (!(evolution_time > 0.0)) throw std::invalid_argument("t_f must be positive");
  if (evolution_steps && *evolution_steps < kMinEvolutionSteps) {
    throw std::invalid_argument("evolution steps must be >= " +
                                std::to_string(kMinEvolutionSteps));
  }
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  heatmap.Validate();
}

MethodRun RunMethod(const TspInstance& instance, Method method, const MethodSettings& settings,
                    std::uint64_t seed) {
  settings.Validate();
  MethodRun run;
  const auto start = Clock::now();
  switch (method) {
    case Method::kSa:
    case Method::kSqa:
      RunAnnealer(instance, method, settings, seed, run);
      break;
    case Method::kSchrodinger:
      RunSchrodinger(instance, settings, seed, run);
      break;
    case Method::kHeatmapSearch:
      RunHeatmapSearch(instance, settings, seed, run);
      return run;
  }
  run.seconds = Since(start);
  return run;
}

void BenchConfig::Validate() const {
  if (sizes.empty()) throw std::invalid_argument("no sizes to benchmark");
  if (methods.empty()) throw std::invalid_argument("no methods to benchmark");
  if (instances_per_size < 1) throw std::invalid_argument("instances per size must be >= 1");
  for (int n : sizes) {
    if (n < 2) throw std::invalid_argument("sizes must be >= 2");
    const bool schrodinger =
        std::find(methods.begin(), methods.end(), Method::kSchrodinger) != methods.end();
    if (schrodinger && n * n > kMaxSimulatedQubits) {
      throw std::invalid_argument("schrodinger needs n <= 4 (n^2 qubits, cap " +
                                  std::to_string(kMaxSimulatedQubits) + "); got n = " +
                                  std::to_string(n));
    }
  }
  settings.Validate();
}

std::vector<BenchRow> RunBenchmark(const BenchConfig& config) {
  config.Validate();
  const int m = static_cast<int>(config.methods.size());
  std::vector<BenchRow> rows;
  for (int n : config.sizes) {
    const auto instances = GenerateInstances(
        n, config.instances_per_size, DeriveSeed({config.seed, static_cast<std::uint64_t>(n)}));
    const bool exact = n <= kHeldKarpMaxCities;
    std::vector<std::vector<InstanceOutcome>> outcomes(m);
    for (int i = 0; i < config.instances_per_size; ++i) {
      const auto& instance = instances[i];
      for (int k = 0; k < m; ++k) {
        InstanceOutcome o;
        o.index = i;
        const auto seed =
            DeriveSeed({config.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i),
                        static_cast<std::uint64_t>(k)});
        try {
          auto run = RunMethod(instance, config.methods[k], config.settings, seed);
          o.seconds = run.seconds;
          o.search_seconds = run.search_seconds;
          if (run.tour) {
            o.ok = true;
            o.length = run.tour->length();
          } else {
            o.error = run.error;
          }
        } catch (const std::exception& e) {
          o.error = e.what();
        }
        outcomes[k].push_back(std::move(o));
      }
      double reference = 0.0;
      if (exact) {
        reference = HeldKarp(instance).optimal_length;
      } else {
        bool any = false;
        for (int k = 0; k < m; ++k) {
          const auto& o = outcomes[k].back();
          if (o.ok && (!any || o.length < reference)) reference = o.length;
          any = any || o.ok;
        }
      }
      for (int k = 0; k < m; ++k) {
        auto& o = outcomes[k].back();
        o.reference = reference;
        if (o.ok) o.gap_percent = GapPercent(o.length, reference);
      }
    }
    for (int k = 0; k < m; ++k) {
      BenchRow row;
      row.method = config.methods[k];
      row.n = n;
      row.instances = config.instances_per_size;
      row.exact_reference = exact;
      std::vector<double> lengths, gaps, times, search;
      for (const auto& o : outcomes[k]) {
        if (!o.ok) {
          ++row.failures;
          continue;
        }
        lengths.push_back(o.length);
        gaps.push_back(o.gap_percent);
        times.push_back(o.seconds);
        if (o.search_seconds) search.push_back(*o.search_seconds);
      }
      row.mean_length = Mean(lengths);
      row.gap_percent = Mean(gaps);
      row.mean_time_seconds = Mean(times);
      if (!search.empty()) row.mean_search_seconds = Mean(search);
      row.outcomes = std::move(outcomes[k]);
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [&](const BenchRow& a, const BenchRow& b) {
    const auto ia = std::find(config.methods.begin(), config.methods.end(), a.method);
    const auto ib = std::find(config.methods.begin(), config.methods.end(), b.method);
    return ia < ib;
  });
  return rows;
}

std::vector<ReferenceEntry> LoadReferenceTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference table '" + path + "'");
  std::vector<ReferenceEntry> out;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& row : doc.at("rows")) {
      for (const auto& [size, r] : row.at("results").items()) {
        out.push_back({row.at("method").get<std::string>(), row.value("type", std::string()),
                       std::stoi(size), r.at("length").get<double>(),
                       r.at("gap_percent").get<double>(), r.value("time", std::string())});
      }
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("reference table '" + path + "': " + e.what());
  }
  return out;
}

std::string FormatDuration(double seconds) {
  if (seconds < 60.0) return Fixed(seconds, 2) + "s";
  if (seconds < 3600.0) return Fixed(seconds / 60.0, 2) + "m";
  return Fixed(seconds / 3600.0, 2) + "h";
}

std::string FormatTable(const std::vector<BenchRow>& rows,
                        const std::vector<ReferenceEntry>& reference) {
  std::vector<std::vector<std::string>> cells = {
      {"Method", "n", "Length", "Gap (%)", "Time", "Gap vs", "Failed"}};
  for (const auto& r : rows) {
    cells.push_back({MethodName(r.method), std::to_string(r.n), Fixed(r.mean_length, 4),
                     Fixed(r.gap_percent, 4) + "%", RowTime(r),
                     r.exact_reference ? "held-karp" : "best found",
                     std::to_string(r.failures) + "/" + std::to_string(r.instances)});
  }
  std::vector<int> sizes;
  for (const auto& r : rows) {
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
  }
  for (const auto& e : reference) {
    if (std::find(sizes.begin(), sizes.end(), e.n) == sizes.end()) continue;
    cells.push_back({"[published] " + e.method, std::to_string(e.n), Fixed(e.length, 4),
                     Fixed(e.gap_percent, 4) + "%", e.time, "concorde", "-"});
  }
  std::vector<size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (size_t i = 0; i < cells.size(); ++i) {
    for (size_t c = 0; c < cells[i].size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[i][c];
    }
    out << '\n';
    if (i == 0) {
      size_t total = 0;
      for (size_t w : width) total += w + 2;
      out << std::string(total - 2, '-') << '\n';
    }
  }
  return out.str();
}

std::string FormatCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "method,n,instances,failures,mean_length,gap_percent,exact_reference,"
         "mean_time_seconds,mean_search_seconds\n";
  for (const auto& r : rows) {
    out << MethodName(r.method) << ',' << r.n << ',' << r.instances << ',' << r.failures << ','
        << r.mean_length << ',' << r.gap_percent << ',' << (r.exact_reference ? 1 : 0) << ','
        << r.mean_time_seconds << ',';
    if (r.mean_search_seconds) out << *r.mean_search_seconds;
    out << '\n';
  }
  return out.str();
}

std::string FormatJson(const std::vector<BenchRow>& rows) {
  nlohmann::json doc;
  doc["format"] = "qtsp-bench";
  doc["version"] = 1;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["method"] = MethodName(r.method);
    row["n"] = r.n;
    row["instances"] = r.instances;
    row["failures"] = r.failures;
    row["mean_length"] = r.mean_length;
    row["gap_percent"] = r.gap_percent;
    row["exact_reference"] = r.exact_reference;
    row["mean_time_seconds"] = r.mean_time_seconds;
    if (r.mean_search_seconds) row["mean_search_seconds"] = *r.mean_search_seconds;
    row["outcomes"] = nlohmann::json::array();
    for (const auto& o : r.outcomes) {
      nlohmann::json j;
      j["index"] = o.index;
      j["ok"] = o.ok;
      if (o.ok) {
        j["length"] = o.length;
        j["gap_percent"] = o.gap_percent;
      } else {
        j["error"] = o.error;
      }
      j["reference"] = o.reference;
      j["seconds"] = o.seconds;
      if (o.search_seconds) j["search_seconds"] = *o.search_seconds;
      row["outcomes"].push_back(j);
    }
    doc["rows"].push_back(row);
  }
  return doc.dump(2) + "\n";
}

}  // namespace qtsp
