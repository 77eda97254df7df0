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

// qtsp command line: gen, solve, search, oracle, bench.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtsp/bench.h"
#include "qtsp/heatmap.h"
#include "qtsp/io.h"
#include "qtsp/local_search.h"
#include "qtsp/oracle.h"
#include "qtsp/qubo.h"

namespace {

using namespace qtsp;

enum class Format { kTable, kCsv, kJson };

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  Format format = Format::kTable;
};

// Flags shared by the subcommands that take an instance file.
struct InstanceFlags {
  std::string path;
  bool tsplib_round = false;

  TspInstance Load() const { return LoadInstance(path, {tsplib_round}); }
};

void AddInstanceFlags(CLI::App* app, InstanceFlags& f) {
  app->add_option("--instance", f.path, "Instance file (JSON, or TSPLIB for *.tsp)")
      ->required()
      ->check(CLI::ExistingFile);
  app->add_flag("--tsplib-round", f.tsplib_round, "Round TSPLIB distances with nint()");
}

struct SearchFlags {
  int k = 10;
  int m = 5;
  int t = 50;
  int restarts = 20;
  double time_budget = 0.0;
  double lambda = 0.1;

  SearchParams Params(std::uint64_t seed) const {
    SearchParams p;
    p.k_max = k;
    p.m_top = m;
    p.t_attempts = t;
    p.max_restarts = restarts;
    if (time_budget > 0.0) p.time_budget = time_budget;
    p.lambda = lambda;
    p.seed = seed;
    return p;
  }
};

void AddSearchFlags(CLI::App* app, SearchFlags& f) {
  app->add_option("--K", f.k, "Maximum edge removals per improvement attempt")
      ->capture_default_str();
  app->add_option("--M", f.m, "Candidate pool size")->capture_default_str();
  app->add_option("--T", f.t, "Attempts without improvement before a restart")
      ->capture_default_str();
  app->add_option("--restarts", f.restarts, "Number of restarts")->capture_default_str();
  app->add_option("--time-budget", f.time_budget, "Wall-clock limit in seconds (0 = none)")
      ->capture_default_str();
  app->add_option("--lambda", f.lambda, "Weight of the distance prior in candidate scores")
      ->capture_default_str();
}

std::string Number(double x) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return out.str();
}

std::string JoinOrder(const std::vector<City>& order, char sep) {
  std::string s;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(order[i]);
  }
  return s;
}

// Prints a tour summary in the requested format and writes the result file.
void EmitTour(const Globals& g, const TourRecord& record, double seconds,
              const std::string& extra = "") {
  switch (g.format) {
    case Format::kTable:
      std::cout << "method  " << record.method << "\n"
                << "n       " << record.order.size() << "\n"
                << "length  " << Number(record.length) << "\n"
                << "time    " << FormatDuration(seconds) << "\n"
                << "tour    " << JoinOrder(record.order, ' ') << "\n"
                << extra;
      break;
    case Format::kCsv:
      std::cout << "method,n,length,seconds,tour\n"
                << record.method << ',' << record.order.size() << ',' << Number(record.length)
                << ',' << Number(seconds) << ',' << JoinOrder(record.order, ' ') << "\n";
      break;
    case Format::kJson: {
      nlohmann::json doc = {{"method", record.method},  {"n", record.order.size()},
                            {"length", record.length},  {"seconds", seconds},
                            {"tour", record.order}};
      std::cout << doc.dump(2) << "\n";
      break;
    }
  }
  if (!g.out.empty()) {
    auto file = OpenOutput(g.out);
    WriteTour(record, file);
  }
}

struct SolveFlags {
  InstanceFlags instance;
  std::string method = "sqa";
  std::string trace;
  std::string heatmap_out;
  double penalty = 0.0;
  int runs = 1;
  // annealers
  int sweeps = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  int replicas = 20;
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double temperature = 0.0;
  // schrodinger
  double tf = 10.0;
  int steps = 0;
  int shots = 100;
  // heatmap
  double tau = 0.5;
  double lr = 0.0;
  std::string mode = "direct";
  int hidden = 32;
  SearchFlags search;
};

MethodSettings Settings(const SolveFlags& f) {
  MethodSettings s;
  if (f.penalty > 0.0) s.penalty_a = f.penalty;
  s.anneal_runs = f.runs;
  s.replicas = f.replicas;
  if (f.sweeps > 0) {
    s.sqa_sweeps = f.sweeps;
    s.sa_sweeps = f.sweeps;
  }
  if (f.t0 > 0.0) s.t_initial = f.t0;
  if (f.t1 > 0.0) s.t_final = f.t1;
  if (f.gamma0 > 0.0) s.gamma_initial = f.gamma0;
  if (f.gamma1 > 0.0) s.gamma_final = f.gamma1;
  if (f.temperature > 0.0) s.sqa_temperature = f.temperature;
  s.evolution_time = f.tf;
  if (f.steps > 0) s.evolution_steps = f.steps;
  s.shots = f.shots;
  s.heatmap.tau = f.tau;
  if (f.steps > 0) s.heatmap.steps = f.steps;
  if (f.lr > 0.0) s.heatmap.learning_rate = f.lr;
  if (f.penalty > 0.0) s.heatmap.penalty_a = f.penalty;
  s.heatmap.mode = f.mode == "encoder" ? HeatmapMode::kEncoder : HeatmapMode::kDirectLogits;
  s.heatmap.hidden = f.hidden;
  s.search = f.search.Params(0);
  return s;
}

void AddSolveFlags(CLI::App* app, SolveFlags& f) {
  AddInstanceFlags(app, f.instance);
  app->add_option("--method", f.method, "sa | sqa | schrodinger | heatmap | heatmap+search")
      ->check(CLI::IsMember({"sa", "sqa", "schrodinger", "heatmap", "heatmap+search"}))
      ->capture_default_str();
  app->add_option("--trace", f.trace,
                  "CSV trace: energy per sweep, evolution (t,A,B,...) or loss per step");
  app->add_option("--heatmap-out", f.heatmap_out, "Write the heatmap matrix (heatmap methods)");
  app->add_option("--penalty", f.penalty, "Penalty weight A (0 = method default)");
  app->add_option("--runs", f.runs, "Independent annealing runs, best kept")
      ->capture_default_str();
  app->add_option("--sweeps", f.sweeps,
                  "Sweeps (0 = 1000 for sqa, replicas x 1000 for sa)");
  app->add_option("--t0", f.t0, "SA initial temperature (0 = scaled default)");
  app->add_option("--t1", f.t1, "SA final temperature (0 = scaled default)");
  app->add_option("--replicas", f.replicas, "SQA Trotter slices")->capture_default_str();
  app->add_option("--gamma0", f.gamma0, "SQA initial transverse field (0 = scaled default)");
  app->add_option("--gamma1", f.gamma1, "SQA final transverse field (0 = scaled default)");
  app->add_option("--temperature", f.temperature, "SQA temperature (0 = scaled default)");
  app->add_option("--tf", f.tf, "Schrodinger evolution time")->capture_default_str();
  app->add_option("--steps", f.steps,
                  "Evolution steps (0 = 100 per unit time) or heatmap steps (0 = 500)");
  app->add_option("--shots", f.shots, "Samples drawn from the final state")
      ->capture_default_str();
  app->add_option("--tau", f.tau, "Edge-weight temperature in exp(-D/tau)")
      ->capture_default_str();
  app->add_option("--lr", f.lr, "Learning rate (0 = 4.0 direct, 0.01 encoder)");
  app->add_option("--mode", f.mode, "direct | encoder")
      ->check(CLI::IsMember({"direct", "encoder"}))
      ->capture_default_str();
  app->add_option("--hidden", f.hidden, "Encoder hidden width")->capture_default_str();
  AddSearchFlags(app, f.search);
}

int RunSolve(const Globals& g, const SolveFlags& f) {
  const auto instance = f.instance.Load();
  const auto settings = Settings(f);

  if (f.method == "heatmap") {
    HeatmapConfig config = settings.heatmap;
    config.seed = g.seed;
    const auto result = OptimizeHeatmap(instance, config);
    if (!f.trace.empty()) {
      auto file = OpenOutput(f.trace);
      WriteLossCsv(result.loss_trace, file);
    }
    const std::string heat_path = !f.heatmap_out.empty() ? f.heatmap_out : g.out;
    if (!heat_path.empty()) SaveHeatmap(result.heatmap, heat_path);
    const double first = result.loss_trace.front();
    const double last = result.loss_trace.back();
    switch (g.format) {
      case Format::kTable:
        std::cout << "initial loss  " << Number(first) << "\nfinal loss    " << Number(last)
                  << "\nsteps         " << config.steps << "\ntime          "
                  << FormatDuration(result.wall_time) << "\n";
        if (heat_path.empty()) WriteHeatmap(result.heatmap, std::cout);
        break;
      case Format::kCsv:
        WriteLossCsv(result.loss_trace, std::cout);
        break;
      case Format::kJson: {
        nlohmann::json doc = {{"initial_loss", first}, {"final_loss", last},
                              {"steps", config.steps}, {"seconds", result.wall_time},
                              {"loss_trace", result.loss_trace}};
        std::cout << doc.dump(2) << "\n";
        break;
      }
    }
    return 0;
  }

  const Method method = ParseMethod(f.method);
  auto run = RunMethod(instance, method, settings, g.seed);
  if (!f.trace.empty()) {
    auto file = OpenOutput(f.trace);
    if (run.evolution) {
      WriteEvolutionCsv(*run.evolution, file);
    } else if (run.heatmap) {
      WriteLossCsv(run.heatmap->loss_trace, file);
    } else {
      WriteEnergyCsv(run.energy_trace, file);
    }
  }
  if (!f.heatmap_out.empty() && run.heatmap) SaveHeatmap(run.heatmap->heatmap, f.heatmap_out);
  if (!run.tour) throw std::runtime_error(run.error);
  std::string extra;
  if (run.search_seconds) extra = "search  " + FormatDuration(*run.search_seconds) + "\n";
  EmitTour(g, {MethodName(method), run.tour->order(), run.tour->length()},
           run.seconds + run.search_seconds.value_or(0.0), extra);
  return 0;
}

struct SearchCommand {
  InstanceFlags instance;
  std::string heatmap;
  SearchFlags search;
};

int RunSearch(const Globals& g, const SearchCommand& c) {
  const auto instance = c.instance.Load();
  const auto heatmap = LoadHeatmap(c.heatmap);
  const auto result = GuidedSearch(instance, heatmap, c.search.Params(g.seed));
  std::string extra = "restarts " + std::to_string(result.restarts_used) + "\nattempts " +
                      std::to_string(result.attempts_used) + "\n";
  EmitTour(g, {"search", result.best_tour.order(), result.best_tour.length()}, result.wall_time,
           extra);
  return 0;
}

struct OracleCommand {
  InstanceFlags instance;
  std::string method = "heldkarp";
};

int RunOracle(const Globals& g, const OracleCommand& c) {
  const auto instance = c.instance.Load();
  if (c.method == "qubo") {
    const auto model = BuildTspQubo(instance, DefaultPenalty(instance));
    const auto start = std::chrono::steady_clock::now();
    const auto best = ExhaustiveQuboMin(model);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto decoded = DecodeAssignment(instance, best.assignment);
    const auto* tour = std::get_if<Tour>(&decoded);
    if (!tour) throw std::runtime_error("QUBO minimum does not decode to a tour");
    EmitTour(g, {"oracle-qubo", tour->order(), tour->length()}, seconds,
             "energy  " + Number(best.energy) + "\n");
    return 0;
  }
  const auto result = c.method == "brute" ? BruteForceTsp(instance) : HeldKarp(instance);
  EmitTour(g, {"oracle-" + c.method, result.optimal_tour.order(), result.optimal_length},
           result.wall_time, "nodes   " + std::to_string(result.nodes_explored) + "\n");
  return 0;
}

struct GenCommand {
  int n = 20;
  int count = 1;
};

int RunGen(const Globals& g, const GenCommand& c) {
  const auto instances = GenerateInstances(c.n, c.count, g.seed);
  for (int i = 0; i < c.count; ++i) {
    if (g.out.empty()) {
      WriteInstance(instances[i], std::cout);
    } else if (c.count == 1) {
      SaveInstance(instances[i], g.out);
    } else {
      SaveInstance(instances[i], g.out + "_" + std::to_string(i) + ".json");
    }
  }
  return 0;
}

struct BenchCommand {
  std::vector<int> sizes = {20};
  int instances = 10;
  std::vector<std::string> methods = {"heatmap+search"};
  std::string reference;
  std::string csv;
  SolveFlags solve;
};

int RunBench(const Globals& g, const BenchCommand& c) {
  BenchConfig config;
  config.sizes = c.sizes;
  config.instances_per_size = c.instances;
  config.methods.clear();
  for (const auto& m : c.methods) config.methods.push_back(ParseMethod(m));
  config.seed = g.seed;
  config.settings = Settings(c.solve);
  const auto rows = RunBenchmark(config);
  std::vector<ReferenceEntry> reference;
  if (!c.reference.empty()) reference = LoadReferenceTable(c.reference);
  switch (g.format) {
    case Format::kTable:
      std::cout << FormatTable(rows, reference);
      break;
    case Format::kCsv:
      std::cout << FormatCsv(rows);
      break;
    case Format::kJson:
      std::cout << FormatJson(rows);
      break;
  }
  if (!g.out.empty()) {
    auto file = OpenOutput(g.out);
    file << FormatJson(rows);
  }
  if (!c.csv.empty()) {
    auto file = OpenOutput(c.csv);
    file << FormatCsv(rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO annealers and heatmap-guided search for the TSP"};
  app.set_config("--config", "", "Read flags from a TOML/INI file ([solve], [bench], ...)");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (instance, result, heatmap or bench results)");
  const std::map<std::string, Format> formats = {
      {"table", Format::kTable}, {"csv", Format::kCsv}, {"json", Format::kJson}};
  app.add_option("--format", g.format, "table | csv | json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  GenCommand gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate uniform random instances");
  gen_cmd->add_option("--n", gen.n, "Cities")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Instances (files <out>_<i>.json when > 1)")
      ->capture_default_str();

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with one method");
  AddSolveFlags(solve_cmd, solve);

  SearchCommand search;
  auto* search_cmd = app.add_subcommand("search", "Guided local search on a heatmap file");
  AddInstanceFlags(search_cmd, search.instance);
  search_cmd->add_option("--heatmap", search.heatmap, "Heatmap matrix file")
      ->required()
      ->check(CLI::ExistingFile);
  AddSearchFlags(search_cmd, search.search);

  OracleCommand oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact solvers");
  AddInstanceFlags(oracle_cmd, oracle.instance);
  oracle_cmd->add_option("--method", oracle.method, "brute | heldkarp | qubo")
      ->check(CLI::IsMember({"brute", "heldkarp", "qubo"}))
      ->capture_default_str();

  BenchCommand bench;
  auto* bench_cmd = app.add_subcommand("bench", "Length / Gap / Time table over random instances");
  bench_cmd->add_option("--sizes", bench.sizes, "City counts")->delimiter(',');
  bench_cmd->add_option("--instances", bench.instances, "Instances per size")
      ->capture_default_str();
  bench_cmd->add_option("--methods", bench.methods, "sa,sqa,schrodinger,heatmap+search")
      ->delimiter(',');
  bench_cmd->add_option("--reference", bench.reference,
                        "Published reference table to show alongside (JSON)");
  bench_cmd->add_option("--csv", bench.csv, "Also write the rows as CSV");
  // The solver flags, minus the instance.
  SolveFlags& s = bench.solve;
  bench_cmd->add_option("--penalty", s.penalty, "Penalty weight A (0 = method default)");
  bench_cmd->add_option("--runs", s.runs, "Independent annealing runs, best kept");
  bench_cmd->add_option("--sweeps", s.sweeps, "Sweeps (0 = defaults)");
  bench_cmd->add_option("--t0", s.t0, "SA initial temperature");
  bench_cmd->add_option("--t1", s.t1, "SA final temperature");
  bench_cmd->add_option("--replicas", s.replicas, "SQA Trotter slices");
  bench_cmd->add_option("--gamma0", s.gamma0, "SQA initial transverse field");
  bench_cmd->add_option("--gamma1", s.gamma1, "SQA final transverse field");
  bench_cmd->add_option("--temperature", s.temperature, "SQA temperature");
  bench_cmd->add_option("--tf", s.tf, "Schrodinger evolution time");
  bench_cmd->add_option("--steps", s.steps, "Evolution or heatmap steps");
  bench_cmd->add_option("--shots", s.shots, "Samples from the final state");
  bench_cmd->add_option("--tau", s.tau, "Edge-weight temperature");
  bench_cmd->add_option("--lr", s.lr, "Heatmap learning rate");
  bench_cmd->add_option("--mode", s.mode, "direct | encoder")
      ->check(CLI::IsMember({"direct", "encoder"}));
  bench_cmd->add_option("--hidden", s.hidden, "Encoder hidden width");
  AddSearchFlags(bench_cmd, s.search);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen_cmd) return RunGen(g, gen);
    if (*solve_cmd) return RunSolve(g, solve);
    if (*search_cmd) return RunSearch(g, search);
    if (*oracle_cmd) return RunOracle(g, oracle);
    if (*bench_cmd) return RunBench(g, bench);
  } catch (const std::exception& e) {
    std::cerr << "qtsp: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
