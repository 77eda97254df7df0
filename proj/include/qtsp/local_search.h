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

// Heatmap-guided tour construction and k-opt style improvement.
//
// Successors are scored by L_uv = H_uv + lambda * exp(-D_uv / tau_d) and the
// top M are kept. A restart builds a tour by sampling successors from that
// pool, then runs improvement attempts: drop an edge (u1, u2) of the incumbent,
// walk the resulting Hamiltonian path from u2, and at each of up to K steps
// link the path head to a candidate v, drop the edge that v's predecessor
// shared with it, and try to close the cycle back to u1. The first strictly
// shorter closure is accepted. T attempts in a row without one end the
// restart.

#ifndef QTSP_LOCAL_SEARCH_H_
#define QTSP_LOCAL_SEARCH_H_

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "qtsp/heatmap.h"
#include "qtsp/instance.h"

namespace qtsp {

struct SearchParams {
  int k_max = 10;
  int m_top = 5;
  int t_attempts = 50;
  int max_restarts = 20;
  // Wall-clock seconds; unset means restart-count mode, which is deterministic.
  std::optional<double> time_budget;
  std::uint64_t seed = 0;
  double lambda = 0.1;
  // Unset means the mean inter-city distance.
  std::optional<double> tau_d;

  // Throws std::invalid_argument; m_top must not exceed cities - 1.
  void Validate(int cities) const;
};

struct ScoredCandidate {
  City city = 0;
  double score = 0.0;
  double weight = 0.0;  // max(score, 1e-9)
};

// Cities v with excluded[v] false and v != current, best score first (ties by
// index), truncated to params.m_top. Throws if no city is eligible.
std::vector<ScoredCandidate> CandidateScores(const TspInstance& instance, const Heatmap& heatmap,
                                             City current, const std::vector<bool>& excluded,
                                             const SearchParams& params);

// Index into a candidate list drawn with probability proportional to weight.
int SampleCandidate(const std::vector<ScoredCandidate>& candidates, std::mt19937_64& rng);

// Heat-guided construction from a uniformly random start city.
Tour ConstructTour(const TspInstance& instance, const Heatmap& heatmap, const SearchParams& params,
                   std::mt19937_64& rng);

struct Improved {
  Tour tour;
  int attempts = 0;
};

struct NoImprovement {
  int attempts = 0;
};

// Up to params.t_attempts improvement attempts on the incumbent.
std::variant<Improved, NoImprovement> ExpandTour(const TspInstance& instance,
                                                 const Heatmap& heatmap,
                                                 const SearchParams& params,
                                                 const Tour& incumbent, std::mt19937_64& rng);

struct SearchResult {
  Tour best_tour;
  int restarts_used = 0;
  int attempts_used = 0;
  // (seconds since start, best length), lengths strictly decreasing.
  std::vector<std::pair<double, double>> improvement_trace;
  double wall_time = 0.0;
};

SearchResult GuidedSearch(const TspInstance& instance, const Heatmap& heatmap,
                          const SearchParams& params);

}  // namespace qtsp

#endif  // QTSP_LOCAL_SEARCH_H_
