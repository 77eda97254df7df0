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

#include "qtsp/local_search.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qtsp {
namespace {

constexpr double kWeightFloor = 1e-9;

using Clock = std::chrono::steady_clock;

void CheckHeatmap(const TspInstance& instance, const Heatmap& heatmap) {
  if (heatmap.size() != instance.size() || heatmap.values.cols() != instance.size()) {
    throw std::invalid_argument("heatmap is " + std::to_string(heatmap.size()) + "x" +
                                std::to_string(heatmap.values.cols()) + " but the instance has " +
                                std::to_string(instance.size()) + " cities");
  }
}

// L_uv for every pair. Missing edges score 0 so they are only taken when
// nothing else is left.
Eigen::MatrixXd ScoreMatrix(const TspInstance& instance, const Heatmap& heatmap,
                            const SearchParams& params) {
  const double tau_d = params.tau_d.value_or(instance.mean_distance());
  Eigen::MatrixXd l = heatmap.values;
  if (params.lambda != 0.0) {
    l += params.lambda * (-instance.distances().array() / tau_d).exp().matrix();
  }
  const int n = instance.size();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!instance.has_edge(u, v)) l(u, v) = 0.0;
    }
  }
  return l;
}

std::vector<ScoredCandidate> TopCandidates(const Eigen::MatrixXd& scores, City current,
                                           const std::vector<bool>& excluded, int m_top) {
  std::vector<ScoredCandidate> out;
  for (City v = 0; v < static_cast<City>(scores.cols()); ++v) {
    if (v == current || excluded[v]) continue;
    const double s = scores(current, v);
    out.push_back({v, s, std::max(s, kWeightFloor)});
  }
  const auto keep = std::min<size_t>(out.size(), static_cast<size_t>(m_top));
  std::partial_sort(out.begin(), out.begin() + keep, out.end(),
                    [](const ScoredCandidate& a, const ScoredCandidate& b) {
                      return a.score > b.score || (a.score == b.score && a.city < b.city);
                    });
  out.resize(keep);
  return out;
}

Tour Construct(const TspInstance& instance, const Eigen::MatrixXd& scores,
               const SearchParams& params, std::mt19937_64& rng) {
  const int n = instance.size();
  std::vector<bool> visited(n, false);
  std::vector<City> order;
  order.reserve(n);
  City current = std::uniform_int_distribution<City>(0, n - 1)(rng);
  visited[current] = true;
  order.push_back(current);
  while (static_cast<int>(order.size()) < n) {
    const auto pool = TopCandidates(scores, current, visited, params.m_top);
    current = pool.size() == 1 ? pool.front().city : pool[SampleCandidate(pool, rng)].city;
    visited[current] = true;
    order.push_back(current);
  }
  return Tour(instance, std::move(order));
}

// One sequential move: returns the new cycle if some closure beats `length`.
std::optional<std::vector<City>> TryImprove(const TspInstance& instance,
                                            const Eigen::MatrixXd& scores,
                                            const SearchParams& params, const Tour& incumbent,
                                            std::mt19937_64& rng) {
  const int n = incumbent.size();
  const double length = incumbent.length();
  const double tolerance = 1e-10 * std::max(1.0, length);
  const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
  const bool forward = std::uniform_int_distribution<int>(0, 1)(rng) == 1;

  // p[0] = u2, ..., p[n-1] = u1 after dropping the edge (u1, u2).
  std::vector<City> p(n);
  for (int k = 0; k < n; ++k) {
    const int idx = forward ? i + 1 + k : i - 1 - k;
    p[k] = incumbent[((idx % n) + n) % n];
  }
  const City u1 = p[n - 1];
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[p[k]] = k;
  double path = length - instance.distance(u1, p[0]);

  std::vector<bool> excluded(n, false);
  excluded[u1] = true;
  for (int step = 0; step < params.k_max; ++step) {
    const City head = p[0];
    excluded[p[1]] = true;
    auto pool = TopCandidates(scores, head, excluded, params.m_top);
    excluded[p[1]] = false;
    if (pool.empty()) return std::nullopt;

    double best = length - tolerance;
    int best_index = -1;
    for (size_t c = 0; c < pool.size(); ++c) {
      const City v = pool[c].city;
      const City before = p[pos[v] - 1];
      const double closed = path + instance.distance(head, v) - instance.distance(before, v) +
                            instance.distance(before, u1);
      if (closed < best) {
        best = closed;
        best_index = static_cast<int>(c);
      }
    }
    const int pick = best_index >= 0 ? best_index : SampleCandidate(pool, rng);
    const City v = pool[pick].city;
    const int k = pos[v];
    path += instance.distance(head, v) - instance.distance(p[k - 1], v);
    std::reverse(p.begin(), p.begin() + k);
    for (int q = 0; q < k; ++q) pos[p[q]] = q;
    if (best_index >= 0) return p;
  }
  return std::nullopt;
}

double Elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void SearchParams::Validate(int cities) const {
  if (k_max < 1) throw std::invalid_argument("K (edge removals) must be >= 1");
  if (m_top < 1) throw std::invalid_argument("M (candidate pool) must be >= 1");
  if (m_top > cities - 1) {
    throw std::invalid_argument("M = " + std::to_string(m_top) + " exceeds n - 1 = " +
                                std::to_string(cities - 1));
  }
  if (t_attempts < 1) throw std::invalid_argument("T (attempts) must be >= 1");
  if (max_restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (time_budget && !(*time_budget > 0.0)) {
    throw std::invalid_argument("time budget must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and nonnegative");
  }
  if (tau_d && !(*tau_d > 0.0)) throw std::invalid_argument("tau_d must be positive");
}

std::vector<ScoredCandidate> CandidateScores(const TspInstance& instance, const Heatmap& heatmap,
                                             City current, const std::vector<bool>& excluded,
                                             const SearchParams& params) {
  CheckHeatmap(instance, heatmap);
  if (static_cast<int>(excluded.size()) != instance.size()) {
    throw std::invalid_argument("exclusion mask size does not match the instance");
  }
  auto out = TopCandidates(ScoreMatrix(instance, heatmap, params), current, excluded,
                           params.m_top);
  if (out.empty()) throw std::invalid_argument("every city is already visited");
  return out;
}

int SampleCandidate(const std::vector<ScoredCandidate>& candidates, std::mt19937_64& rng) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to sample");
  std::vector<double> weights;
  weights.reserve(candidates.size());
  for (const auto& c : candidates) weights.push_back(c.weight);
  return std::discrete_distribution<int>(weights.begin(), weights.end())(rng);
}

Tour ConstructTour(const TspInstance& instance, const Heatmap& heatmap, const SearchParams& params,
                   std::mt19937_64& rng) {
  params.Validate(instance.size());
  CheckHeatmap(instance, heatmap);
  return Construct(instance, ScoreMatrix(instance, heatmap, params), params, rng);
}

std::variant<Improved, NoImprovement> ExpandTour(const TspInstance& instance,
                                                 const Heatmap& heatmap,
                                                 const SearchParams& params,
                                                 const Tour& incumbent, std::mt19937_64& rng) {
  params.Validate(instance.size());
  CheckHeatmap(instance, heatmap);
  if (incumbent.size() != instance.size()) {
    throw std::invalid_argument("incumbent tour does not match the instance");
  }
  // Fewer than four cities admit a single cycle.
  if (instance.size() < 4) return NoImprovement{0};
  const auto scores = ScoreMatrix(instance, heatmap, params);
  for (int attempt = 1; attempt <= params.t_attempts; ++attempt) {
    auto order = TryImprove(instance, scores, params, incumbent, rng);
    if (!order) continue;
    Tour candidate(instance, std::move(*order));
    if (candidate.length() < incumbent.length()) return Improved{std::move(candidate), attempt};
  }
  return NoImprovement{params.t_attempts};
}

SearchResult GuidedSearch(const TspInstance& instance, const Heatmap& heatmap,
                          const SearchParams& params) {
  params.Validate(instance.size());
  CheckHeatmap(instance, heatmap);
  const auto start = Clock::now();
  const auto out_of_time = [&] {
    return params.time_budget && Elapsed(start) >= *params.time_budget;
  };

  std::optional<Tour> best;
  std::vector<std::pair<double, double>> trace;
  const auto offer = [&](const Tour& tour) {
    if (!best || tour.length() < best->length()) {
      best = tour;
      trace.emplace_back(Elapsed(start), tour.length());
    }
  };

  int restarts = 0;
  int attempts = 0;
  for (int r = 0; r < params.max_restarts; ++r) {
    if (best && out_of_time()) break;
    // Each restart gets its own stream so restarts are independent of order.
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                      static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    ++restarts;
    Tour current = ConstructTour(instance, heatmap, params, rng);
    offer(current);
    while (!out_of_time()) {
      auto step = ExpandTour(instance, heatmap, params, current, rng);
      if (auto* done = std::get_if<NoImprovement>(&step)) {
        attempts += done->attempts;
        break;
      }
      auto& improved = std::get<Improved>(step);
      attempts += improved.attempts;
      current = std::move(improved.tour);
      offer(current);
    }
  }
  return SearchResult{std::move(*best), restarts, attempts, std::move(trace), Elapsed(start)};
}

}  // namespace qtsp
