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

#include "qtsp/oracle.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtsp {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

OracleResult BruteForceTsp(const TspInstance& instance) {
  const int n = instance.size();
  if (n > kBruteForceMaxCities) {
    throw std::invalid_argument("brute force limited to n <= " +
                                std::to_string(kBruteForceMaxCities));
  }
  const auto start = Clock::now();
  std::vector<City> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<City> best = order;
  double best_length = kInf;
  std::int64_t explored = 0;
  do {
    if (n > 2 && order[1] > order[n - 1]) continue;
    ++explored;
    const double length = TourLength(instance, order);
    if (length < best_length) {
      best_length = length;
      best = order;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));

  Tour tour(instance, std::move(best));
  return OracleResult{tour.length(), tour, explored, SecondsSince(start)};
}

OracleResult HeldKarp(const TspInstance& instance) {
  const int n = instance.size();
  if (n > kHeldKarpMaxCities) {
    throw std::invalid_argument("Held-Karp limited to n <= " +
                                std::to_string(kHeldKarpMaxCities));
  }
  const auto start = Clock::now();
  const auto& d = instance.distances();
  if (n == 2) {
    Tour tour(instance, {0, 1});
    return OracleResult{tour.length(), tour, 1, SecondsSince(start)};
  }

  // Cities 1..n-1 map to bits 0..k-1. cost[mask * k + last] is the cheapest
  // path that leaves city 0, visits exactly `mask` and ends at `last`.
  const int k = n - 1;
  const std::uint32_t full = (1U << k) - 1;
  std::vector<double> cost(static_cast<size_t>(full + 1) * k, kInf);
  for (int c = 0; c < k; ++c) cost[(1U << c) * k + c] = d(0, c + 1);

  std::int64_t explored = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int last = 0; last < k; ++last) {
      if (!(mask & (1U << last))) continue;
      const std::uint32_t rest = mask ^ (1U << last);
      if (rest == 0) continue;
      double best = kInf;
      for (int prev = 0; prev < k; ++prev) {
        if (!(rest & (1U << prev))) continue;
        best = std::min(best, cost[rest * k + prev] + d(prev + 1, last + 1));
      }
      cost[mask * k + last] = best;
      ++explored;
    }
  }

  int last = 0;
  double best_total = kInf;
  for (int c = 0; c < k; ++c) {
    const double total = cost[full * k + c] + d(c + 1, 0);
    if (total < best_total) {
      best_total = total;
      last = c;
    }
  }

  std::vector<City> reversed{last + 1};
  std::uint32_t mask = full;
  while (std::popcount(mask) > 1) {
    const std::uint32_t rest = mask ^ (1U << last);
    const double target = cost[mask * k + last];
    int pick = -1;
    for (int prev = 0; prev < k; ++prev) {
      if ((rest & (1U << prev)) &&
          cost[rest * k + prev] + d(prev + 1, last + 1) == target) {
        pick = prev;
        break;
      }
    }
    mask = rest;
    last = pick;
    reversed.push_back(last + 1);
  }
  std::vector<City> order{0};
  order.insert(order.end(), reversed.rbegin(), reversed.rend());
  Tour tour(instance, Tour(instance, std::move(order)).CanonicalOrder());
  return OracleResult{tour.length(), tour, explored, SecondsSince(start)};
}

void ScanQuboGrayCode(const QuboModel& model,
                      const std::function<void(std::uint64_t, double)>& visit) {
  const int m = model.size();
  if (m > kExhaustiveQuboMaxVariables) {
    throw std::invalid_argument("exhaustive QUBO scan limited to m <= " +
                                std::to_string(kExhaustiveQuboMaxVariables));
  }
  const auto& q = model.q();
  // field(i) = sum_j Q_ij x_j; flipping x_i by d = +-1 changes E by
  // 2 d field(i) + Q_ii.
  Eigen::VectorXd field = Eigen::VectorXd::Zero(m);
  std::uint64_t index = 0;
  double energy = model.offset();
  visit(index, energy);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    const double dir = (index >> bit) & 1U ? -1.0 : 1.0;
    energy += 2.0 * dir * field(bit) + q(bit, bit);
    field += dir * q.col(bit);
    index ^= std::uint64_t{1} << bit;
    visit(index, energy);
  }
}

QuboMinimum ExhaustiveQuboMin(const QuboModel& model) {
  constexpr double kTieTolerance = 1e-9;
  std::uint64_t best_index = 0;
  double best_energy = kInf;
  ScanQuboGrayCode(model, [&](std::uint64_t index, double energy) {
    if (energy < best_energy - kTieTolerance ||
        (energy <= best_energy + kTieTolerance && index < best_index)) {
      best_energy = std::min(best_energy, energy);
      best_index = index;
    }
  });
  auto x = BinaryAssignment::FromIndex(best_index, model.size());
  const double exact = QuboEnergy(model, x);
  return QuboMinimum{std::move(x), exact};
}

}  // namespace qtsp
