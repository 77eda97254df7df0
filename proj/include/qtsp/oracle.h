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

// Exact reference solvers.

#ifndef QTSP_ORACLE_H_
#define QTSP_ORACLE_H_

#include <cstdint>
#include <functional>

#include "qtsp/instance.h"
#include "qtsp/qubo.h"

namespace qtsp {

inline constexpr int kBruteForceMaxCities = 10;
inline constexpr int kHeldKarpMaxCities = 20;
inline constexpr int kExhaustiveQuboMaxVariables = 25;

struct OracleResult {
  double optimal_length = 0.0;
  Tour optimal_tour;
  std::int64_t nodes_explored = 0;
  double wall_time = 0.0;
};

// Enumerates the (n-1)!/2 undirected tours with city 0 fixed. Among equal
// lengths the lexicographically smallest canonical order wins.
OracleResult BruteForceTsp(const TspInstance& instance);

// Bitmask dynamic program over subsets of cities 1..n-1. The returned tour is
// in canonical order and its length is recomputed from the tour.
OracleResult HeldKarp(const TspInstance& instance);

struct QuboMinimum {
  BinaryAssignment assignment;
  double energy = 0.0;
};

// Gray-code scan of all 2^m assignments with incremental energy updates.
// Ties go to the lowest assignment index.
QuboMinimum ExhaustiveQuboMin(const QuboModel& model);

// The scan behind ExhaustiveQuboMin: calls visit(index, energy) once per
// assignment in Gray-code order, where bit b of `index` is x_b.
void ScanQuboGrayCode(const QuboModel& model,
                      const std::function<void(std::uint64_t, double)>& visit);

}  // namespace qtsp

#endif  // QTSP_ORACLE_H_
