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

#ifndef QTSP_ISING_H_
#define QTSP_ISING_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qtsp/qubo.h"

namespace qtsp {

using Spin = std::int8_t;

// E(s) = offset - sum_i h_i s_i - sum_{i<j} J_ij s_i s_j, s_i in {-1, +1}.
// Only the strict upper triangle of J is populated.
struct IsingModel {
  Eigen::VectorXd h;
  Eigen::MatrixXd j;
  double offset = 0.0;

  int size() const { return static_cast<int>(h.size()); }
};

// Substitutes x = (s + 1) / 2 so that the Ising energy of 2x - 1 equals the
// QUBO energy of x.
IsingModel ToIsing(const QuboModel& model);

double IsingEnergy(const IsingModel& model, std::span<const Spin> spins);

std::vector<Spin> ToSpins(const BinaryAssignment& x);
BinaryAssignment FromSpins(std::span<const Spin> spins);

}  // namespace qtsp

#endif  // QTSP_ISING_H_
