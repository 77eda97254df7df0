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

#include "qtsp/ising.h"

#include <stdexcept>

namespace qtsp {

IsingModel ToIsing(const QuboModel& model) {
  const int m = model.size();
  const auto& q = model.q();
  IsingModel ising;
  ising.h = Eigen::VectorXd::Zero(m);
  ising.j = Eigen::MatrixXd::Zero(m, m);
  ising.offset = model.offset();
  // Q_ii x_i            = Q_ii (s_i + 1) / 2
  // 2 Q_ij x_i x_j, i<j = Q_ij (s_i s_j + s_i + s_j + 1) / 2
  for (int i = 0; i < m; ++i) {
    ising.offset += 0.5 * q(i, i);
    ising.h(i) -= 0.5 * q(i, i);
    for (int k = i + 1; k < m; ++k) {
      const double c = q(i, k);
      if (c == 0.0) continue;
      ising.offset += 0.5 * c;
      ising.h(i) -= 0.5 * c;
      ising.h(k) -= 0.5 * c;
      ising.j(i, k) = -0.5 * c;
    }
  }
  return ising;
}

double IsingEnergy(const IsingModel& model, std::span<const Spin> spins) {
  const int m = model.size();
  if (static_cast<int>(spins.size()) != m) {
    throw std::invalid_argument("spin vector length does not match model");
  }
  for (Spin s : spins) {
    if (s != 1 && s != -1) throw std::invalid_argument("spins must be +1 or -1");
  }
  double e = model.offset;
  for (int i = 0; i < m; ++i) {
    e -= model.h(i) * spins[i];
    for (int k = i + 1; k < m; ++k) e -= model.j(i, k) * spins[i] * spins[k];
  }
  return e;
}

std::vector<Spin> ToSpins(const BinaryAssignment& x) {
  std::vector<Spin> s(x.size());
  for (int i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
  return s;
}

BinaryAssignment FromSpins(std::span<const Spin> spins) {
  BinaryAssignment x(static_cast<int>(spins.size()));
  for (size_t i = 0; i < spins.size(); ++i) x.set(static_cast<int>(i), spins[i] > 0);
  return x;
}

}  // namespace qtsp
