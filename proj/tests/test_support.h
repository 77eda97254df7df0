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

// Fixtures and reference evaluators written straight from the formulas, kept
// independent of the library code they check.

#ifndef QTSP_TESTS_TEST_SUPPORT_H_
#define QTSP_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qtsp/instance.h"
#include "qtsp/qubo.h"

namespace qtsp::testing {

inline TspInstance RandomInstance(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  return TspInstance::FromCoordinates(std::move(pts));
}

inline TspInstance UnitTriangle() {
  return TspInstance::FromCoordinates({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(0.75)}});
}

inline TspInstance UnitSquare() {
  return TspInstance::FromCoordinates({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

// Symmetric matrix with entries uniform in [-scale, scale].
inline Eigen::MatrixXd RandomSymmetric(int m, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd q(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      q(i, j) = u(rng);
      q(j, i) = q(i, j);
    }
  }
  return q;
}

inline BinaryAssignment RandomAssignment(int m, std::mt19937_64& rng) {
  std::vector<std::uint8_t> bits(m);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
  return BinaryAssignment(std::move(bits));
}

inline std::vector<City> RandomOrder(int n, std::mt19937_64& rng) {
  std::vector<City> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

// x_{u,j} at index u*n + j.
inline int X(const BinaryAssignment& x, int n, int u, int j) { return x[u * n + j]; }

// Sum_u (Sum_j x_uj - 1)^2 + Sum_j (Sum_u x_uj - 1)^2
//   + Sum_{(u,v) not an edge, ordered} Sum_j x_{u,j} x_{v,j+1}
inline double ReferenceConstraint(const TspInstance& instance, const BinaryAssignment& x) {
  const int n = instance.size();
  double f = 0.0;
  for (int u = 0; u < n; ++u) {
    int s = 0;
    for (int j = 0; j < n; ++j) s += X(x, n, u, j);
    f += (s - 1) * (s - 1);
  }
  for (int j = 0; j < n; ++j) {
    int s = 0;
    for (int u = 0; u < n; ++u) s += X(x, n, u, j);
    f += (s - 1) * (s - 1);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || instance.has_edge(u, v)) continue;
      for (int j = 0; j < n; ++j) f += X(x, n, u, j) * X(x, n, v, (j + 1) % n);
    }
  }
  return f;
}

// Sum_{(u,v) in E, u != v} D_uv Sum_j x_{u,j} x_{v,j+1}
inline double ReferenceCost(const TspInstance& instance, const BinaryAssignment& x) {
  const int n = instance.size();
  double c = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || !instance.has_edge(u, v)) continue;
      for (int j = 0; j < n; ++j) {
        c += instance.distance(u, v) * X(x, n, u, j) * X(x, n, v, (j + 1) % n);
      }
    }
  }
  return c;
}

// offset + Sum_ij Q_ij x_i x_j over the full matrix.
inline double ReferenceQuadratic(const Eigen::MatrixXd& q, double offset,
                                 const BinaryAssignment& x) {
  double e = offset;
  for (int i = 0; i < q.rows(); ++i) {
    for (int j = 0; j < q.cols(); ++j) e += q(i, j) * x[i] * x[j];
  }
  return e;
}

// Minimum over all n! orders, no symmetry reduction.
inline double ReferenceOptimum(const TspInstance& instance) {
  std::vector<City> order(instance.size());
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = 0.0;
    for (size_t j = 0; j < order.size(); ++j) {
      len += instance.distance(order[j], order[(j + 1) % order.size()]);
    }
    best = std::min(best, len);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// |a - b| <= rel * max(|a|, |b|) + floor.
inline bool RelativeClose(double a, double b, double rel, double floor) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + floor;
}

}  // namespace qtsp::testing

#endif  // QTSP_TESTS_TEST_SUPPORT_H_
