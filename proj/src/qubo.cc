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

#include "qtsp/qubo.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtsp {
namespace {

void CheckSize(int expected, int actual, const char* what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": assignment has " +
                                std::to_string(actual) + " entries, expected " +
                                std::to_string(expected));
  }
}

// Adds c * x_a * x_b to the symmetric matrix.
void AddPair(Eigen::MatrixXd& q, int a, int b, double c) {
  if (a == b) {
    q(a, a) += c;
  } else {
    q(a, b) += 0.5 * c;
    q(b, a) += 0.5 * c;
  }
}

// sum_j x_uj x_v(j+1 mod n)
double Consecutive(const BinaryAssignment& x, int n, City u, City v) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    s += x[u * n + j] * x[v * n + (j + 1) % n];
  }
  return s;
}

}  // namespace

BinaryAssignment::BinaryAssignment(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("assignment entries must be 0 or 1");
  }
}

BinaryAssignment BinaryAssignment::FromIndex(std::uint64_t index, int size) {
  BinaryAssignment x(size);
  for (int i = 0; i < size; ++i) x.bits_[i] = (index >> i) & 1U;
  return x;
}

int BinaryAssignment::count() const {
  int c = 0;
  for (auto b : bits_) c += b;
  return c;
}

QuboModel::QuboModel(Eigen::MatrixXd q, double offset)
    : q_(std::move(q)), offset_(offset) {
  if (q_.rows() != q_.cols()) throw std::invalid_argument("Q must be square");
  if (q_.rows() < 1) throw std::invalid_argument("Q must have at least one variable");
  if (!q_.allFinite()) throw std::invalid_argument("Q must be finite");
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (std::abs(q_(i, j) - q_(j, i)) > 1e-12) {
        throw std::invalid_argument("Q must be symmetric");
      }
    }
  }
}

QuboModel::QuboModel(Eigen::MatrixXd q, double offset, TspLayout layout)
    : QuboModel(std::move(q), offset) {
  if (layout.cities * layout.cities != size()) {
    throw std::invalid_argument("TSP layout does not match Q dimension");
  }
  if (!(layout.penalty_a > 0.0)) throw std::invalid_argument("penalty A must be positive");
  layout_ = layout;
}

double DefaultPenalty(const TspInstance& instance) {
  return instance.size() * instance.max_distance() + 1.0;
}

QuboModel BuildTspQubo(const TspInstance& instance, double penalty_a,
                       std::optional<double> con_weight) {
  const int n = instance.size();
  if (n < 2) throw std::invalid_argument("TSP QUBO needs n >= 2");
  if (!(penalty_a > 0.0)) throw std::invalid_argument("penalty A must be positive");
  const double con = con_weight.value_or(penalty_a);
  if (con < 0.0) throw std::invalid_argument("Con weight must be nonnegative");

  const int m = n * n;
  const TspLayout layout{n, penalty_a, con};
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
  double offset = 0.0;

  // (sum_k x_k - 1)^2 = -sum_k x_k + 2 sum_{k<l} x_k x_l + 1
  auto add_one_hot = [&](auto index_of) {
    for (int k = 0; k < n; ++k) {
      AddPair(q, index_of(k), index_of(k), -penalty_a);
      for (int l = k + 1; l < n; ++l) {
        AddPair(q, index_of(k), index_of(l), 2.0 * penalty_a);
      }
    }
    offset += penalty_a;
  };
  for (City u = 0; u < n; ++u) {
    add_one_hot([&](int j) { return layout.Index(u, j); });
  }
  for (int j = 0; j < n; ++j) {
    add_one_hot([&](int u) { return layout.Index(u, j); });
  }

  for (City u = 0; u < n; ++u) {
    for (City v = 0; v < n; ++v) {
      if (u == v) continue;
      const double w = instance.has_edge(u, v) ? instance.distance(u, v) : con;
      if (w == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        AddPair(q, layout.Index(u, j), layout.Index(v, (j + 1) % n), w);
      }
    }
  }
  return QuboModel(std::move(q), offset, layout);
}

double QuboEnergy(const QuboModel& model, const BinaryAssignment& x) {
  CheckSize(model.size(), x.size(), "QuboEnergy");
  std::vector<int> on;
  on.reserve(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (x[i]) on.push_back(i);
  }
  const auto& q = model.q();
  double e = 0.0;
  for (int i : on) {
    for (int j : on) e += q(i, j);
  }
  return model.offset() + e;
}

BinaryAssignment EncodeTour(const TspInstance& instance, const Tour& tour) {
  const int n = instance.size();
  if (tour.size() != n) throw std::invalid_argument("tour size does not match instance");
  BinaryAssignment x(n * n);
  for (int j = 0; j < n; ++j) x.set(tour[j] * n + j, true);
  return x;
}

DecodeResult DecodeAssignment(const TspInstance& instance,
                              const BinaryAssignment& x) {
  const int n = instance.size();
  CheckSize(n * n, x.size(), "DecodeAssignment");
  InvalidEncoding bad;
  std::vector<City> order(n, -1);
  for (City u = 0; u < n; ++u) {
    int row = 0;
    for (int j = 0; j < n; ++j) row += x[u * n + j];
    if (row != 1) bad.cities.push_back(u);
  }
  for (int j = 0; j < n; ++j) {
    int col = 0;
    for (City u = 0; u < n; ++u) {
      if (x[u * n + j]) {
        ++col;
        order[j] = u;
      }
    }
    if (col != 1) bad.positions.push_back(j);
  }
  if (!bad.cities.empty() || !bad.positions.empty()) return bad;
  return Tour(instance, std::move(order));
}

double ConstraintValue(const TspInstance& instance, const BinaryAssignment& x) {
  const int n = instance.size();
  CheckSize(n * n, x.size(), "ConstraintValue");
  double f = 0.0;
  for (City u = 0; u < n; ++u) {
    double row = -1.0;
    for (int j = 0; j < n; ++j) row += x[u * n + j];
    f += row * row;
  }
  for (int j = 0; j < n; ++j) {
    double col = -1.0;
    for (City u = 0; u < n; ++u) col += x[u * n + j];
    f += col * col;
  }
  for (const auto& p : instance.non_edges()) {
    f += Consecutive(x, n, p.first, p.second) + Consecutive(x, n, p.second, p.first);
  }
  return f;
}

double TourCost(const TspInstance& instance, const BinaryAssignment& x) {
  const int n = instance.size();
  CheckSize(n * n, x.size(), "TourCost");
  double c = 0.0;
  for (City u = 0; u < n; ++u) {
    for (City v = 0; v < n; ++v) {
      if (instance.has_edge(u, v)) c += instance.distance(u, v) * Consecutive(x, n, u, v);
    }
  }
  return c;
}

}  // namespace qtsp
