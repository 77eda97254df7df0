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

// QUBO formulation of the TSP over city x position indicator variables.
//
// Variable x_{u,j} = 1 iff city u is visited at position j; it lives at flat
// index u * n + j. The energy of an assignment is
//
//   E(x) = offset + sum_{i,j} Q_ij x_i x_j
//
// over the full symmetric matrix, so a pair term c * x_a * x_b is stored as
// Q_ab = Q_ba = c / 2 and linear terms sit on the diagonal (x^2 = x).
//
// For a TSP instance the energy is A * F(x) + C(x) with
//
//   F = sum_u (sum_j x_uj - 1)^2 + sum_j (sum_u x_uj - 1)^2 + Con
//   Con = sum_{(u,v) not in E, u != v} sum_j x_uj x_v(j+1 mod n)
//   C   = sum_{(u,v) in E} D_uv sum_j x_uj x_v(j+1 mod n)
//
// where both pair sums run over ordered pairs, so every tour edge is charged
// once in the direction it is travelled.

#ifndef QTSP_QUBO_H_
#define QTSP_QUBO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qtsp/instance.h"

namespace qtsp {

class BinaryAssignment {
 public:
  BinaryAssignment() = default;
  explicit BinaryAssignment(int size) : bits_(size, 0) {}
  // Throws if any entry is not 0 or 1.
  explicit BinaryAssignment(std::vector<std::uint8_t> bits);

  // Bit b of `index` (least significant first) becomes entry b.
  static BinaryAssignment FromIndex(std::uint64_t index, int size);

  int size() const { return static_cast<int>(bits_.size()); }
  std::uint8_t operator[](int i) const { return bits_[i]; }
  void set(int i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(int i) { bits_[i] ^= 1; }
  int count() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==(const BinaryAssignment&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Parameters recorded when a model was built from a TSP instance.
struct TspLayout {
  int cities = 0;
  double penalty_a = 0.0;
  double con_weight = 0.0;
  int Index(City u, int position) const { return u * cities + position; }
};

class QuboModel {
 public:
  // Generic model; `q` must be square and symmetric within 1e-12.
  explicit QuboModel(Eigen::MatrixXd q, double offset = 0.0);
  QuboModel(Eigen::MatrixXd q, double offset, TspLayout layout);

  int size() const { return static_cast<int>(q_.rows()); }
  const Eigen::MatrixXd& q() const { return q_; }
  double offset() const { return offset_; }
  const std::optional<TspLayout>& tsp_layout() const { return layout_; }

 private:
  Eigen::MatrixXd q_;
  double offset_ = 0.0;
  std::optional<TspLayout> layout_;
};

// Builds A*F + C. `con_weight` overrides the weight of the non-edge term
// (defaults to A, i.e. Con sits inside F).
QuboModel BuildTspQubo(const TspInstance& instance, double penalty_a,
                       std::optional<double> con_weight = std::nullopt);

// A = n * max(D) + 1: strictly larger than any tour cost.
double DefaultPenalty(const TspInstance& instance);

double QuboEnergy(const QuboModel& model, const BinaryAssignment& x);

BinaryAssignment EncodeTour(const TspInstance& instance, const Tour& tour);

struct InvalidEncoding {
  std::vector<City> cities;   // cities whose row sum is not 1
  std::vector<int> positions; // positions whose column sum is not 1
};

using DecodeResult = std::variant<Tour, InvalidEncoding>;

DecodeResult DecodeAssignment(const TspInstance& instance,
                              const BinaryAssignment& x);

// F(x), evaluated term by term from the constraint expressions.
double ConstraintValue(const TspInstance& instance, const BinaryAssignment& x);

// C(x), evaluated term by term, wrap-around included.
double TourCost(const TspInstance& instance, const BinaryAssignment& x);

}  // namespace qtsp

#endif  // QTSP_QUBO_H_
