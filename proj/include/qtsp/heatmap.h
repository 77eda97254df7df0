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

// Unsupervised edge heatmaps from a relaxed QUBO loss.
//
// A logit matrix S (city x position) is pushed through a column softmax to a
// soft assignment T, which replaces the binary x_{u,j} inside the TSP QUBO
// energy A*F + C. Gradient descent on that loss, either directly on S or on
// the weights of a one-layer message-passing encoder that produces S, drives
// T toward a short tour. The edge heatmap is read off T as the probability
// that two cities occupy consecutive positions.

#ifndef QTSP_HEATMAP_H_
#define QTSP_HEATMAP_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qtsp/instance.h"

namespace qtsp {

enum class HeatmapMode { kDirectLogits, kEncoder };

// Defaults are tuned for distances of order one (points in the unit square).
struct HeatmapConfig {
  double tau = 0.5;
  // Unset means the mean inter-city distance. The QUBO default n*max(D)+1
  // makes the relaxed landscape too stiff for plain gradient descent to leave
  // the column-symmetric saddle at T = 1/n.
  std::optional<double> penalty_a;
  int steps = 500;
  // Unset means 4.0 for direct logits and 0.01 for the encoder, whose weights
  // amplify each step through three matrix products.
  std::optional<double> learning_rate;
  HeatmapMode mode = HeatmapMode::kDirectLogits;
  std::uint64_t seed = 0;
  int hidden = 32;

  void Validate() const;
  double PenaltyFor(const TspInstance& instance) const;
  double LearningRate() const;
};

struct SoftAssignment {
  Eigen::MatrixXd logits;
  Eigen::MatrixXd t;

  static SoftAssignment FromLogits(Eigen::MatrixXd logits);
};

// Symmetric, zero diagonal, entries in [0, 1].
struct Heatmap {
  Eigen::MatrixXd values;

  int size() const { return static_cast<int>(values.rows()); }
  double operator()(City u, City v) const { return values(u, v); }
};

Eigen::MatrixXd ColumnSoftmax(const Eigen::MatrixXd& logits);

// W_ij = exp(-D_ij / tau); the diagonal is 1.
Eigen::MatrixXd BuildEdgeWeights(const TspInstance& instance, double tau);

// A * [sum_u (rowsum_u - 1)^2 + sum_j (colsum_j - 1)^2 + Con(T)] + C(T), with
// the pair terms taken cyclically over positions.
double SoftQuboLoss(const TspInstance& instance, const Eigen::MatrixXd& t, double penalty_a);

// dLoss/dT.
Eigen::MatrixXd SoftQuboLossGradient(const TspInstance& instance, const Eigen::MatrixXd& t,
                                     double penalty_a);

// dLoss/dS through the column softmax.
Eigen::MatrixXd LossGradient(const TspInstance& instance, const Eigen::MatrixXd& logits,
                             const HeatmapConfig& config);

// S = relu(W relu(F theta_in) theta_msg) theta_out, F the n x 2 coordinates.
struct EncoderWeights {
  Eigen::MatrixXd theta_in;   // 2 x d
  Eigen::MatrixXd theta_msg;  // d x d
  Eigen::MatrixXd theta_out;  // d x n

  static EncoderWeights Random(int cities, int hidden, std::uint64_t seed);
  int hidden() const { return static_cast<int>(theta_msg.rows()); }
};

Eigen::MatrixXd EncoderLogits(const TspInstance& instance, const Eigen::MatrixXd& edge_weights,
                              const EncoderWeights& weights);

// Loss and its gradient with respect to every encoder weight.
struct EncoderGradient {
  double loss = 0.0;
  EncoderWeights grad;
};

EncoderGradient EncoderLossGradient(const TspInstance& instance, const EncoderWeights& weights,
                                    const HeatmapConfig& config);

// H'_uv = sum_j T_uj T_v(j+1 mod n); H = clip(H' + H'^T, 0, 1), zero diagonal.
Heatmap DecodeHeatmap(const Eigen::MatrixXd& t);

// 1 on the edges of the tour, 0 elsewhere.
Heatmap HeatmapFromTour(const Tour& tour);

// Logits seeded from the edge weights: log(eps + mean_{v != u} W_uv) plus
// N(0, 0.01^2) noise.
Eigen::MatrixXd InitialLogits(const TspInstance& instance, double tau, std::uint64_t seed);

struct HeatmapResult {
  SoftAssignment soft;
  Heatmap heatmap;
  std::vector<double> loss_trace;  // loss before each update, then the final loss
  std::optional<EncoderWeights> encoder;
  double wall_time = 0.0;
};

// Throws std::runtime_error if the loss exceeds 10x its initial value.
HeatmapResult OptimizeHeatmap(const TspInstance& instance, const HeatmapConfig& config);

}  // namespace qtsp

#endif  // QTSP_HEATMAP_H_
