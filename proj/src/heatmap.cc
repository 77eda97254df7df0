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

#include "qtsp/heatmap.h"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qtsp {
namespace {

using Eigen::MatrixXd;

// Pair weights of the relaxed energy: D_uv on edges, A on non-edges, 0 on
// the diagonal.
MatrixXd PairWeights(const TspInstance& instance, double penalty_a) {
  MatrixXd k = instance.distances();
  for (const auto& p : instance.non_edges()) {
    k(p.first, p.second) = penalty_a;
    k(p.second, p.first) = penalty_a;
  }
  k.diagonal().setZero();
  return k;
}

// Column j of the result is column j+1 (mod n) of t.
MatrixXd ShiftLeft(const MatrixXd& t) {
  const int n = static_cast<int>(t.cols());
  MatrixXd out(t.rows(), n);
  out.leftCols(n - 1) = t.rightCols(n - 1);
  out.col(n - 1) = t.col(0);
  return out;
}

// Column j of the result is column j-1 (mod n) of t.
MatrixXd ShiftRight(const MatrixXd& t) {
  const int n = static_cast<int>(t.cols());
  MatrixXd out(t.rows(), n);
  out.rightCols(n - 1) = t.leftCols(n - 1);
  out.col(0) = t.col(n - 1);
  return out;
}

MatrixXd SoftmaxBackward(const MatrixXd& t, const MatrixXd& grad_t) {
  // dS_kj = T_kj (G_kj - sum_i T_ij G_ij)
  const Eigen::RowVectorXd inner = (t.array() * grad_t.array()).colwise().sum();
  return t.array() * (grad_t.rowwise() - inner).array();
}

MatrixXd Features(const TspInstance& instance) {
  if (!instance.coords()) {
    throw std::invalid_argument("encoder mode needs city coordinates");
  }
  const auto& pts = *instance.coords();
  MatrixXd f(instance.size(), 2);
  for (int i = 0; i < instance.size(); ++i) f.row(i) << pts[i].x, pts[i].y;
  return f;
}

MatrixXd Relu(const MatrixXd& z) { return z.cwiseMax(0.0); }

MatrixXd ReluMask(const MatrixXd& z) { return (z.array() > 0.0).cast<double>(); }

MatrixXd Gaussian(int rows, int cols, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, sigma);
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

}  // namespace

void HeatmapConfig::Validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (learning_rate && !(*learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (penalty_a && !(*penalty_a > 0.0)) throw std::invalid_argument("penalty A must be positive");
  if (hidden < 1) throw std::invalid_argument("hidden width must be >= 1");
}

double HeatmapConfig::PenaltyFor(const TspInstance& instance) const {
  return penalty_a.value_or(instance.mean_distance());
}

double HeatmapConfig::LearningRate() const {
  return learning_rate.value_or(mode == HeatmapMode::kEncoder ? 0.01 : 4.0);
}

MatrixXd ColumnSoftmax(const MatrixXd& logits) {
  const Eigen::RowVectorXd peak = logits.colwise().maxCoeff();
  MatrixXd e = (logits.rowwise() - peak).array().exp();
  const Eigen::RowVectorXd sums = e.colwise().sum();
  return e.array().rowwise() / sums.array();
}

SoftAssignment SoftAssignment::FromLogits(MatrixXd logits) {
  SoftAssignment s{std::move(logits), {}};
  s.t = ColumnSoftmax(s.logits);
  return s;
}

MatrixXd BuildEdgeWeights(const TspInstance& instance, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  return (-instance.distances().array() / tau).exp();
}

double SoftQuboLoss(const TspInstance& instance, const MatrixXd& t, double penalty_a) {
  const Eigen::VectorXd rows = t.rowwise().sum().array() - 1.0;
  const Eigen::RowVectorXd cols = t.colwise().sum().array() - 1.0;
  // Con and C share the pair structure; A sits inside PairWeights for Con.
  const MatrixXd follow = PairWeights(instance, penalty_a) * ShiftLeft(t);
  const double pairs = (t.array() * follow.array()).sum();
  return penalty_a * (rows.squaredNorm() + cols.squaredNorm()) + pairs;
}

MatrixXd SoftQuboLossGradient(const TspInstance& instance, const MatrixXd& t, double penalty_a) {
  const MatrixXd k = PairWeights(instance, penalty_a);
  const Eigen::VectorXd rows = t.rowwise().sum().array() - 1.0;
  const Eigen::RowVectorXd cols = t.colwise().sum().array() - 1.0;
  MatrixXd g = k * ShiftLeft(t) + k * ShiftRight(t);
  g.colwise() += 2.0 * penalty_a * rows;
  g.rowwise() += 2.0 * penalty_a * cols;
  return g;
}

MatrixXd LossGradient(const TspInstance& instance, const MatrixXd& logits,
                      const HeatmapConfig& config) {
  const MatrixXd t = ColumnSoftmax(logits);
  return SoftmaxBackward(t, SoftQuboLossGradient(instance, t, config.PenaltyFor(instance)));
}

EncoderWeights EncoderWeights::Random(int cities, int hidden, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EncoderWeights w;
  w.theta_in = Gaussian(2, hidden, 1.0, rng);
  w.theta_msg = Gaussian(hidden, hidden, std::sqrt(2.0 / hidden) / cities, rng);
  w.theta_out = Gaussian(hidden, cities, std::sqrt(1.0 / hidden), rng);
  return w;
}

MatrixXd EncoderLogits(const TspInstance& instance, const MatrixXd& edge_weights,
                       const EncoderWeights& weights) {
  const MatrixXd x0 = Relu(Features(instance) * weights.theta_in);
  const MatrixXd x1 = Relu(edge_weights * x0 * weights.theta_msg);
  return x1 * weights.theta_out;
}

EncoderGradient EncoderLossGradient(const TspInstance& instance, const EncoderWeights& weights,
                                    const HeatmapConfig& config) {
  const double a = config.PenaltyFor(instance);
  const MatrixXd w = BuildEdgeWeights(instance, config.tau);
  const MatrixXd f = Features(instance);

  const MatrixXd z0 = f * weights.theta_in;
  const MatrixXd x0 = Relu(z0);
  const MatrixXd msg = w * x0;
  const MatrixXd z1 = msg * weights.theta_msg;
  const MatrixXd x1 = Relu(z1);
  const MatrixXd s = x1 * weights.theta_out;
  const MatrixXd t = ColumnSoftmax(s);

  EncoderGradient out;
  out.loss = SoftQuboLoss(instance, t, a);
  const MatrixXd ds = SoftmaxBackward(t, SoftQuboLossGradient(instance, t, a));
  out.grad.theta_out = x1.transpose() * ds;
  const MatrixXd dz1 = (ds * weights.theta_out.transpose()).cwiseProduct(ReluMask(z1));
  out.grad.theta_msg = msg.transpose() * dz1;
  const MatrixXd dz0 =
      (w.transpose() * dz1 * weights.theta_msg.transpose()).cwiseProduct(ReluMask(z0));
  out.grad.theta_in = f.transpose() * dz0;
  return out;
}

Heatmap DecodeHeatmap(const MatrixXd& t) {
  const MatrixXd follow = t * ShiftLeft(t).transpose();
  Heatmap h{(follow + follow.transpose()).cwiseMax(0.0).cwiseMin(1.0)};
  h.values.diagonal().setZero();
  return h;
}

Heatmap HeatmapFromTour(const Tour& tour) {
  const int n = tour.size();
  Heatmap h{MatrixXd::Zero(n, n)};
  for (int j = 0; j < n; ++j) {
    const City u = tour[j];
    const City v = tour[(j + 1) % n];
    h.values(u, v) = 1.0;
    h.values(v, u) = 1.0;
  }
  return h;
}

MatrixXd InitialLogits(const TspInstance& instance, double tau, std::uint64_t seed) {
  constexpr double kEps = 1e-9;
  const int n = instance.size();
  const MatrixXd w = BuildEdgeWeights(instance, tau);
  std::mt19937_64 rng(seed);
  MatrixXd s = Gaussian(n, n, 0.01, rng);
  for (int u = 0; u < n; ++u) {
    const double mean = (w.row(u).sum() - w(u, u)) / (n - 1);
    s.row(u).array() += std::log(kEps + mean);
  }
  return s;
}

HeatmapResult OptimizeHeatmap(const TspInstance& instance, const HeatmapConfig& config) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  const double a = config.PenaltyFor(instance);
  const double lr = config.LearningRate();
  HeatmapResult result;
  result.loss_trace.reserve(config.steps + 1);

  auto check = [&](double loss, int step) {
    if (!std::isfinite(loss) || loss > 10.0 * result.loss_trace.front()) {
      throw std::runtime_error("heatmap optimization diverged at step " + std::to_string(step) +
                               ": loss " + std::to_string(loss) + " vs initial " +
                               std::to_string(result.loss_trace.front()) +
                               "; lower the learning rate");
    }
  };

  MatrixXd logits;
  if (config.mode == HeatmapMode::kDirectLogits) {
    logits = InitialLogits(instance, config.tau, config.seed);
    for (int step = 0; step < config.steps; ++step) {
      const MatrixXd t = ColumnSoftmax(logits);
      const double loss = SoftQuboLoss(instance, t, a);
      result.loss_trace.push_back(loss);
      if (step > 0) check(loss, step);
      logits -= lr * SoftmaxBackward(t, SoftQuboLossGradient(instance, t, a));
    }
  } else {
    auto weights = EncoderWeights::Random(instance.size(), config.hidden, config.seed);
    for (int step = 0; step < config.steps; ++step) {
      const auto g = EncoderLossGradient(instance, weights, config);
      result.loss_trace.push_back(g.loss);
      if (step > 0) check(g.loss, step);
      weights.theta_in -= lr * g.grad.theta_in;
      weights.theta_msg -= lr * g.grad.theta_msg;
      weights.theta_out -= lr * g.grad.theta_out;
    }
    logits = EncoderLogits(instance, BuildEdgeWeights(instance, config.tau), weights);
    result.encoder = std::move(weights);
  }
  result.soft = SoftAssignment::FromLogits(std::move(logits));
  const double final_loss = SoftQuboLoss(instance, result.soft.t, a);
  check(final_loss, config.steps);
  result.loss_trace.push_back(final_loss);
  result.heatmap = DecodeHeatmap(result.soft.t);
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qtsp
