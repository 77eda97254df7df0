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

#include "qtsp/annealers.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace qtsp {
namespace {

using Clock = std::chrono::steady_clock;

// Off-diagonal nonzeros of a symmetric matrix, row by row.
struct SparseRows {
  std::vector<int> start;
  std::vector<int> col;
  std::vector<double> val;

  explicit SparseRows(const Eigen::MatrixXd& sym) {
    const int m = static_cast<int>(sym.rows());
    start.reserve(m + 1);
    start.push_back(0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i != j && sym(i, j) != 0.0) {
          col.push_back(j);
          val.push_back(sym(i, j));
        }
      }
      start.push_back(static_cast<int>(col.size()));
    }
  }
};

// Picks the four variables of a position exchange: the cities u, v sitting
// at positions j, k trade places. Returns false when either column is not
// one-hot.
bool ExchangeVariables(std::span<const std::uint8_t> bits, int n, std::mt19937_64& rng,
                       std::array<int, 4>& vars) {
  std::uniform_int_distribution<int> position(0, n - 1);
  const int j = position(rng);
  int k = position(rng);
  if (k == j) k = (k + 1) % n;
  int u = -1;
  int v = -1;
  for (int c = 0; c < n; ++c) {
    if (bits[c * n + j]) {
      if (u >= 0) return false;
      u = c;
    }
    if (bits[c * n + k]) {
      if (v >= 0) return false;
      v = c;
    }
  }
  if (u < 0 || v < 0) return false;
  vars = {u * n + j, v * n + k, u * n + k, v * n + j};
  return true;
}

bool Accept(double delta, double temperature, std::mt19937_64& rng,
            std::uniform_real_distribution<double>& unit) {
  if (delta <= 0.0) return true;
  const double x = delta / temperature;
  // exp(-40) is below the resolution of the uniform draw.
  return x < 40.0 && unit(rng) < std::exp(-x);
}

// Binary state with cached local fields field(i) = sum_j Q_ij x_j.
class QuboState {
 public:
  QuboState(const QuboModel& model, const SparseRows& rows, BinaryAssignment x)
      : q_(model.q()), rows_(rows), x_(std::move(x)) {
    field_ = Eigen::VectorXd::Zero(model.size());
    for (int i = 0; i < x_.size(); ++i) {
      if (x_[i]) field_ += q_.col(i);
    }
    energy_ = QuboEnergy(model, x_);
  }

  double FlipDelta(int i) const {
    const double d = x_[i] ? -1.0 : 1.0;
    return 2.0 * d * field_(i) + q_(i, i);
  }

  // dE = 2 d.field + d^T Q d over the flipped set.
  template <size_t K>
  double MultiFlipDelta(const std::array<int, K>& vars) const {
    std::array<double, K> d{};
    double delta = 0.0;
    for (size_t a = 0; a < K; ++a) {
      d[a] = x_[vars[a]] ? -1.0 : 1.0;
      delta += 2.0 * d[a] * field_(vars[a]) + q_(vars[a], vars[a]);
    }
    for (size_t a = 0; a < K; ++a) {
      for (size_t b = a + 1; b < K; ++b) delta += 2.0 * d[a] * d[b] * q_(vars[a], vars[b]);
    }
    return delta;
  }

  void Flip(int i, double delta) {
    const double d = x_[i] ? -1.0 : 1.0;
    x_.flip(i);
    field_(i) += d * q_(i, i);
    for (int p = rows_.start[i]; p < rows_.start[i + 1]; ++p) {
      field_(rows_.col[p]) += d * rows_.val[p];
    }
    energy_ += delta;
  }

  const BinaryAssignment& x() const { return x_; }
  double energy() const { return energy_; }

 private:
  const Eigen::MatrixXd& q_;
  const SparseRows& rows_;
  BinaryAssignment x_;
  Eigen::VectorXd field_;
  double energy_ = 0.0;
};

BinaryAssignment RandomAssignment(int m, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  BinaryAssignment x(m);
  for (int i = 0; i < m; ++i) x.set(i, coin(rng));
  return x;
}

int ExchangesPerSweep(const std::optional<TspLayout>& layout, bool enabled) {
  if (!enabled || !layout || layout->cities < 2) return 0;
  return layout->cities;
}

// Scales for default temperatures: the largest single-variable term
// |Q_ii| + 2 max_j |Q_ij|, and the smallest nonzero coupling magnitude.
std::pair<double, double> CouplingScales(const QuboModel& model) {
  const auto& q = model.q();
  double max_term = 0.0;
  double min_coupling = std::numeric_limits<double>::infinity();
  for (int i = 0; i < model.size(); ++i) {
    double widest = 0.0;
    for (int j = 0; j < model.size(); ++j) {
      const double c = std::abs(q(i, j));
      if (j != i) widest = std::max(widest, c);
      if (c > 0.0) min_coupling = std::min(min_coupling, c);
    }
    max_term = std::max(max_term, std::abs(q(i, i)) + 2.0 * widest);
  }
  if (!std::isfinite(min_coupling)) min_coupling = 1.0;
  return {std::max(max_term, 1e-12), min_coupling};
}

}  // namespace

void SaSchedule::Validate() const {
  if (!(t_final > 0.0) || !(t_initial >= t_final)) {
    throw std::invalid_argument("SA schedule needs t_initial >= t_final > 0");
  }
  if (sweeps < 1) throw std::invalid_argument("SA schedule needs sweeps >= 1");
}

double SaSchedule::TemperatureAt(int sweep) const {
  if (sweeps == 1) return t_final;
  const double f = static_cast<double>(sweep) / (sweeps - 1);
  if (cooling == Cooling::kLinear) return t_initial + (t_final - t_initial) * f;
  return t_initial * std::pow(t_final / t_initial, f);
}

void SqaSchedule::Validate() const {
  if (replicas < 2) throw std::invalid_argument("SQA needs at least 2 replicas");
  if (!(gamma_final > 0.0) || !(gamma_initial > gamma_final)) {
    throw std::invalid_argument("SQA schedule needs gamma_initial > gamma_final > 0");
  }
  if (!(temperature > 0.0)) throw std::invalid_argument("SQA temperature must be positive");
  if (sweeps < 1) throw std::invalid_argument("SQA schedule needs sweeps >= 1");
}

double SqaSchedule::GammaAt(int sweep) const {
  if (sweeps == 1) return gamma_final;
  const double f = static_cast<double>(sweep) / (sweeps - 1);
  return gamma_initial + (gamma_final - gamma_initial) * f;
}

double TransverseCoupling(double gamma, int replicas, double temperature) {
  const double pt = replicas * temperature;
  const double t = std::tanh(gamma / pt);
  const double cap = kMaxCouplingOverPT * pt;
  if (!(t > 0.0)) return cap;
  return std::min(-0.5 * pt * std::log(t), cap);
}

SaSchedule DefaultSaSchedule(const QuboModel& model, int sweeps) {
  const auto [max_term, min_coupling] = CouplingScales(model);
  SaSchedule s;
  s.sweeps = sweeps;
  s.t_initial = max_term / std::log(2.0);
  s.t_final = std::min(s.t_initial, min_coupling / std::log(100.0));
  s.exchange_moves = model.tsp_layout().has_value();
  return s;
}

SqaSchedule DefaultSqaSchedule(const QuboModel& model, int sweeps, int replicas) {
  const auto [max_term, min_coupling] = CouplingScales(model);
  SqaSchedule s;
  s.sweeps = sweeps;
  s.replicas = replicas;
  s.temperature = min_coupling / (replicas * std::log(10.0));
  s.gamma_initial = max_term;
  s.gamma_final = 1e-3 * max_term;
  s.exchange_moves = model.tsp_layout().has_value();
  return s;
}

SolveResult SimulatedAnnealing(const QuboModel& model, const SaSchedule& schedule,
                               std::uint64_t seed) {
  schedule.Validate();
  const auto start = Clock::now();
  const int m = model.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> site(0, m - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const SparseRows rows(model.q());
  QuboState state(model, rows, RandomAssignment(m, rng));
  const int exchanges = ExchangesPerSweep(model.tsp_layout(), schedule.exchange_moves);
  const int n = exchanges > 0 ? model.tsp_layout()->cities : 0;

  SolveResult result;
  result.seed = seed;
  result.best_assignment = state.x();
  result.best_energy = state.energy();
  result.energy_trace.reserve(schedule.sweeps);

  std::array<int, 4> vars{};
  for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double temperature = schedule.TemperatureAt(sweep);
    for (int p = 0; p < m; ++p) {
      const int i = site(rng);
      const double delta = state.FlipDelta(i);
      ++result.proposals;
      if (Accept(delta, temperature, rng, unit)) {
        state.Flip(i, delta);
        ++result.accepted;
      }
    }
    for (int p = 0; p < exchanges; ++p) {
      ++result.proposals;
      if (!ExchangeVariables(state.x().bits(), n, rng, vars)) continue;
      const double delta = state.MultiFlipDelta(vars);
      if (Accept(delta, temperature, rng, unit)) {
        for (int v : vars) state.Flip(v, state.FlipDelta(v));
        ++result.accepted;
      }
    }
    if (state.energy() < result.best_energy) {
      result.best_energy = state.energy();
      result.best_assignment = state.x();
    }
    result.energy_trace.push_back(result.best_energy);
  }
  result.best_energy = QuboEnergy(model, result.best_assignment);
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

namespace {

// One Trotter slice: spins with cached fields g(i) = h_i + sum_j Jsym_ij s_j,
// so that flipping s_i changes the slice energy by 2 s_i g(i).
class SpinSlice {
 public:
  SpinSlice(const IsingModel& ising, const Eigen::MatrixXd& jsym, const SparseRows& rows,
            std::vector<Spin> spins)
      : jsym_(jsym), rows_(rows), s_(std::move(spins)) {
    const int m = ising.size();
    g_ = ising.h;
    for (int i = 0; i < m; ++i) {
      for (int p = rows_.start[i]; p < rows_.start[i + 1]; ++p) {
        g_(i) += rows_.val[p] * s_[rows_.col[p]];
      }
    }
    energy_ = IsingEnergy(ising, s_);
  }

  double FlipDelta(int i) const { return 2.0 * s_[i] * g_(i); }

  template <size_t K>
  double MultiFlipDelta(const std::array<int, K>& vars) const {
    double delta = 0.0;
    for (size_t a = 0; a < K; ++a) {
      delta += FlipDelta(vars[a]);
      for (size_t b = a + 1; b < K; ++b) {
        delta -= 4.0 * jsym_(vars[a], vars[b]) * s_[vars[a]] * s_[vars[b]];
      }
    }
    return delta;
  }

  void Flip(int i, double delta) {
    const double change = -2.0 * s_[i];
    s_[i] = static_cast<Spin>(-s_[i]);
    for (int p = rows_.start[i]; p < rows_.start[i + 1]; ++p) {
      g_(rows_.col[p]) += rows_.val[p] * change;
    }
    energy_ += delta;
  }

  Spin operator[](int i) const { return s_[i]; }
  const std::vector<Spin>& spins() const { return s_; }
  double energy() const { return energy_; }

 private:
  const Eigen::MatrixXd& jsym_;
  const SparseRows& rows_;
  std::vector<Spin> s_;
  Eigen::VectorXd g_;
  double energy_ = 0.0;
};

}  // namespace

SolveResult SimulatedQuantumAnnealing(const QuboModel& model, const SqaSchedule& schedule,
                                      std::uint64_t seed) {
  schedule.Validate();
  const auto start = Clock::now();
  const int m = model.size();
  const int p_count = schedule.replicas;
  const double pt = p_count * schedule.temperature;

  const IsingModel ising = ToIsing(model);
  const Eigen::MatrixXd upper = ising.j.triangularView<Eigen::StrictlyUpper>();
  const Eigen::MatrixXd jsym = upper + upper.transpose();
  const SparseRows rows(jsym);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> site(0, m - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<SpinSlice> slices;
  slices.reserve(p_count);
  for (int k = 0; k < p_count; ++k) {
    slices.emplace_back(ising, jsym, rows, ToSpins(RandomAssignment(m, rng)));
  }
  const int exchanges = ExchangesPerSweep(model.tsp_layout(), schedule.exchange_moves);
  const int n = exchanges > 0 ? model.tsp_layout()->cities : 0;

  SolveResult result;
  result.seed = seed;
  result.best_energy = std::numeric_limits<double>::infinity();
  result.energy_trace.reserve(schedule.sweeps);
  auto record_best = [&] {
    for (const auto& slice : slices) {
      if (slice.energy() < result.best_energy) {
        result.best_energy = slice.energy();
        result.best_assignment = FromSpins(slice.spins());
      }
    }
  };
  record_best();

  std::vector<std::uint8_t> bits(m);
  std::array<int, 4> vars{};
  for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double j_perp = TransverseCoupling(schedule.GammaAt(sweep), p_count,
                                             schedule.temperature);
    for (int k = 0; k < p_count; ++k) {
      auto& slice = slices[k];
      const auto& prev = slices[(k + p_count - 1) % p_count];
      const auto& next = slices[(k + 1) % p_count];
      auto kinetic = [&](int i) {
        return 2.0 * j_perp * slice[i] * (prev[i] + next[i]);
      };
      for (int p = 0; p < m; ++p) {
        const int i = site(rng);
        const double delta = slice.FlipDelta(i);
        ++result.proposals;
        if (Accept(delta + kinetic(i), pt, rng, unit)) {
          slice.Flip(i, delta);
          ++result.accepted;
        }
      }
      if (exchanges > 0) {
        for (int i = 0; i < m; ++i) bits[i] = slice[i] > 0;
        for (int p = 0; p < exchanges; ++p) {
          ++result.proposals;
          if (!ExchangeVariables(bits, n, rng, vars)) continue;
          const double delta = slice.MultiFlipDelta(vars);
          double kin = 0.0;
          for (int v : vars) kin += kinetic(v);
          if (Accept(delta + kin, pt, rng, unit)) {
            for (int v : vars) {
              slice.Flip(v, slice.FlipDelta(v));
              bits[v] ^= 1;
            }
            ++result.accepted;
          }
        }
      }
    }
    record_best();
    result.energy_trace.push_back(result.best_energy);
  }
  result.best_energy = QuboEnergy(model, result.best_assignment);
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace qtsp
