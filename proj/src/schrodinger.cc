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

#include "qtsp/schrodinger.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qtsp {
namespace {

using Complex = std::complex<double>;

void CheckQubits(int qubits) {
  if (qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument(
        "state-vector simulation is capped at " + std::to_string(kMaxSimulatedQubits) +
        " qubits (2^" + std::to_string(kMaxSimulatedQubits) + " amplitudes); model has " +
        std::to_string(qubits));
  }
}

void ApplyPhase(StateVector& state, const std::vector<double>& potential, double angle) {
  for (size_t b = 0; b < potential.size(); ++b) {
    state.amplitudes[b] *= std::polar(1.0, -angle * potential[b]);
  }
}

// exp(i theta sigma_x) on every qubit: the propagator of -theta * sum sigma_x.
void ApplyTransverse(StateVector& state, double theta) {
  const double c = std::cos(theta);
  const Complex is(0.0, std::sin(theta));
  const std::uint64_t dim = state.amplitudes.size();
  auto& amp = state.amplitudes;
  for (int q = 0; q < state.qubits; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & bit) continue;
      const Complex lo = amp[b];
      const Complex hi = amp[b | bit];
      amp[b] = c * lo + is * hi;
      amp[b | bit] = is * lo + c * hi;
    }
  }
}

void Record(const StateVector& state, const std::vector<double>& potential,
            const std::vector<std::uint64_t>& ground, double t, double a, double b,
            EvolutionTrace& trace) {
  double energy = 0.0;
  double norm = 0.0;
  for (size_t i = 0; i < potential.size(); ++i) {
    const double p = std::norm(state.amplitudes[i]);
    energy += p * potential[i];
    norm += p;
  }
  double ground_p = 0.0;
  for (auto g : ground) ground_p += std::norm(state.amplitudes[g]);
  trace.times.push_back(t);
  trace.a.push_back(a);
  trace.b.push_back(b);
  trace.ground_probability.push_back(std::clamp(ground_p, 0.0, 1.0));
  trace.energy_expectation.push_back(energy);
  trace.norm.push_back(norm);
}

}  // namespace

StateVector StateVector::Uniform(int qubits) {
  CheckQubits(qubits);
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  StateVector s;
  s.qubits = qubits;
  s.amplitudes.assign(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return s;
}

StateVector StateVector::Basis(int qubits, std::uint64_t index) {
  CheckQubits(qubits);
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  StateVector s;
  s.qubits = qubits;
  s.amplitudes.assign(dim, Complex(0.0, 0.0));
  s.amplitudes[index] = 1.0;
  return s;
}

double StateVector::SquaredNorm() const {
  double n = 0.0;
  for (const auto& a : amplitudes) n += std::norm(a);
  return n;
}

double AnnealSchedule::A(double t) const {
  return a_of_t ? a_of_t(t) : 1.0 - t / t_final;
}

double AnnealSchedule::B(double t) const {
  return b_of_t ? b_of_t(t) : t / t_final;
}

std::vector<double> BuildPotential(const QuboModel& model) {
  const int m = model.size();
  CheckQubits(m);
  const std::uint64_t dim = std::uint64_t{1} << m;
  std::vector<double> diag(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    diag[b] = QuboEnergy(model, BinaryAssignment::FromIndex(b, m));
  }
  return diag;
}

std::vector<std::uint64_t> GroundIndices(const std::vector<double>& potential) {
  const double lowest = *std::min_element(potential.begin(), potential.end());
  std::vector<std::uint64_t> ground;
  for (size_t b = 0; b < potential.size(); ++b) {
    if (potential[b] <= lowest + 1e-9) ground.push_back(b);
  }
  return ground;
}

EvolutionResult Evolve(const QuboModel& model, const AnnealSchedule& schedule) {
  if (!(schedule.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  if (schedule.steps < kMinEvolutionSteps) {
    throw std::invalid_argument("evolution needs at least " +
                                std::to_string(kMinEvolutionSteps) + " steps");
  }
  const auto potential = BuildPotential(model);
  const auto ground = GroundIndices(potential);
  EvolutionResult out{StateVector::Uniform(model.size()), {}};
  auto& trace = out.trace;
  const size_t samples = static_cast<size_t>(schedule.steps) + 1;
  for (auto* v : {&trace.times, &trace.a, &trace.b, &trace.ground_probability,
                  &trace.energy_expectation, &trace.norm}) {
    v->reserve(samples);
  }
  Record(out.state, potential, ground, 0.0, schedule.A(0.0), schedule.B(0.0), trace);

  const double dt = schedule.t_final / schedule.steps;
  for (int step = 0; step < schedule.steps; ++step) {
    const double mid = (step + 0.5) * dt;
    const double a = schedule.A(mid);
    const double b = schedule.B(mid);
    ApplyPhase(out.state, potential, 0.5 * b * dt);
    if (a != 0.0) ApplyTransverse(out.state, a * dt);
    ApplyPhase(out.state, potential, 0.5 * b * dt);
    const double t = (step + 1) * dt;
    Record(out.state, potential, ground, t, schedule.A(t), schedule.B(t), trace);
  }
  return out;
}

std::vector<BinaryAssignment> SampleAssignments(const StateVector& state, int count,
                                               std::uint64_t seed) {
  const double norm = state.SquaredNorm();
  if (std::abs(norm - 1.0) > 1e-3) {
    throw std::invalid_argument("state is not normalized (squared norm " +
                                std::to_string(norm) + ")");
  }
  std::vector<double> cumulative(state.amplitudes.size());
  double acc = 0.0;
  for (size_t b = 0; b < cumulative.size(); ++b) {
    acc += std::norm(state.amplitudes[b]);
    cumulative[b] = acc;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.0, acc);
  std::vector<BinaryAssignment> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double target = draw(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    auto pick = static_cast<std::uint64_t>(it - cumulative.begin());
    pick = std::min<std::uint64_t>(pick, cumulative.size() - 1);
    // Rounding can land the draw past the last nonzero entry.
    while (pick > 0 && std::norm(state.amplitudes[pick]) == 0.0) --pick;
    out.push_back(BinaryAssignment::FromIndex(pick, state.qubits));
  }
  return out;
}

BinaryAssignment SampleAssignment(const StateVector& state, std::uint64_t seed) {
  return SampleAssignments(state, 1, seed).front();
}

}  // namespace qtsp
