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

// Dense state-vector simulation of closed-system annealing
//
//   i d|psi>/dt = [A(t) H_kin + B(t) H_pot] |psi>,  hbar = 1,
//
// with H_kin = -sum_i sigma_x^(i) and H_pot diagonal in the computational
// basis (the QUBO energies). Basis index b holds bit i of b as x_i.
//
// The integrator is a symmetric (Strang) splitting: half a diagonal phase,
// one transverse rotation of every qubit, half a diagonal phase, with the
// schedule evaluated at the step midpoint. Every factor is unitary, so the
// norm is preserved up to rounding.

#ifndef QTSP_SCHRODINGER_H_
#define QTSP_SCHRODINGER_H_

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qtsp/qubo.h"

namespace qtsp {

// 2^16 amplitudes. A TSP instance with n cities needs n^2 qubits, so only
// n <= 4 fits.
inline constexpr int kMaxSimulatedQubits = 16;
inline constexpr int kMinEvolutionSteps = 10;

struct StateVector {
  int qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  static StateVector Uniform(int qubits);
  static StateVector Basis(int qubits, std::uint64_t index);
  double SquaredNorm() const;
};

struct AnnealSchedule {
  double t_final = 10.0;
  int steps = 1000;
  // Functions of t in [0, t_final]. Empty means the linear default
  // A = 1 - t/t_f, B = t/t_f.
  std::function<double(double)> a_of_t;
  std::function<double(double)> b_of_t;

  double A(double t) const;
  double B(double t) const;
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> ground_probability;
  std::vector<double> energy_expectation;
  std::vector<double> norm;
};

struct EvolutionResult {
  StateVector state;
  EvolutionTrace trace;
};

// H_pot diagonal: entry b is QuboEnergy(model, bits(b)).
std::vector<double> BuildPotential(const QuboModel& model);

// Basis indices within 1e-9 of the minimum diagonal value.
std::vector<std::uint64_t> GroundIndices(const std::vector<double>& potential);

EvolutionResult Evolve(const QuboModel& model, const AnnealSchedule& schedule);

// Draws a basis state with probability |amplitude|^2.
// Throws if the squared norm is off by more than 1e-3.
BinaryAssignment SampleAssignment(const StateVector& state, std::uint64_t seed);
std::vector<BinaryAssignment> SampleAssignments(const StateVector& state, int count,
                                               std::uint64_t seed);

}  // namespace qtsp

#endif  // QTSP_SCHRODINGER_H_
