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

// Monte Carlo minimizers for QUBO models.
//
// Both annealers propose single-bit flips with incremental energy deltas
// taken from the affected row of the coupling matrix. When the model carries
// a TSP layout, `exchange_moves` additionally proposes, n times per sweep,
// the four-bit move that swaps the cities sitting at two positions. It is the
// smallest move that keeps a valid tour valid; without it the dynamics freeze
// once the penalty barriers (about 2A) dwarf the temperature.

#ifndef QTSP_ANNEALERS_H_
#define QTSP_ANNEALERS_H_

#include <cstdint>
#include <vector>

#include "qtsp/ising.h"
#include "qtsp/qubo.h"

namespace qtsp {

enum class Cooling { kGeometric, kLinear };

struct SaSchedule {
  double t_initial = 10.0;
  double t_final = 0.01;
  int sweeps = 1000;
  Cooling cooling = Cooling::kGeometric;
  bool exchange_moves = false;

  void Validate() const;
  double TemperatureAt(int sweep) const;
};

// Path-integral (Suzuki-Trotter) surrogate of transverse-field annealing.
// Replicas are sampled at temperature replicas * temperature under
//
//   H_eff = sum_k H(s^k) - J_perp sum_k sum_i s_i^k s_i^{k+1}
//   J_perp = -(P T / 2) ln tanh(Gamma / (P T))
//
// with periodic slice index and Gamma interpolated linearly over sweeps.
struct SqaSchedule {
  int replicas = 20;
  double gamma_initial = 3.0;
  double gamma_final = 1e-3;
  double temperature = 0.05;
  int sweeps = 1000;
  bool exchange_moves = false;

  void Validate() const;
  double GammaAt(int sweep) const;
};

// J_perp is clamped to this multiple of P*T once tanh(Gamma / (P T)) becomes
// tiny; a flip against both neighbours then costs exp(-4 * 20) in weight.
inline constexpr double kMaxCouplingOverPT = 20.0;

double TransverseCoupling(double gamma, int replicas, double temperature);

struct SolveResult {
  BinaryAssignment best_assignment;
  double best_energy = 0.0;
  std::vector<double> energy_trace;  // best-so-far after each sweep
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
};

// Schedules scaled to the model's coupling magnitudes. For TSP layouts the
// exchange move is switched on.
SaSchedule DefaultSaSchedule(const QuboModel& model, int sweeps);
SqaSchedule DefaultSqaSchedule(const QuboModel& model, int sweeps, int replicas);

SolveResult SimulatedAnnealing(const QuboModel& model, const SaSchedule& schedule,
                               std::uint64_t seed);

SolveResult SimulatedQuantumAnnealing(const QuboModel& model,
                                      const SqaSchedule& schedule,
                                      std::uint64_t seed);

}  // namespace qtsp

#endif  // QTSP_ANNEALERS_H_
