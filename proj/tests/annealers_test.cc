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

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qtsp/annealers.h"
#include "qtsp/oracle.h"
#include "test_support.h"

namespace qtsp {
namespace {

using testing::RandomInstance;

QuboModel Diagonal(std::vector<double> d) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) q(i, i) = d[i];
  return QuboModel(q);
}

void ExpectConsistent(const QuboModel& model, const SolveResult& r) {
  EXPECT_NEAR(r.best_energy, QuboEnergy(model, r.best_assignment), 1e-9);
  for (size_t k = 1; k < r.energy_trace.size(); ++k) {
    EXPECT_LE(r.energy_trace[k], r.energy_trace[k - 1]);
  }
  ASSERT_FALSE(r.energy_trace.empty());
  EXPECT_NEAR(r.energy_trace.back(), r.best_energy, 1e-9);
}

TEST(ScheduleTest, Validation) {
  SaSchedule sa;
  EXPECT_NO_THROW(sa.Validate());
  sa.t_final = 0.0;
  EXPECT_THROW(sa.Validate(), std::invalid_argument);
  sa = SaSchedule{};
  sa.t_initial = 0.001;  // below t_final
  EXPECT_THROW(sa.Validate(), std::invalid_argument);
  sa = SaSchedule{};
  sa.sweeps = 0;
  EXPECT_THROW(sa.Validate(), std::invalid_argument);
  EXPECT_THROW(SimulatedAnnealing(Diagonal({1.0}), sa, 1), std::invalid_argument);

  SqaSchedule sqa;
  EXPECT_NO_THROW(sqa.Validate());
  sqa.replicas = 1;
  EXPECT_THROW(sqa.Validate(), std::invalid_argument);
  sqa = SqaSchedule{};
  sqa.gamma_final = sqa.gamma_initial;
  EXPECT_THROW(sqa.Validate(), std::invalid_argument);
  sqa = SqaSchedule{};
  sqa.temperature = -1.0;
  EXPECT_THROW(sqa.Validate(), std::invalid_argument);
  EXPECT_THROW(SimulatedQuantumAnnealing(Diagonal({1.0}), sqa, 1), std::invalid_argument);
}

TEST(ScheduleTest, EndpointsAndShape) {
  SaSchedule sa{10.0, 0.1, 101, Cooling::kGeometric, false};
  EXPECT_NEAR(sa.TemperatureAt(0), 10.0, 1e-12);
  EXPECT_NEAR(sa.TemperatureAt(100), 0.1, 1e-12);
  EXPECT_NEAR(sa.TemperatureAt(50), 1.0, 1e-9);  // geometric midpoint
  sa.cooling = Cooling::kLinear;
  EXPECT_NEAR(sa.TemperatureAt(50), 5.05, 1e-9);

  SqaSchedule sqa;
  sqa.sweeps = 11;
  sqa.gamma_initial = 2.0;
  sqa.gamma_final = 1.0;
  EXPECT_NEAR(sqa.GammaAt(0), 2.0, 1e-12);
  EXPECT_NEAR(sqa.GammaAt(5), 1.5, 1e-12);
  EXPECT_NEAR(sqa.GammaAt(10), 1.0, 1e-12);
}

TEST(TransverseCouplingTest, FormulaAndClamp) {
  const double pt = 20 * 0.05;
  EXPECT_NEAR(TransverseCoupling(0.7, 20, 0.05), -0.5 * pt * std::log(std::tanh(0.7 / pt)), 1e-12);
  // Decreasing in gamma; vanishes for a strong field.
  EXPECT_GT(TransverseCoupling(0.1, 20, 0.05), TransverseCoupling(1.0, 20, 0.05));
  EXPECT_LT(TransverseCoupling(50.0, 20, 0.05), 1e-12);
  EXPECT_DOUBLE_EQ(TransverseCoupling(1e-300, 20, 0.05), kMaxCouplingOverPT * pt);
  EXPECT_DOUBLE_EQ(TransverseCoupling(1e-20, 2, 1.0), kMaxCouplingOverPT * 2.0);
}

TEST(SimulatedAnnealingTest, TrivialDiagonals) {
  SaSchedule s{5.0, 0.01, 200, Cooling::kGeometric, false};
  auto pos = SimulatedAnnealing(Diagonal({1, 2, 3}), s, 3);
  EXPECT_EQ(pos.best_assignment, BinaryAssignment(3));
  EXPECT_EQ(pos.best_energy, 0.0);
  auto neg = SimulatedAnnealing(Diagonal({-1, -1, -1}), s, 3);
  EXPECT_EQ(neg.best_assignment, BinaryAssignment(std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_NEAR(neg.best_energy, -3.0, 1e-12);
}

TEST(SimulatedAnnealingTest, TraceAndEnergyInvariants) {
  for (int seed = 0; seed < 5; ++seed) {
    QuboModel model(testing::RandomSymmetric(15, 90 + seed, 2.0), 0.3);
    SaSchedule s{4.0, 0.01, 300, Cooling::kGeometric, false};
    auto r = SimulatedAnnealing(model, s, seed);
    ExpectConsistent(model, r);
    EXPECT_EQ(r.energy_trace.size(), 300u);
    EXPECT_EQ(r.proposals, 300 * 15);
    EXPECT_EQ(r.seed, static_cast<std::uint64_t>(seed));
  }
  auto inst = RandomInstance(5, 4);
  auto model = BuildTspQubo(inst, DefaultPenalty(inst));
  ExpectConsistent(model, SimulatedAnnealing(model, DefaultSaSchedule(model, 200), 7));
}

TEST(SimulatedAnnealingTest, FindsExhaustiveMinimumOnSmallModels) {
  for (int seed = 0; seed < 5; ++seed) {
    QuboModel model(testing::RandomSymmetric(10, 110 + seed));
    auto exact = ExhaustiveQuboMin(model);
    SaSchedule s{3.0, 0.005, 2000, Cooling::kGeometric, false};
    EXPECT_NEAR(SimulatedAnnealing(model, s, seed).best_energy, exact.energy, 1e-9);
  }
}

TEST(SimulatedAnnealingTest, Deterministic) {
  auto inst = RandomInstance(6, 8);
  auto model = BuildTspQubo(inst, DefaultPenalty(inst));
  auto s = DefaultSaSchedule(model, 300);
  auto a = SimulatedAnnealing(model, s, 42);
  auto b = SimulatedAnnealing(model, s, 42);
  EXPECT_EQ(a.best_assignment, b.best_assignment);
  EXPECT_EQ(a.best_energy, b.best_energy);
  EXPECT_EQ(a.energy_trace, b.energy_trace);
  EXPECT_EQ(a.accepted, b.accepted);
  auto c = SimulatedAnnealing(model, s, 43);
  EXPECT_NE(a.accepted, c.accepted);
}

TEST(SimulatedAnnealingTest, HighTemperatureAcceptsAlmostEverything) {
  QuboModel model(testing::RandomSymmetric(20, 5));
  SaSchedule s{1e6, 1e6, 500, Cooling::kGeometric, false};
  auto r = SimulatedAnnealing(model, s, 1);
  const double ratio = static_cast<double>(r.accepted) / r.proposals;
  EXPECT_GE(ratio, 0.95);
  EXPECT_LE(ratio, 1.0);
}

TEST(SimulatedAnnealingTest, EightCityToursWithinFivePercent) {
  auto inst = RandomInstance(8, 2024);
  const double optimum = HeldKarp(inst).optimal_length;
  auto model = BuildTspQubo(inst, DefaultPenalty(inst));
  auto schedule = DefaultSaSchedule(model, 2000);
  int good = 0;
  for (int seed = 0; seed < 20; ++seed) {
    auto r = SimulatedAnnealing(model, schedule, seed);
    auto decoded = DecodeAssignment(inst, r.best_assignment);
    if (auto* t = std::get_if<Tour>(&decoded); t && t->length() <= 1.05 * optimum + 1e-12) ++good;
  }
  EXPECT_GE(good, 18);
}

TEST(SimulatedQuantumAnnealingTest, SingleSpin) {
  // E = 1 - 2x, i.e. h = 1 in spin form: the minimum is s = +1.
  QuboModel model(Eigen::MatrixXd::Constant(1, 1, -2.0), 1.0);
  SqaSchedule s;
  s.sweeps = 50;
  auto r = SimulatedQuantumAnnealing(model, s, 5);
  EXPECT_EQ(r.best_assignment, BinaryAssignment(std::vector<std::uint8_t>{1}));
  EXPECT_NEAR(r.best_energy, -1.0, 1e-12);
}

TEST(SimulatedQuantumAnnealingTest, InvariantsAndDeterminism) {
  for (int seed = 0; seed < 3; ++seed) {
    QuboModel model(testing::RandomSymmetric(12, 130 + seed), -1.0);
    SqaSchedule s;
    s.sweeps = 200;
    s.replicas = 8;
    auto a = SimulatedQuantumAnnealing(model, s, seed);
    ExpectConsistent(model, a);
    EXPECT_EQ(a.energy_trace.size(), 200u);
    auto b = SimulatedQuantumAnnealing(model, s, seed);
    EXPECT_EQ(a.best_assignment, b.best_assignment);
    EXPECT_EQ(a.energy_trace, b.energy_trace);
    EXPECT_EQ(a.accepted, b.accepted);
  }
}

TEST(SimulatedQuantumAnnealingTest, TwoReplicasWithVanishingFieldStayValid) {
  QuboModel model(testing::RandomSymmetric(10, 150), 0.5);
  SqaSchedule s;
  s.replicas = 2;
  s.gamma_initial = 1e-200;
  s.gamma_final = 1e-300;
  s.temperature = 0.05;
  s.sweeps = 500;
  auto r = SimulatedQuantumAnnealing(model, s, 9);
  ExpectConsistent(model, r);
  EXPECT_TRUE(std::isfinite(r.best_energy));
  // Clamped coupling locks the slices together; the energy is still real.
  EXPECT_GE(r.best_energy, ExhaustiveQuboMin(model).energy - 1e-9);
}

TEST(SimulatedQuantumAnnealingTest, SixCityOptimum) {
  auto inst = RandomInstance(6, 606);
  const double optimum = BruteForceTsp(inst).optimal_length;
  auto model = BuildTspQubo(inst, DefaultPenalty(inst));
  auto schedule = DefaultSqaSchedule(model, 2000, 20);
  int found = 0;
  for (int seed = 0; seed < 20; ++seed) {
    auto r = SimulatedQuantumAnnealing(model, schedule, seed);
    auto decoded = DecodeAssignment(inst, r.best_assignment);
    if (auto* t = std::get_if<Tour>(&decoded); t && t->length() <= optimum + 1e-9) ++found;
  }
  EXPECT_GE(found, 18);
}

}  // namespace
}  // namespace qtsp
