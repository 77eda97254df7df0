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
#include <limits>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qtsp/instance.h"
#include "qtsp/ising.h"
#include "qtsp/oracle.h"
#include "qtsp/qubo.h"
#include "test_support.h"

namespace qtsp {
namespace {

using testing::RandomInstance;
using testing::RandomSymmetric;
using testing::UnitSquare;
using testing::UnitTriangle;

// ---- TspInstance / Tour -------------------------------------------------

TEST(TspInstanceTest, CoordinatesGiveEuclideanDistances) {
  auto inst = RandomInstance(7, 1);
  const auto& pts = *inst.coords();
  for (int u = 0; u < 7; ++u) {
    EXPECT_EQ(inst.distance(u, u), 0.0);
    for (int v = 0; v < 7; ++v) {
      const double d = std::sqrt((pts[u].x - pts[v].x) * (pts[u].x - pts[v].x) +
                                 (pts[u].y - pts[v].y) * (pts[u].y - pts[v].y));
      EXPECT_NEAR(inst.distance(u, v), d, 1e-12);
      EXPECT_EQ(inst.distance(u, v), inst.distance(v, u));
    }
  }
  EXPECT_TRUE(inst.is_complete());
}

TEST(TspInstanceTest, RejectsBadMatrices) {
  EXPECT_THROW(TspInstance::FromCoordinates({{0, 0}}), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  EXPECT_THROW(TspInstance::FromDistances(asym), std::invalid_argument);
  Eigen::MatrixXd diag(2, 2);
  diag << 1, 1, 1, 0;
  EXPECT_THROW(TspInstance::FromDistances(diag), std::invalid_argument);
  Eigen::MatrixXd neg(2, 2);
  neg << 0, -1, -1, 0;
  EXPECT_THROW(TspInstance::FromDistances(neg), std::invalid_argument);
  Eigen::MatrixXd nan(2, 2);
  nan << 0, std::nan(""), std::nan(""), 0;
  EXPECT_THROW(TspInstance::FromDistances(nan), std::invalid_argument);
  EXPECT_THROW(TspInstance::FromDistances(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST(TspInstanceTest, NonEdgesAreValidatedAndNormalized) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_THROW(TspInstance::FromCoordinates(pts, {{0, 4}}), std::invalid_argument);
  EXPECT_THROW(TspInstance::FromCoordinates(pts, {{2, 2}}), std::invalid_argument);
  auto inst = TspInstance::FromCoordinates(pts, {{2, 0}, {0, 2}});
  ASSERT_EQ(inst.non_edges().size(), 1u);
  EXPECT_EQ(inst.non_edges()[0], (CityPair{0, 2}));
  EXPECT_FALSE(inst.has_edge(0, 2));
  EXPECT_FALSE(inst.has_edge(2, 0));
  EXPECT_TRUE(inst.has_edge(0, 1));
  EXPECT_FALSE(inst.has_edge(1, 1));
}

TEST(TourTest, LengthAndValidation) {
  auto sq = UnitSquare();
  Tour t(sq, {0, 1, 2, 3});
  EXPECT_DOUBLE_EQ(t.length(), 4.0);
  EXPECT_THROW(Tour(sq, {0, 1, 1, 3}), std::invalid_argument);
  EXPECT_THROW(Tour(sq, {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Tour(sq, {0, 1, 2, 4}), std::invalid_argument);
}

TEST(TourTest, CanonicalOrderIdentifiesCycles) {
  auto inst = RandomInstance(6, 2);
  Tour a(inst, {3, 4, 5, 0, 1, 2});
  Tour b(inst, {2, 1, 0, 5, 4, 3});  // same cycle reversed
  Tour c(inst, {0, 2, 1, 3, 4, 5});
  EXPECT_EQ(a.CanonicalOrder(), (std::vector<City>{0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(a.SameCycle(b));
  EXPECT_FALSE(a.SameCycle(c));
  EXPECT_NEAR(a.length(), b.length(), 1e-12);
}

TEST(GapTest, Definition) {
  EXPECT_DOUBLE_EQ(GapPercent(11.0, 10.0), 10.0);
  EXPECT_EQ(GapPercent(10.0 + 1e-14, 10.0), 0.0);
  EXPECT_LT(GapPercent(9.0, 10.0), 0.0);
}

// ---- QuboModel / BinaryAssignment --------------------------------------

TEST(BinaryAssignmentTest, ValidatesEntries) {
  EXPECT_THROW(BinaryAssignment(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
  auto x = BinaryAssignment::FromIndex(5, 3);
  EXPECT_EQ(x, BinaryAssignment(std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(x.count(), 2);
}

TEST(QuboModelTest, RejectsMalformedMatrices) {
  EXPECT_THROW(QuboModel(Eigen::MatrixXd(0, 0)), std::invalid_argument);
  EXPECT_THROW(QuboModel(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  EXPECT_THROW(QuboModel{asym}, std::invalid_argument);
  Eigen::MatrixXd inf = Eigen::MatrixXd::Zero(2, 2);
  inf(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(QuboModel{inf}, std::invalid_argument);
}

TEST(QuboEnergyTest, ZeroModelIsZero) {
  QuboModel model(Eigen::MatrixXd::Zero(4, 4));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    EXPECT_EQ(QuboEnergy(model, testing::RandomAssignment(4, rng)), 0.0);
  }
}

TEST(QuboEnergyTest, DimensionMismatchThrows) {
  QuboModel model(Eigen::MatrixXd::Zero(4, 4));
  EXPECT_THROW(QuboEnergy(model, BinaryAssignment(3)), std::invalid_argument);
}

TEST(QuboEnergyTest, MatchesFullQuadraticForm) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 12;
    QuboModel model(RandomSymmetric(m, 100 + trial), 0.25 * trial);
    for (int k = 0; k < 20; ++k) {
      auto x = testing::RandomAssignment(m, rng);
      EXPECT_NEAR(QuboEnergy(model, x), testing::ReferenceQuadratic(model.q(), model.offset(), x),
                  1e-12);
    }
  }
}

TEST(BuildTspQuboTest, RejectsBadArguments) {
  auto tri = UnitTriangle();
  EXPECT_THROW(BuildTspQubo(tri, 0.0), std::invalid_argument);
  EXPECT_THROW(BuildTspQubo(tri, -1.0), std::invalid_argument);
}

TEST(BuildTspQuboTest, TriangleValidToursCostThree) {
  auto tri = UnitTriangle();
  auto model = BuildTspQubo(tri, 10.0);
  EXPECT_EQ(model.size(), 9);
  for (auto order : {std::vector<City>{0, 1, 2}, {0, 2, 1}, {1, 0, 2}}) {
    EXPECT_NEAR(QuboEnergy(model, EncodeTour(tri, Tour(tri, order))), 3.0, 1e-12);
  }
}

TEST(BuildTspQuboTest, AllZerosCostsSixA) {
  auto model = BuildTspQubo(UnitTriangle(), 10.0);
  EXPECT_NEAR(QuboEnergy(model, BinaryAssignment(9)), 60.0, 1e-12);
}

TEST(BuildTspQuboTest, EnergyEqualsPenaltyTimesConstraintPlusCost) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;  // m = n^2 <= 16
    std::vector<CityPair> missing;
    if (n == 4 && trial % 2) missing = {{0, 2}, {1, 3}};
    auto base = RandomInstance(n, 200 + trial);
    auto inst = TspInstance::FromCoordinates(*base.coords(), missing);
    const double a = 0.5 + trial;
    auto model = BuildTspQubo(inst, a);
    for (int k = 0; k < 25; ++k) {
      auto x = testing::RandomAssignment(n * n, rng);
      const double f = testing::ReferenceConstraint(inst, x);
      const double c = testing::ReferenceCost(inst, x);
      EXPECT_NEAR(QuboEnergy(model, x), a * f + c, 1e-9);
      EXPECT_NEAR(ConstraintValue(inst, x), f, 1e-12);
      EXPECT_NEAR(TourCost(inst, x), c, 1e-12);
    }
  }
}

TEST(BuildTspQuboTest, SeparateConWeight) {
  auto base = RandomInstance(4, 9);
  auto inst = TspInstance::FromCoordinates(*base.coords(), {{0, 1}});
  auto model = BuildTspQubo(inst, 3.0, 0.5);
  auto x = EncodeTour(inst, Tour(inst, {0, 1, 2, 3}));  // uses the missing edge once
  const std::vector<City> order = {0, 1, 2, 3};
  const double kept = TourLength(inst, order) - inst.distance(0, 1);
  EXPECT_NEAR(QuboEnergy(model, x), 0.5 * 1.0 + kept, 1e-12);
}

TEST(BuildTspQuboTest, ValidEncodingEnergyIsTourLength) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 9;
    auto inst = RandomInstance(n, 300 + trial);
    auto model = BuildTspQubo(inst, DefaultPenalty(inst));
    Tour t(inst, testing::RandomOrder(n, rng));
    EXPECT_NEAR(QuboEnergy(model, EncodeTour(inst, t)), t.length(), 1e-9);
  }
}

TEST(BuildTspQuboTest, RelabelingInvariance) {
  auto inst = RandomInstance(4, 10);
  auto model = BuildTspQubo(inst, DefaultPenalty(inst));
  std::mt19937_64 rng(7);
  std::vector<int> perm(16);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd q2(16, 16);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) q2(perm[i], perm[j]) = model.q()(i, j);
  }
  QuboModel relabeled(q2, model.offset());
  for (int k = 0; k < 50; ++k) {
    auto x = testing::RandomAssignment(16, rng);
    BinaryAssignment y(16);
    for (int i = 0; i < 16; ++i) y.set(perm[i], x[i]);
    EXPECT_NEAR(QuboEnergy(model, x), QuboEnergy(relabeled, y), 1e-9);
  }
}

TEST(DefaultPenaltyTest, Examples) {
  EXPECT_NEAR(DefaultPenalty(UnitTriangle()), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(DefaultPenalty(TspInstance::FromDistances(Eigen::MatrixXd::Zero(3, 3))), 1.0);
}

TEST(DefaultPenaltyTest, PenaltyDominanceExhaustive) {
  for (int seed = 0; seed < 5; ++seed) {
    for (int n : {2, 3, 4}) {
      auto inst = RandomInstance(n, 400 + seed);
      auto model = BuildTspQubo(inst, DefaultPenalty(inst));
      double feasible = std::numeric_limits<double>::infinity();
      double infeasible = std::numeric_limits<double>::infinity();
      ScanQuboGrayCode(model, [&](std::uint64_t index, double) {
        auto x = BinaryAssignment::FromIndex(index, n * n);
        const double e = QuboEnergy(model, x);
        if (std::holds_alternative<Tour>(DecodeAssignment(inst, x))) {
          feasible = std::min(feasible, e);
        } else {
          infeasible = std::min(infeasible, e);
        }
      });
      EXPECT_GT(infeasible, feasible) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(EncodeTourTest, Examples) {
  auto tri = UnitTriangle();
  auto x = EncodeTour(tri, Tour(tri, {0, 1, 2}));
  for (int i = 0; i < 9; ++i) EXPECT_EQ(x[i], (i == 0 || i == 4 || i == 8) ? 1 : 0);

  auto sq = UnitSquare();
  auto y = EncodeTour(sq, Tour(sq, {2, 0, 3, 1}));
  EXPECT_EQ(y.count(), 4);
  EXPECT_EQ(y[2 * 4 + 0], 1);
  EXPECT_EQ(y[0 * 4 + 1], 1);
  EXPECT_EQ(y[3 * 4 + 2], 1);
  EXPECT_EQ(y[1 * 4 + 3], 1);
  EXPECT_EQ(ConstraintValue(sq, y), 0.0);
}

TEST(EncodeTourTest, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 11;
    auto inst = RandomInstance(n, 500 + k);
    Tour t(inst, testing::RandomOrder(n, rng));
    auto decoded = DecodeAssignment(inst, EncodeTour(inst, t));
    ASSERT_TRUE(std::holds_alternative<Tour>(decoded));
    EXPECT_EQ(std::get<Tour>(decoded).order(), t.order());
  }
}

TEST(DecodeAssignmentTest, ReportsViolations) {
  auto tri = UnitTriangle();
  auto none = DecodeAssignment(tri, BinaryAssignment(9));
  ASSERT_TRUE(std::holds_alternative<InvalidEncoding>(none));
  EXPECT_EQ(std::get<InvalidEncoding>(none).cities, (std::vector<City>{0, 1, 2}));
  EXPECT_EQ(std::get<InvalidEncoding>(none).positions, (std::vector<int>{0, 1, 2}));

  auto x = EncodeTour(tri, Tour(tri, {0, 1, 2}));
  x.set(1 * 3 + 1, false);
  x.set(1 * 3 + 0, true);  // city 1 moves to position 0, which city 0 holds
  auto bad = DecodeAssignment(tri, x);
  ASSERT_TRUE(std::holds_alternative<InvalidEncoding>(bad));
  EXPECT_EQ(std::get<InvalidEncoding>(bad).positions, (std::vector<int>{0, 1}));
  EXPECT_TRUE(std::get<InvalidEncoding>(bad).cities.empty());

  EXPECT_THROW(DecodeAssignment(tri, BinaryAssignment(8)), std::invalid_argument);
}

TEST(ConstraintValueTest, Examples) {
  auto inst = RandomInstance(5, 11);
  EXPECT_EQ(ConstraintValue(inst, BinaryAssignment(25)), 10.0);
  EXPECT_EQ(TourCost(inst, BinaryAssignment(25)), 0.0);
  EXPECT_THROW(ConstraintValue(inst, BinaryAssignment(24)), std::invalid_argument);
  EXPECT_THROW(TourCost(inst, BinaryAssignment(24)), std::invalid_argument);

  auto cut = TspInstance::FromCoordinates(*inst.coords(), {{1, 2}});
  // 0 1 2 3 4 uses (1,2) once; 0 2 1 3 4 uses it once as (2,1).
  EXPECT_EQ(ConstraintValue(cut, EncodeTour(cut, Tour(cut, {0, 1, 2, 3, 4}))), 1.0);
  EXPECT_EQ(ConstraintValue(cut, EncodeTour(cut, Tour(cut, {0, 2, 1, 3, 4}))), 1.0);
  EXPECT_EQ(ConstraintValue(cut, EncodeTour(cut, Tour(cut, {0, 1, 3, 2, 4}))), 0.0);
}

TEST(TourCostTest, MatchesTourLength) {
  std::mt19937_64 rng(12);
  EXPECT_NEAR(TourCost(UnitTriangle(), EncodeTour(UnitTriangle(), Tour(UnitTriangle(), {2, 0, 1}))),
              3.0, 1e-12);
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + k % 8;
    auto inst = RandomInstance(n, 600 + k);
    Tour t(inst, testing::RandomOrder(n, rng));
    EXPECT_NEAR(TourCost(inst, EncodeTour(inst, t)), t.length(), 1e-9);
  }
}

// ---- Ising ---------------------------------------------------------------

TEST(IsingTest, ZeroModel) {
  auto ising = ToIsing(QuboModel(Eigen::MatrixXd::Zero(3, 3)));
  EXPECT_EQ(ising.h.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(ising.j.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(ising.offset, 0.0);
  const std::vector<Spin> s = {1, -1, 1};
  EXPECT_EQ(IsingEnergy(ising, s), 0.0);
}

TEST(IsingTest, SingleVariable) {
  auto ising = ToIsing(QuboModel(Eigen::MatrixXd::Constant(1, 1, 1.0)));
  const std::vector<Spin> down = {-1};
  const std::vector<Spin> up = {1};
  EXPECT_NEAR(IsingEnergy(ising, down), 0.0, 1e-15);
  EXPECT_NEAR(IsingEnergy(ising, up), 1.0, 1e-15);
}

TEST(IsingTest, EnergySignConvention) {
  IsingModel m{Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Zero(1, 1), 0.0};
  const std::vector<Spin> up = {1};
  const std::vector<Spin> down = {-1};
  EXPECT_EQ(IsingEnergy(m, up), -1.0);
  EXPECT_EQ(IsingEnergy(m, down), 1.0);
  const std::vector<Spin> bad = {0};
  EXPECT_THROW(IsingEnergy(m, bad), std::invalid_argument);
  const std::vector<Spin> wrong_size = {1, 1};
  EXPECT_THROW(IsingEnergy(m, wrong_size), std::invalid_argument);
}

TEST(IsingTest, CouplingsAreStrictlyUpperTriangular) {
  auto ising = ToIsing(QuboModel(RandomSymmetric(6, 13)));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j <= i; ++j) EXPECT_EQ(ising.j(i, j), 0.0);
  }
}

TEST(IsingTest, ExhaustiveAgreementRandomModels) {
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 12;
    QuboModel model(RandomSymmetric(m, 700 + trial, 3.0), trial - 10.0);
    auto ising = ToIsing(model);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b) {
      auto x = BinaryAssignment::FromIndex(b, m);
      const auto s = ToSpins(x);
      EXPECT_NEAR(QuboEnergy(model, x), IsingEnergy(ising, s), 1e-9);
      EXPECT_EQ(FromSpins(s), x);
    }
  }
}

TEST(IsingTest, ExhaustiveAgreementTspModel) {
  auto inst = RandomInstance(4, 14);
  auto model = BuildTspQubo(inst, DefaultPenalty(inst));
  auto ising = ToIsing(model);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << 16); b += 7) {
    auto x = BinaryAssignment::FromIndex(b, 16);
    EXPECT_NEAR(QuboEnergy(model, x), IsingEnergy(ising, ToSpins(x)), 1e-9);
  }
}

}  // namespace
}  // namespace qtsp
