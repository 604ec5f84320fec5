// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "glwedge/corner.hpp"
#include "glwedge/numerics.hpp"

namespace glwedge
{
namespace
{

constexpr double kPi = std::numbers::pi;

TEST(Corner, GeometryAreaPerimeterAndMesh)
{
  const double L = 12.0, ell = 6.0;
  for (double beta : {kPi / 3.0, kPi / 2.0, 2.0, kPi, 4.0})
  {
    const WedgeGeometry g = MakeWedgeGeometry(beta, L, ell);
    const double c = std::cos(beta / 2) / std::sin(beta / 2);
    EXPECT_NEAR(g.Area(), 2.0 * ell * L - ell * ell * c, 1e-12);
    EXPECT_NEAR(g.Perimeter(), 4.0 * L + 2.0 * ell - 2.0 * ell * c, 1e-12);
    EXPECT_NEAR(g.ShoelaceArea(), g.Area(), 1e-10);
    const Mesh2D mesh = BuildWedgeMesh(g, 0.25);
    EXPECT_NEAR(mesh.Area(), g.Area(), 1e-9) << "beta = " << beta;
    EXPECT_GE(mesh.MinAngleDegrees(), 20.0);
  }
}

TEST(Corner, AcuteWedgeMeetsAngleGate)
{
  for (double beta : {0.4, 0.79, 1.2})
  {
    const double L = std::ceil((6.0 / std::tan(0.5 * beta) + 2.0) / 0.25) * 0.25;
    const Mesh2D mesh = BuildWedgeMesh(MakeWedgeGeometry(beta, L, 6.0), 0.125);
    EXPECT_GE(mesh.MinAngleDegrees(), 20.0) << "beta = " << beta;
  }
}

TEST(Corner, GeometryValidation)
{
  EXPECT_THROW(MakeWedgeGeometry(0.0, 8.0, 6.0), ValidationError);
  EXPECT_THROW(MakeWedgeGeometry(2.0 * kPi, 8.0, 6.0), ValidationError);
  EXPECT_THROW(MakeWedgeGeometry(0.3, 8.0, 6.0), ValidationError);
}

TEST(Corner, MirrorIsAnInvolution)
{
  const WedgeGeometry g = MakeWedgeGeometry(1.1, 8.0, 3.0);
  const Eigen::Vector2d p(2.5, 1.25);
  EXPECT_LT((g.Mirror(g.Mirror(p)) - p).norm(), 1e-14);
  EXPECT_LT((g.Mirror(g.B) - g.A).norm(), 1e-12);
}

TEST(Corner, IntegerConditionUnattainableForSmallDepth)
{
  EXPECT_LT(IntegerConditionRatio(kPi / 2.0, 8.0, 6.0), 6.0 / (4.0 * kPi));
  EXPECT_THROW(AdjustForIntegerCondition(kPi / 2.0, 8.0, 6.0), SolverError);
}

TEST(Corner, GaugeBoundsAndCurl)
{
  const WedgeGeometry g = MakeWedgeGeometry(kPi / 2.0, 8.0, 6.0);
  const Mesh2D mesh = BuildWedgeMesh(g, 0.25);
  const WedgeGauge gauge = BuildWedgeGauge(g, mesh);
  EXPECT_LE(gauge.sup_a_beta, gauge.bound);
  EXPECT_LT(gauge.max_curl_deviation, 1e-10);
  EXPECT_LT(gauge.max_tangential_deviation, 1e-10);
  EXPECT_FALSE(gauge.integer_condition);
}

TEST(Corner, FlatAngleHasZeroDefect)
{
  CornerSpec spec;
  spec.beta = kPi;
  spec.L = 6.0;
  spec.ell = 8.0;
  spec.h = 0.25;
  const CornerResult r = SolveCorner(spec);
  EXPECT_TRUE(r.report.converged);
  EXPECT_LT(std::abs(r.e_defect), 1e-10);
}

TEST(Corner, GaugePairAndNeumannGapAtRightAngle)
{
  CornerSpec spec;
  spec.L = 8.0;
  spec.ell = 6.0;
  spec.h = 0.25;
  const CornerResult f = SolveCorner(spec);
  spec.formulation = Formulation::A_BETA;
  const CornerResult a = SolveCorner(spec);
  EXPECT_NEAR(f.energy, a.energy, 1e-7);
  EXPECT_LT(f.e_defect, 0.0);
  const GapResult gap = DirichletNeumannGap(kPi / 2.0, 1.5, 8.0, 6.0, 0.25);
  EXPECT_GE(gap.gap, -20.0 * 0.0625);
}

TEST(Corner, ScheduleLengthRoundsToSpacing)
{
  CornerSchedule s;
  EXPECT_DOUBLE_EQ(ScheduleL(kPi / 2.0, 6.0, s), 9.0);
  EXPECT_DOUBLE_EQ(ScheduleL(0.8, 6.0, s), std::ceil((6.0 / std::tan(0.4) + 2.0) / 0.25) * 0.25);
}

}  // namespace
}  // namespace glwedge
