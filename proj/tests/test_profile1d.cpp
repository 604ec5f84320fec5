// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "glwedge/numerics.hpp"
#include "glwedge/profile1d.hpp"

namespace glwedge
{
namespace
{

Params1D Make(double b, double ell, int n)
{
  Params1D p;
  p.b = b;
  p.ell = ell;
  p.n = n;
  return p;
}

TEST(Profile1D, RejectsInvalidParameters)
{
  EXPECT_THROW(Make(1.5, 12.0, 8).Validate(), ValidationError);
  EXPECT_THROW(Make(1.5, -1.0, 100).Validate(), ValidationError);
  Params1D p = Make(1.5, 12.0, 100);
  p.k = 1.0;
  p.eps = 0.1;
  EXPECT_THROW(p.Validate(), ValidationError);
}

TEST(Profile1D, RegimeWarningGate)
{
  EXPECT_TRUE(Make(0.5, 12.0, 100).OutsideSurfaceRegime());
  EXPECT_FALSE(Make(1.5, 12.0, 100).OutsideSurfaceRegime());
  EXPECT_TRUE(Make(1.8, 12.0, 100).OutsideSurfaceRegime());
}

TEST(Profile1D, EnergyIdentityAtMinimizer)
{
  const Params1D p = Make(1.5, 12.0, 1201);
  const Profile1D prof = OptimizeAlpha(p);
  const std::vector<double> m = QuadratureWeights(p);
  double quartic = 0.0;
  for (int i = 0; i < p.n; i++)
  {
    quartic += m[i] * std::pow(prof.f[i], 4);
  }
  EXPECT_LT(std::abs(prof.energy + quartic / (2.0 * p.b)), 1e-10);
  EXPECT_LT(prof.energy, 0.0);
  EXPECT_LT(std::abs(prof.stationarity), 1e-8);
}

TEST(Profile1D, FirstIntegralRelatesAlphaAndBoundaryValue)
{
  // alpha^2 = (1 / b)(1 - f(0)^2 / 2) on the half-line.
  const HalfLineSummary s = SummaryRichardson(1.5, 12.0, 1201);
  EXPECT_NEAR(s.alpha_star * s.alpha_star, (1.0 - 0.5 * s.f0_at_0 * s.f0_at_0) / 1.5, 1e-5);
}

TEST(Profile1D, SecondOrderConvergence)
{
  const double e1 = OptimizeAlpha(Make(1.5, 12.0, 301)).energy;
  const double e2 = OptimizeAlpha(Make(1.5, 12.0, 601)).energy;
  const double e3 = OptimizeAlpha(Make(1.5, 12.0, 1201)).energy;
  const double order = ObservedOrder(e1, e2, e3);
  EXPECT_GT(order, 1.8);
  EXPECT_LT(order, 2.2);
}

TEST(Profile1D, GradientMatchesFiniteDifferences)
{
  const Params1D p = Make(1.2, 10.0, 201);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> f(p.n);
  for (int i = 0; i < p.n; i++)
  {
    f[i] = std::exp(-p.t(i)) + 0.1 * unit(rng);
  }
  const double alpha = -0.6;
  const std::vector<double> g = Gradient1D(f, alpha, p);
  for (int k = 0; k < 20; k++)
  {
    const int i = static_cast<int>(rng() % p.n);
    const double eta = 1e-6;
    std::vector<double> fp = f, fm = f;
    fp[i] += eta;
    fm[i] -= eta;
    const double fd = (Energy1D(fp, alpha, p) - Energy1D(fm, alpha, p)) / (2.0 * eta);
    EXPECT_NEAR(fd, g[i], 1e-6 * std::max(1e-3, std::abs(g[i])));
  }
}

TEST(Profile1D, CostFunctionProperties)
{
  const Profile1D prof = OptimizeAlpha(Make(1.5, 12.0, 2401));
  const CostTables ct = ComputeCostTables(prof);
  const CostReport rep = CheckCostPositivity(ct, prof);
  EXPECT_TRUE(rep.ok);
  EXPECT_NEAR(ct.F.front(), 0.0, 1e-12);
  EXPECT_LT(ct.K_min, 0.0);
  EXPECT_GT(ct.t_m, ct.ell_bar);
  EXPECT_NEAR(ct.d_ell, std::pow(12.0, -4), 1e-15);
}

TEST(Profile1D, CurvatureCorrectionIsPositiveAndClosedFormsAgree)
{
  const HalfLineSummary s = SummaryRichardson(1.5, 12.0, 1201);
  EXPECT_GT(s.e_corr_integral, 0.0);
  EXPECT_NEAR(s.e_corr_closed, s.e_corr_integral, 1e-5);
}

TEST(Profile1D, LatticePotentialApproachesContinuum)
{
  Params1D p = Make(1.5, 10.0, 41);
  p.potential = Potential1D::LATTICE;
  const double lattice = OptimizeAlpha(p).energy;
  p.potential = Potential1D::CONTINUUM;
  const double continuum = OptimizeAlpha(p).energy;
  EXPECT_NEAR(lattice, continuum, 5e-4);
}

}  // namespace
}  // namespace glwedge
