// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "glwedge/numerics.hpp"
#include "glwedge/strip.hpp"

namespace glwedge
{
namespace
{

StripSpec Coarse()
{
  StripSpec spec;
  spec.L = 4.0;
  spec.ell = 10.0;
  spec.b = 1.5;
  spec.h = 0.25;
  return spec;
}

TEST(Strip, TrialStateIsExactCriticalPoint)
{
  const StripSetup setup = PrepareStrip(Coarse());
  const DiscreteProblem problem(setup.mesh, setup.potential, 1.5, setup.bc);
  EXPECT_NEAR(problem.Energy(setup.trial), 4.0 * setup.ref.energy(), 1e-14);
  EXPECT_LT(problem.GradientNorm(problem.Gradient(setup.trial)), 1e-12);
}

TEST(Strip, DirichletEnergyIsLengthTimesLatticeProfile)
{
  const StripResult r = SolveStrip(Coarse());
  EXPECT_TRUE(r.report.converged);
  EXPECT_NEAR(r.e_per_length, r.setup.ref.energy(), 1e-12);
  const FieldDiagnostics d = ComputeFieldDiagnostics(r, 5.0);
  EXPECT_NEAR(d.winding, d.expected_winding, 1e-9);
  EXPECT_LT(d.ds_modulus_sq, 1e-20);
}

TEST(Strip, NeumannIsBelowDirichlet)
{
  StripSpec spec = Coarse();
  const double e_d = SolveStrip(spec).energy;
  spec.variant = StripVariant::NEUMANN_MODIFIED;
  const StripResult n = SolveStrip(spec);
  EXPECT_TRUE(n.report.converged);
  EXPECT_LE(n.energy, e_d + 1e-12);
  EXPECT_GT(n.energy, e_d - 20.0 * spec.h * spec.h);
  const EnergySplit split = ReducedEnergySplit(n.psi, n.setup.mesh, n.setup.ref, spec.b, spec.L,
                                               n.energy);
  EXPECT_LT(std::abs(split.mismatch), 20.0 * spec.h * spec.h);
  EXPECT_GT(n.decay.rate, 0.2);
}

TEST(Strip, ConstantPhaseMatchesDirichlet)
{
  StripSpec spec = Coarse();
  const double e_d = SolveStrip(spec).energy;
  spec.variant = StripVariant::DIRICHLET_PHASE;
  spec.kappa = [](double) { return -1.3; };
  EXPECT_NEAR(SolveStrip(spec).energy, e_d, 1e-10);
}

TEST(Strip, ValidationErrors)
{
  StripSpec spec = Coarse();
  spec.h = 3.0;
  EXPECT_THROW(SolveStrip(spec), ValidationError);
  spec = Coarse();
  spec.variant = StripVariant::DIRICHLET_PHASE;
  EXPECT_THROW(SolveStrip(spec), ValidationError);
}

TEST(Strip, ReferenceWeightInsideUnitBandNearOuterEdge)
{
  const ReferenceProfile ref = MakeReferenceProfile(1.5, 10.0, 0.005, Potential1D::CONTINUUM);
  EXPECT_NEAR(ref.Weight(0.0), 0.0, 1e-12);
  for (double t = 0.0; t <= 8.0; t += 0.25)
  {
    EXPECT_LE(std::abs(ref.Weight(t)), 1.0) << "t = " << t;
  }
}

}  // namespace
}  // namespace glwedge
