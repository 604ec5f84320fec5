// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "glwedge/fieldmin.hpp"
#include "glwedge/mesh.hpp"
#include "glwedge/numerics.hpp"

namespace glwedge
{
namespace
{

ComplexField RandomField(int n, std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ComplexField psi(n);
  for (Complex &z : psi)
  {
    z = Complex(unit(rng), unit(rng));
  }
  return psi;
}

TEST(FieldMin, LinkPhaseIsExactLineIntegral)
{
  const Mesh2D mesh = BuildStripMesh(1.0, 1.0, 0.5);
  PotentialField f;
  f.kind = PotentialKind::F_HALF_PERP;
  PotentialField t;
  t.kind = PotentialKind::TANGENTIAL_MINUS_T;
  for (int a = 0; a < mesh.NumNodes(); a++)
  {
    for (int b = 0; b < mesh.NumNodes(); b++)
    {
      const auto &p = mesh.nodes[a];
      const auto &q = mesh.nodes[b];
      const double flux_f = 0.5 * (p.x() * q.y() - p.y() * q.x());
      EXPECT_NEAR(f.LinkPhase(mesh, a, b), flux_f, 1e-14);
      EXPECT_NEAR(t.LinkPhase(mesh, a, b), -0.5 * (p.y() + q.y()) * (q.x() - p.x()), 1e-14);
    }
  }
}

TEST(FieldMin, GaugeCovariance)
{
  // E(psi e^{-i chi}; A + grad chi) = E(psi; A) for any nodal chi.
  const Mesh2D mesh = BuildStripMesh(2.0, 1.5, 0.25);
  std::mt19937_64 rng(3);
  const ComplexField psi = RandomField(mesh.NumNodes(), rng);
  PotentialField base;
  PotentialField shifted;
  shifted.gauge_phase.resize(mesh.NumNodes());
  ComplexField rotated = psi;
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    shifted.gauge_phase[i] = unit(rng);
    rotated[i] *= std::polar(1.0, -shifted.gauge_phase[i]);
  }
  BoundarySpec bc;
  bc.current_term = true;
  bc.weight = [](double t) { return -0.4 * t; };
  EXPECT_NEAR(AssembleEnergy(mesh, base, 1.5, bc, psi),
              AssembleEnergy(mesh, shifted, 1.5, bc, rotated), 1e-11);
}

TEST(FieldMin, LinePolynomialMatchesEnergy)
{
  const Mesh2D mesh = BuildStripMesh(2.0, 1.0, 0.25);
  std::mt19937_64 rng(11);
  const ComplexField psi = RandomField(mesh.NumNodes(), rng);
  const ComplexField d = RandomField(mesh.NumNodes(), rng);
  BoundarySpec bc;
  bc.current_term = true;
  bc.weight = [](double) { return 0.3; };
  const DiscreteProblem problem(mesh, PotentialField{}, 1.3, bc);
  const auto c = problem.LineCoefficients(psi, d);
  const double e0 = problem.Energy(psi);
  for (double s : {-0.7, 0.2, 1.1})
  {
    ComplexField moved = psi;
    for (std::size_t i = 0; i < moved.size(); i++)
    {
      moved[i] += s * d[i];
    }
    const double poly = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * c[4])));
    EXPECT_NEAR(problem.Energy(moved) - e0, poly - c[0], 1e-11 * (1.0 + std::abs(e0)));
  }
}

TEST(FieldMin, DirichletNodesHaveZeroGradient)
{
  const Mesh2D mesh = BuildStripMesh(1.0, 1.0, 0.25);
  BoundarySpec bc;
  bc.dirichlet[static_cast<int>(BoundaryTag::INNER)] = true;
  bc.data = [](int) { return Complex(0.5, 0.0); };
  const DiscreteProblem problem(mesh, PotentialField{}, 1.5, bc);
  std::mt19937_64 rng(5);
  const ComplexField g = problem.Gradient(RandomField(mesh.NumNodes(), rng));
  int fixed = 0;
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    if (problem.fixed()[i])
    {
      fixed++;
      EXPECT_EQ(g[i], Complex(0.0, 0.0));
    }
  }
  EXPECT_EQ(fixed, 5);
}

TEST(FieldMin, NonFiniteWeightIsRejected)
{
  const Mesh2D mesh = BuildStripMesh(1.0, 1.0, 0.25);
  BoundarySpec bc;
  bc.current_term = true;
  bc.weight = [](double t) { return t > 0.5 ? INFINITY : 0.0; };
  EXPECT_THROW(DiscreteProblem(mesh, PotentialField{}, 1.5, bc), ValidationError);
}

TEST(FieldMin, MinimizerLowersEnergyAndConverges)
{
  const Mesh2D mesh = BuildStripMesh(2.0, 3.0, 0.25);
  BoundarySpec bc;
  bc.dirichlet[static_cast<int>(BoundaryTag::INNER)] = true;
  bc.data = [](int) { return Complex(0.0, 0.0); };
  const DiscreteProblem problem(mesh, PotentialField{}, 0.8, bc);
  ComplexField start(mesh.NumNodes(), Complex(0.3, 0.1));
  problem.ImposeDirichlet(start);
  const MinimizeResult r = Minimize(problem, start);
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.energy, r.report.initial_energy);
  EXPECT_LT(r.report.gradient_norm, 1e-8);
}

TEST(FieldMin, DecayOfTrivialFieldIsFlagged)
{
  const Mesh2D mesh = BuildStripMesh(2.0, 6.0, 0.25);
  const DecayTable d = AgmonDecayProfile(ComplexField(mesh.NumNodes()), mesh, 6.0);
  EXPECT_TRUE(d.trivial);
}

}  // namespace
}  // namespace glwedge
