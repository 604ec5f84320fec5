// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glwedge/fieldmin.hpp"
#include "glwedge/mesh.hpp"
#include "glwedge/profile1d.hpp"

namespace glwedge
{

// Interval profile (f0, alpha0) on the row grid of a 2D mesh, with its
// potential function F0 for the boundary current weight F0 / f0^2.
struct ReferenceProfile
{
  Profile1D profile;
  CostTables tables;

  double alpha() const { return profile.alpha; }
  double energy() const { return profile.energy; }
  double ell() const { return profile.params.ell; }
  // Linear interpolation on the profile grid, clamped to [0, ell].
  double f0(double t) const;
  double F0(double t) const;
  // F0 / f0^2; infinite where f0 underflows.
  double Weight(double t) const;
};

// Profile with n = round(ell / h) + 1 so that its grid matches the mesh rows.
// LATTICE makes the strip trial state an exact discrete critical point.
ReferenceProfile MakeReferenceProfile(double b, double ell, double h,
                                      Potential1D potential = Potential1D::LATTICE);

enum class StripVariant
{
  DIRICHLET,
  NEUMANN_MODIFIED,
  DIRICHLET_PHASE
};

const char *VariantName(StripVariant v);

struct StripSpec
{
  double L = 4.0;
  double ell = 10.0;
  double b = 1.5;
  double h = 0.125;
  StripVariant variant = StripVariant::DIRICHLET;
  // Phase kappa(t) for DIRICHLET_PHASE.
  std::function<double(double t)> kappa;
  MinimizeOptions options;

  void Validate() const;
};

struct StripSetup
{
  Mesh2D mesh;
  ReferenceProfile ref;
  PotentialField potential;
  BoundarySpec bc;
  // f0(t) exp(-i alpha0 s), times exp(i kappa(t)) for the phase variant.
  ComplexField trial;
};

StripSetup PrepareStrip(const StripSpec &spec);

struct StripResult
{
  StripSpec spec;
  StripSetup setup;
  ComplexField psi;
  double energy = 0.0;
  double e_per_length = 0.0;
  MinimizeReport report;
  DecayTable decay;
};

// Minimizes from the trial state unless an initial field is given.
StripResult SolveStrip(const StripSpec &spec, const ComplexField *initial = nullptr);

struct EnergySplit
{
  double bulk = 0.0;     // L * E1D of the reference profile
  double reduced = 0.0;  // E0[u]
  double mismatch = 0.0; // E - bulk - reduced
  int excluded_cells = 0;
};

// u = psi / (f0 exp(-i alpha0 s)) nodally; E0[u] by P1 gradients and
// centroid quadrature, skipping cells where f0 < 1e-14.
EnergySplit ReducedEnergySplit(const ComplexField &psi, const Mesh2D &mesh,
                               const ReferenceProfile &ref, double b, double L, double energy);

struct FieldDiagnostics
{
  double ds_modulus_sq = 0.0;     // ||d_s |psi| ||^2
  double covariant_sq = 0.0;      // ||(grad - i t e_s) psi||^2
  double ds_mass_at_L = 0.0;      // d/ds of int |psi|^2 dt at s = L
  double sup_deviation = 0.0;     // sup over t <= T of ||psi| - f0(t)|
  double winding = 0.0;           // phase winding along t = 0 divided by 2 pi
  double expected_winding = 0.0;  // -alpha0 L / (2 pi)
  double T = 0.0;
};

FieldDiagnostics ComputeFieldDiagnostics(const StripResult &res, double T);

}  // namespace glwedge
