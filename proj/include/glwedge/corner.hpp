// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "glwedge/fieldmin.hpp"
#include "glwedge/mesh.hpp"
#include "glwedge/strip.hpp"

namespace glwedge
{

// Hexagonal wedge of opening angle beta. The plus arm frame is global: the
// outer edge VB lies on the x axis with the domain above it, so (s, t) = (x, y)
// there. The minus arm is the reflection across the bisector, with frame
// e_s = -(cos beta, sin beta), e_t = (sin beta, -cos beta) and s in [-L, 0].
struct WedgeGeometry
{
  double beta = 0.0;
  double L = 0.0;
  double ell = 0.0;
  double c = 0.0;  // cot(beta / 2)
  Eigen::Vector2d V, A, C, D, E, B;

  double Area() const;
  double Perimeter() const;
  double OuterLength() const { return 2.0 * L; }
  // Counterclockwise V, B, E, D, C, A.
  std::vector<Eigen::Vector2d> Polygon() const;
  double ShoelaceArea() const;
  Eigen::Vector2d MinusEs() const;
  Eigen::Vector2d MinusEt() const;
  // Reflection across the bisector.
  Eigen::Vector2d Mirror(const Eigen::Vector2d &p) const;
};

// Throws ValidationError unless beta in (0, 2 pi), L, ell > 0 and
// ell cot(beta / 2) <= L.
WedgeGeometry MakeWedgeGeometry(double beta, double L, double ell);

// Plus half by the row zipper, mirrored, Delaunay flipped and gated on the
// minimum angle. Requires ell cot(beta / 2) <= L - h. The 20 degree gate is
// met for beta above about 0.36.
Mesh2D BuildWedgeMesh(const WedgeGeometry &geom, double h, double min_angle_degrees = 20.0);

// |Gamma| / (2 pi |dGamma|) from the closed-form area and perimeter.
double IntegerConditionRatio(double beta, double L, double ell);

// Smallest L >= L_target in [L_target, 1.2 L_target] with an integer ratio;
// throws SolverError when there is none.
double AdjustForIntegerCondition(double beta, double L_target, double ell);

enum class PhaseConvention
{
  TANGENTIAL,  // f0 exp(-i alpha0 s - i s t / 2), maps to f0 exp(-i alpha0 s)
  LITERAL      // f0 exp(+i alpha0 s - i s t / 2)
};

const char *ConventionName(PhaseConvention c);

// Nodal psi_star in each node's arm frame (bisector nodes use the plus frame).
ComplexField BoundaryDataStar(const Mesh2D &mesh, const ReferenceProfile &ref,
                              PhaseConvention convention = PhaseConvention::TANGENTIAL);

// Nodal psi_0 = f0 exp(-+ i alpha0 s), the state paired with psi_star.
ComplexField TangentialState(const Mesh2D &mesh, const ReferenceProfile &ref,
                             PhaseConvention convention = PhaseConvention::TANGENTIAL);

struct WedgeGauge
{
  std::vector<double> phi;  // nodal gauge phase
  double delta = 0.0;       // angular half-width of the interpolation strip
  double sup_a_beta = 0.0;  // analytic sup of |F + grad phi| over the strip
  double bound = 0.0;       // 2 ell^4
  double max_curl_deviation = 0.0;
  double max_tangential_deviation = 0.0;
  double min_strip_layers = 0.0;  // strip width over h at the depth ell
  double integer_ratio = 0.0;
  bool integer_condition = false;
  std::string warning;
};

WedgeGauge BuildWedgeGauge(const WedgeGeometry &geom, const Mesh2D &mesh);

enum class CornerVariant
{
  DIRICHLET_STAR,
  NEUMANN_MODIFIED
};

enum class Formulation
{
  F_GAUGE,  // potential F = (-y, x) / 2 with psi_star data
  A_BETA    // potential F + grad phi with psi_0 data
};

const char *CornerVariantName(CornerVariant v);

struct CornerSpec
{
  double beta = 1.5707963267948966;
  double L = 8.0;
  double ell = 6.0;
  double b = 1.5;
  double h = 0.125;
  CornerVariant variant = CornerVariant::DIRICHLET_STAR;
  Formulation formulation = Formulation::F_GAUGE;
  PhaseConvention convention = PhaseConvention::TANGENTIAL;
  MinimizeOptions options;
};

struct CornerResult
{
  CornerSpec spec;
  WedgeGeometry geom;
  Mesh2D mesh;
  ReferenceProfile ref;
  ComplexField psi;
  double energy = 0.0;
  // E - 2 L E1D of the reference profile at the same spacing.
  double e_defect = 0.0;
  MinimizeReport report;
  DecayTable decay;
};

CornerResult SolveCorner(const CornerSpec &spec);

struct CornerRow
{
  double L = 0.0;
  double ell = 0.0;
  double h = 0.0;
  double energy = 0.0;
  double e1d = 0.0;
  double e = 0.0;
  bool converged = false;
  double decay_rate = 0.0;
};

struct CornerLimitRow
{
  double L = 0.0;
  double ell = 0.0;
  double e_extrapolated = 0.0;
};

struct CornerSchedule
{
  std::vector<double> ells{6.0, 8.0, 10.0};
  std::vector<double> hs{0.25, 0.125};
  double L_factor = 1.5;
  double L_margin = 2.0;
  bool adjust_integer = false;
  double plateau_tol = 5e-3;
};

struct CornerEstimate
{
  double beta = 0.0;
  double b = 0.0;
  std::vector<CornerRow> rows;
  std::vector<CornerLimitRow> limits;
  bool plateau = false;
  double e_corner = 0.0;
  double spread = 0.0;
  double e_corr = 0.0;
  double conjecture = 0.0;  // -(pi - beta) E_corr
};

// L for a schedule entry: max(L_factor ell, ell cot(beta/2) + L_margin),
// rounded up to a multiple of the coarsest spacing.
double ScheduleL(double beta, double ell, const CornerSchedule &schedule);

CornerEstimate CornerEnergyEstimate(double beta, double b, const CornerSchedule &schedule,
                                    double e_corr, const MinimizeOptions &options = {});

struct GapResult
{
  double energy_dirichlet = 0.0;
  double energy_neumann = 0.0;
  double gap = 0.0;
};

GapResult DirichletNeumannGap(double beta, double b, double L, double ell, double h,
                              const MinimizeOptions &options = {});

struct ConjectureRow
{
  double beta = 0.0;
  double e_corner = 0.0;
  double conjecture = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  bool plateau = false;
};

struct ConjectureTable
{
  double b = 0.0;
  double e_corr = 0.0;
  std::vector<ConjectureRow> rows;
  // Rows with |beta - pi| >= 0.3 whose e_corner has the sign of -(pi - beta) E_corr.
  int sign_checked = 0;
  int sign_agree = 0;
};

ConjectureTable ConjectureCheck(double b, const std::vector<double> &betas,
                                const CornerSchedule &schedule, double e_corr,
                                const MinimizeOptions &options = {});

}  // namespace glwedge
