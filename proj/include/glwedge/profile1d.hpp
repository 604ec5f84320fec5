// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace glwedge
{

// Which discrete potential multiplies f^2.
//   CONTINUUM: ((t + a - eps k t^2 / 2) / (1 - eps k t))^2
//   LATTICE:   (2 - 2 cos((t + a) h)) / h^2, the exact per-length energy of
//              f(t) exp(-i a s) on a square link-variable lattice (k = 0 only).
enum class Potential1D
{
  CONTINUUM,
  LATTICE
};

struct Params1D
{
  double b = 1.5;
  double k = 0.0;
  double eps = 0.0;
  double ell = 12.0;
  int n = 2401;
  double theta0 = 0.5901;
  Potential1D potential = Potential1D::CONTINUUM;

  double h() const { return ell / (n - 1); }
  double t(int i) const { return i * h(); }
  double Weight(double t) const { return 1.0 - eps * k * t; }

  // Throws ValidationError on n < 16, ell <= 0, b <= 0, degenerate weight,
  // or a lattice potential with nonzero curvature.
  void Validate() const;

  // True when b lies outside (1, 1/theta0).
  bool OutsideSurfaceRegime() const;
};

struct Profile1D
{
  Params1D params;
  double alpha = 0.0;
  std::vector<double> f;
  double energy = 0.0;
  // Sup norm of the discrete Euler-Lagrange residual, per unit length.
  double residual = 0.0;
  // Residual of the natural boundary condition at t = 0 and t = ell.
  double neumann_residual = 0.0;
  // Integral of (t + a - eps k t^2/2) f^2 / (1 - eps k t); zero at the optimal alpha.
  double stationarity = 0.0;
  // Lowest eigenvalue of the linearized operator at f = 0, minus 1/b.
  double linear_gap = 0.0;
  bool degenerate = false;
  int newton_iterations = 0;
};

struct CostTables
{
  std::vector<double> F;
  std::vector<double> K;
  double d_ell = 0.0;
  double ell_bar = 0.0;
  double t_m = 0.0;
  double K_min = 0.0;
  // F(ell) from forward accumulation, a direct check of the endpoint zero.
  double F_end_forward = 0.0;
};

struct Violation
{
  std::string what;
  double t = 0.0;
  double value = 0.0;
};

struct CostReport
{
  bool ok = true;
  double min_K_window = 0.0;
  double max_F = 0.0;
  double min_second_difference = 0.0;
  std::vector<Violation> violations;
};

struct HalfLineSummary
{
  double b = 0.0;
  double e1d_star = 0.0;
  double alpha_star = 0.0;
  double f0_at_0 = 0.0;
  double e_corr_integral = 0.0;
  // f(0)^2 / 3 - alpha E, the form that matches the integral identity.
  double e_corr_closed = 0.0;
  // (1/3) f(0)^2 alpha - E as printed in the source formula.
  double e_corr_closed_literal = 0.0;
  double e_corr_difference = 0.0;
  double ell_used = 0.0;
  bool converged = false;
  std::vector<double> energies;
};

struct CurvatureRow
{
  double eps = 0.0;
  double ell = 0.0;
  double e1d_k = 0.0;
  double predicted = 0.0;
  double difference = 0.0;
};

struct CurvatureTable
{
  std::vector<CurvatureRow> rows;
  double fitted_exponent = 0.0;
  bool ok = false;
};

struct DecayReport
{
  bool trivial = false;
  bool ok = false;
  double c_lower = 0.0;
  double c_upper = 0.0;
  double c_derivative = 0.0;
  std::string message;
};

std::vector<double> Grid(const Params1D &p);

// Discrete energy: staggered differences for the kinetic term, trapezoid
// weights for the rest.
double Energy1D(const std::vector<double> &f, double alpha, const Params1D &p);

// Exact gradient of Energy1D with respect to f.
std::vector<double> Gradient1D(const std::vector<double> &f, double alpha,
                               const Params1D &p);

// Trapezoid weights m_i times the curvature weight w(t_i).
std::vector<double> QuadratureWeights(const Params1D &p);

// Minimizer over f >= 0 at fixed alpha. Returns f = 0 when it is the lower
// energy critical point.
Profile1D SolveProfileFixedAlpha(double alpha, const Params1D &p,
                                 const std::vector<double> *guess = nullptr);

// Minimizes over alpha as well.
Profile1D OptimizeAlpha(const Params1D &p);

// Integral form of the curvature correction for a k = 0 profile.
double ECorrIntegral(const Profile1D &prof);

// Half-line limit by increasing ell at fixed spacing h.
HalfLineSummary HalfLineLimit(double b, const std::vector<double> &ell_schedule,
                              double h = 0.005);

// Same quantities at a single ell, extrapolated from n and 2n - 1 points.
HalfLineSummary SummaryRichardson(double b, double ell, int n);

CostTables ComputeCostTables(const Profile1D &prof, double d_ell_constant = 1.0);

CostReport CheckCostPositivity(const CostTables &ct, const Profile1D &prof,
                               bool interval_problem = true);

CurvatureTable CurvatureExpansionCheck(double b, double k, const std::vector<double> &eps_list,
                                       double c1 = 5.0, double h = 0.005);

DecayReport DecayCheck(const Profile1D &prof);

}  // namespace glwedge
