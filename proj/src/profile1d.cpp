// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/profile1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Sparse>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

using SpMat = Eigen::SparseMatrix<double>;
using Ldlt = Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::NaturalOrdering<int>>;

// Per-grid data that does not depend on f.
struct Discretization
{
  int n = 0;
  double h = 0.0;
  std::vector<double> t;
  std::vector<double> m;     // trapezoid weights
  std::vector<double> mw;    // m * w(t)
  std::vector<double> c;     // cell weights w(t_{j+1/2}) / h
  std::vector<double> V;     // potential
  std::vector<double> dVw;   // w * dV/dalpha
};

Discretization Discretize(double alpha, const Params1D &p)
{
  Discretization d;
  d.n = p.n;
  d.h = p.h();
  d.t.resize(p.n);
  d.m.assign(p.n, d.h);
  d.m.front() = d.m.back() = 0.5 * d.h;
  d.mw.resize(p.n);
  d.V.resize(p.n);
  d.dVw.resize(p.n);
  d.c.resize(p.n - 1);
  const double ek = p.eps * p.k;
  for (int i = 0; i < p.n; i++)
  {
    const double t = p.t(i);
    const double w = p.Weight(t);
    d.t[i] = t;
    d.mw[i] = d.m[i] * w;
    if (p.potential == Potential1D::LATTICE)
    {
      const double x = (t + alpha) * d.h;
      d.V[i] = (2.0 - 2.0 * std::cos(x)) / (d.h * d.h);
      d.dVw[i] = 2.0 * std::sin(x) / d.h;
    }
    else
    {
      const double q = (t + alpha - 0.5 * ek * t * t) / w;
      d.V[i] = q * q;
      d.dVw[i] = 2.0 * q;
    }
  }
  for (int j = 0; j + 1 < p.n; j++)
  {
    d.c[j] = p.Weight(p.t(j) + 0.5 * d.h) / d.h;
  }
  return d;
}

double EnergyOf(const Discretization &d, const std::vector<double> &f, double b)
{
  double kin = 0.0, pot = 0.0;
  for (int j = 0; j + 1 < d.n; j++)
  {
    const double df = f[j + 1] - f[j];
    kin += d.c[j] * df * df;
  }
  for (int i = 0; i < d.n; i++)
  {
    const double f2 = f[i] * f[i];
    pot += d.mw[i] * (d.V[i] * f2 - f2 / b + 0.5 * f2 * f2 / b);
  }
  return kin + pot;
}

std::vector<double> GradientOf(const Discretization &d, const std::vector<double> &f, double b)
{
  std::vector<double> g(d.n, 0.0);
  for (int j = 0; j + 1 < d.n; j++)
  {
    const double q = 2.0 * d.c[j] * (f[j + 1] - f[j]);
    g[j] -= q;
    g[j + 1] += q;
  }
  for (int i = 0; i < d.n; i++)
  {
    g[i] += d.mw[i] * 2.0 * f[i] * (d.V[i] - 1.0 / b + f[i] * f[i] / b);
  }
  return g;
}

SpMat Tridiagonal(const std::vector<double> &diag, const std::vector<double> &off)
{
  const int n = static_cast<int>(diag.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * n);
  for (int i = 0; i < n; i++)
  {
    trip.emplace_back(i, i, diag[i]);
    if (i + 1 < n)
    {
      trip.emplace_back(i + 1, i, off[i]);
      trip.emplace_back(i, i + 1, off[i]);
    }
  }
  SpMat A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

// Hessian of the energy, optionally shifted by tau * diag(mw).
SpMat HessianOf(const Discretization &d, const std::vector<double> &f, double b, double tau)
{
  std::vector<double> diag(d.n, 0.0), off(d.n - 1, 0.0);
  for (int j = 0; j + 1 < d.n; j++)
  {
    diag[j] += 2.0 * d.c[j];
    diag[j + 1] += 2.0 * d.c[j];
    off[j] = -2.0 * d.c[j];
  }
  for (int i = 0; i < d.n; i++)
  {
    diag[i] += d.mw[i] * (2.0 * d.V[i] - 2.0 / b + 6.0 * f[i] * f[i] / b + tau);
  }
  return Tridiagonal(diag, off);
}

bool PositiveDefinite(const Ldlt &solver)
{
  if (solver.info() != Eigen::Success)
  {
    return false;
  }
  const Eigen::VectorXd D = solver.vectorD();
  return (D.array() > 0.0).all();
}

// Lowest eigenpair of (K + diag(mw V)) phi = lambda diag(mw) phi by shifted
// inverse iteration. The spectrum is bounded below by min V >= 0.
double LowestMode(const Discretization &d, std::vector<double> &phi)
{
  const double sigma = -1.0;
  std::vector<double> diag(d.n, 0.0), off(d.n - 1, 0.0);
  for (int j = 0; j + 1 < d.n; j++)
  {
    diag[j] += d.c[j];
    diag[j + 1] += d.c[j];
    off[j] = -d.c[j];
  }
  for (int i = 0; i < d.n; i++)
  {
    diag[i] += d.mw[i] * (d.V[i] - sigma);
  }
  Ldlt solver(Tridiagonal(diag, off));
  if (solver.info() != Eigen::Success)
  {
    throw SolverError("linearized operator factorization failed");
  }
  Eigen::VectorXd x = Eigen::VectorXd::Ones(d.n), Mx(d.n);
  double lambda = 0.0;
  for (int it = 0; it < 500; it++)
  {
    for (int i = 0; i < d.n; i++)
    {
      Mx[i] = d.mw[i] * x[i];
    }
    Eigen::VectorXd y = solver.solve(Mx);
    double yMy = 0.0, yMx = 0.0;
    for (int i = 0; i < d.n; i++)
    {
      yMy += d.mw[i] * y[i] * y[i];
      yMx += d.mw[i] * y[i] * x[i];
    }
    // Rayleigh quotient of the shifted inverse.
    const double next = sigma + yMx / yMy;
    x = y / std::sqrt(yMy);
    const bool done = it > 3 && std::abs(next - lambda) <= 1e-13 * (1.0 + std::abs(next));
    lambda = next;
    if (done)
    {
      break;
    }
  }
  phi.resize(d.n);
  for (int i = 0; i < d.n; i++)
  {
    phi[i] = std::abs(x[i]);
  }
  return lambda;
}

double MaxResidual(const Discretization &d, const std::vector<double> &g)
{
  double r = 0.0;
  for (int i = 0; i < d.n; i++)
  {
    r = std::max(r, std::abs(g[i]) / (2.0 * d.m[i]));
  }
  return r;
}

double Stationarity(const Discretization &d, const std::vector<double> &f)
{
  double s = 0.0;
  for (int i = 0; i < d.n; i++)
  {
    s += d.m[i] * 0.5 * d.dVw[i] * f[i] * f[i];
  }
  return s;
}

Profile1D ZeroProfile(double alpha, const Params1D &p, double gap)
{
  Profile1D prof;
  prof.params = p;
  prof.alpha = alpha;
  prof.f.assign(p.n, 0.0);
  prof.degenerate = true;
  prof.linear_gap = gap;
  return prof;
}

}  // namespace

void Params1D::Validate() const
{
  if (n < 16)
  {
    throw ValidationError("n must be at least 16");
  }
  if (!(ell > 0.0))
  {
    throw ValidationError("ell must be positive");
  }
  if (!(b > 0.0))
  {
    throw ValidationError("b must be positive");
  }
  if (eps < 0.0)
  {
    throw ValidationError("eps must be nonnegative");
  }
  if (eps * std::abs(k) * ell >= 1.0)
  {
    throw ValidationError("degenerate weight: eps*|k|*ell >= 1");
  }
  if (potential == Potential1D::LATTICE && eps * k != 0.0)
  {
    throw ValidationError("lattice potential requires eps*k = 0");
  }
}

bool Params1D::OutsideSurfaceRegime() const
{
  return !(b > 1.0 && b < 1.0 / theta0);
}

std::vector<double> Grid(const Params1D &p)
{
  std::vector<double> t(p.n);
  for (int i = 0; i < p.n; i++)
  {
    t[i] = p.t(i);
  }
  return t;
}

std::vector<double> QuadratureWeights(const Params1D &p)
{
  return Discretize(0.0, p).mw;
}

double Energy1D(const std::vector<double> &f, double alpha, const Params1D &p)
{
  p.Validate();
  if (static_cast<int>(f.size()) != p.n)
  {
    throw ValidationError("profile length does not match n");
  }
  return EnergyOf(Discretize(alpha, p), f, p.b);
}

std::vector<double> Gradient1D(const std::vector<double> &f, double alpha, const Params1D &p)
{
  p.Validate();
  if (static_cast<int>(f.size()) != p.n)
  {
    throw ValidationError("profile length does not match n");
  }
  return GradientOf(Discretize(alpha, p), f, p.b);
}

Profile1D SolveProfileFixedAlpha(double alpha, const Params1D &p, const std::vector<double> *guess)
{
  p.Validate();
  const Discretization d = Discretize(alpha, p);
  const double b = p.b;

  std::vector<double> phi;
  const double lambda = LowestMode(d, phi);
  const double gap = lambda - 1.0 / b;
  if (gap >= 0.0)
  {
    // E(f) >= gap * |f|_M^2 >= 0, so f = 0 is the global minimizer.
    return ZeroProfile(alpha, p, gap);
  }

  // Positive-branch seed: the optimal multiple of the lowest mode, which has
  // negative energy whenever gap < 0.
  std::vector<double> f(d.n);
  {
    double phiM = 0.0, phi4 = 0.0;
    for (int i = 0; i < d.n; i++)
    {
      phiM += d.mw[i] * phi[i] * phi[i];
      phi4 += d.mw[i] * std::pow(phi[i], 4);
    }
    const double c2 = -gap * phiM * b / phi4;
    const double c = std::sqrt(std::max(c2, 0.0));
    for (int i = 0; i < d.n; i++)
    {
      f[i] = c * phi[i];
    }
  }
  double E = EnergyOf(d, f, b);
  if (guess != nullptr && static_cast<int>(guess->size()) == d.n)
  {
    const double Eg = EnergyOf(d, *guess, b);
    if (Eg < E)
    {
      f = *guess;
      E = Eg;
    }
  }

  int it = 0;
  double tau = 0.0;
  const int max_iter = 200;
  for (; it < max_iter; it++)
  {
    const std::vector<double> g = GradientOf(d, f, b);
    const double res = MaxResidual(d, g);
    Ldlt solver;
    tau = 0.0;
    for (;;)
    {
      solver.compute(HessianOf(d, f, b, tau));
      if (PositiveDefinite(solver))
      {
        break;
      }
      tau = tau == 0.0 ? 1e-3 : 4.0 * tau;
      if (tau > 1e8)
      {
        throw SolverError("Hessian modification failed");
      }
    }
    Eigen::VectorXd rhs(d.n);
    for (int i = 0; i < d.n; i++)
    {
      rhs[i] = -g[i];
    }
    const Eigen::VectorXd dx = solver.solve(rhs);
    double slope = 0.0, rel = 0.0;
    for (int i = 0; i < d.n; i++)
    {
      slope += g[i] * dx[i];
      rel = std::max(rel, std::abs(dx[i]) / std::max(std::abs(f[i]), 1e-300));
    }
    // Close to the solution take plain Newton steps; energy differences are
    // at roundoff level there and would defeat a sufficient-decrease test.
    const bool local = tau == 0.0 && res < 1e-6;
    double step = 1.0;
    std::vector<double> trial(d.n);
    for (int ls = 0; ls < 60; ls++)
    {
      for (int i = 0; i < d.n; i++)
      {
        trial[i] = std::max(f[i] + step * dx[i], 0.0);
      }
      if (local)
      {
        break;
      }
      const double Et = EnergyOf(d, trial, b);
      if (Et <= E + 1e-4 * step * slope)
      {
        break;
      }
      step *= 0.5;
    }
    f.swap(trial);
    E = EnergyOf(d, f, b);
    if (local && rel < 1e-12)
    {
      it++;
      break;
    }
  }
  if (it >= max_iter)
  {
    throw SolverError("profile Newton iteration did not converge");
  }

  // Ties with the zero branch resolve toward f = 0.
  if (E > -1e-12)
  {
    return ZeroProfile(alpha, p, gap);
  }

  Profile1D prof;
  prof.params = p;
  prof.alpha = alpha;
  prof.f = std::move(f);
  prof.energy = E;
  const std::vector<double> g = GradientOf(d, prof.f, b);
  prof.residual = MaxResidual(d, g);
  prof.neumann_residual = std::max(std::abs(g.front()) / (2.0 * d.m.front()),
                                   std::abs(g.back()) / (2.0 * d.m.back()));
  prof.stationarity = Stationarity(d, prof.f);
  prof.linear_gap = gap;
  prof.newton_iterations = it;
  return prof;
}

Profile1D OptimizeAlpha(const Params1D &p)
{
  p.Validate();
  // The interval problem is symmetric under t -> ell - t, alpha -> -ell - alpha,
  // so a mirror minimizer localized at t = ell has the same energy. Searching
  // alpha >= -ell/2 selects the branch attached to t = 0.
  const double lo = -0.5 * p.ell, hi = 1.0, step = 0.05;
  std::vector<double> warm;
  auto energy_at = [&](double a) {
    Profile1D prof = SolveProfileFixedAlpha(a, p, warm.empty() ? nullptr : &warm);
    if (!prof.degenerate)
    {
      warm = prof.f;
    }
    return prof.energy;
  };

  // Coarse scan. The negative-energy window is narrow compared with the
  // bracket, so the scan only needs to find one point inside it.
  double best_a = 0.0, best_e = 0.0;
  for (double a = hi; a >= lo - 1e-12; a -= step)
  {
    const double e = energy_at(a);
    if (e < best_e)
    {
      best_e = e;
      best_a = a;
    }
  }
  if (best_e >= 0.0)
  {
    Profile1D prof = ZeroProfile(0.0, p, 0.0);
    return prof;
  }

  const MinResult m = BrentMinimize(energy_at, best_a - step, best_a + step, 52);

  auto stat_at = [&](double a) {
    Profile1D prof = SolveProfileFixedAlpha(a, p, warm.empty() ? nullptr : &warm);
    if (!prof.degenerate)
    {
      warm = prof.f;
    }
    return prof.stationarity;
  };
  double a_lo = m.x - 1e-6, a_hi = m.x + 1e-6;
  double s_lo = stat_at(a_lo), s_hi = stat_at(a_hi);
  for (int k = 0; k < 40 && (s_lo > 0) == (s_hi > 0); k++)
  {
    a_lo -= 1e-6 * std::pow(2.0, k);
    a_hi += 1e-6 * std::pow(2.0, k);
    s_lo = stat_at(a_lo);
    s_hi = stat_at(a_hi);
  }
  double a_star = m.x;
  if ((s_lo > 0) != (s_hi > 0))
  {
    a_star = BracketRoot(stat_at, a_lo, a_hi, 1e-15);
  }
  return SolveProfileFixedAlpha(a_star, p, &warm);
}

double ECorrIntegral(const Profile1D &prof)
{
  const Params1D &p = prof.params;
  const double h = p.h(), a = prof.alpha, b = p.b;
  const std::vector<double> &f = prof.f;
  double s = 0.0;
  for (int j = 0; j + 1 < p.n; j++)
  {
    const double df = (f[j + 1] - f[j]) / h;
    s += h * (p.t(j) + 0.5 * h) * df * df;
  }
  for (int i = 0; i < p.n; i++)
  {
    const double m = (i == 0 || i == p.n - 1) ? 0.5 * h : h;
    const double t = p.t(i), f2 = f[i] * f[i];
    s += m * t * f2 * (-a * (t + a) - 1.0 / b + 0.5 * f2 / b);
  }
  return s;
}

namespace
{

void FillCorr(HalfLineSummary &s)
{
  const double f02 = s.f0_at_0 * s.f0_at_0;
  s.e_corr_closed = f02 / 3.0 - s.alpha_star * s.e1d_star;
  s.e_corr_closed_literal = f02 * s.alpha_star / 3.0 - s.e1d_star;
  s.e_corr_difference = std::abs(s.e_corr_closed - s.e_corr_integral);
}

}  // namespace

HalfLineSummary HalfLineLimit(double b, const std::vector<double> &ell_schedule, double h)
{
  if (ell_schedule.size() < 3)
  {
    throw ValidationError("half-line schedule needs at least three lengths");
  }
  for (std::size_t i = 0; i < ell_schedule.size(); i++)
  {
    if (ell_schedule[i] < 6.0 || (i > 0 && ell_schedule[i] <= ell_schedule[i - 1]))
    {
      throw ValidationError("half-line schedule must increase and start at ell >= 6");
    }
  }
  HalfLineSummary s;
  s.b = b;
  Profile1D last;
  for (std::size_t i = 0; i < ell_schedule.size(); i++)
  {
    Params1D p;
    p.b = b;
    p.ell = ell_schedule[i];
    p.n = static_cast<int>(std::lround(p.ell / h)) + 1;
    last = OptimizeAlpha(p);
    s.energies.push_back(last.energy);
    s.ell_used = p.ell;
    if (i > 0 && std::abs(s.energies[i] - s.energies[i - 1]) < 1e-10)
    {
      s.converged = true;
      break;
    }
  }
  s.e1d_star = last.energy;
  s.alpha_star = last.alpha;
  s.f0_at_0 = last.f.front();
  s.e_corr_integral = ECorrIntegral(last);
  FillCorr(s);
  return s;
}

HalfLineSummary SummaryRichardson(double b, double ell, int n)
{
  Params1D p;
  p.b = b;
  p.ell = ell;
  p.n = n;
  const Profile1D coarse = OptimizeAlpha(p);
  p.n = 2 * n - 1;
  const Profile1D fine = OptimizeAlpha(p);
  HalfLineSummary s;
  s.b = b;
  s.ell_used = ell;
  s.converged = true;
  s.e1d_star = Richardson2(coarse.energy, fine.energy);
  s.alpha_star = Richardson2(coarse.alpha, fine.alpha);
  s.f0_at_0 = std::sqrt(Richardson2(coarse.f.front() * coarse.f.front(),
                                    fine.f.front() * fine.f.front()));
  s.e_corr_integral = Richardson2(ECorrIntegral(coarse), ECorrIntegral(fine));
  s.energies = {coarse.energy, fine.energy};
  FillCorr(s);
  return s;
}

CostTables ComputeCostTables(const Profile1D &prof, double d_ell_constant)
{
  const Params1D &p = prof.params;
  const Discretization d = Discretize(prof.alpha, p);
  const int n = p.n;
  const std::vector<double> &f = prof.f;
  std::vector<double> q(n);
  for (int i = 0; i < n; i++)
  {
    q[i] = d.dVw[i] * f[i] * f[i];
  }
  // Forward accumulation is accurate where the integrand is negative; the
  // tail is accumulated backward from ell so that exponentially small values
  // keep their relative accuracy.
  std::vector<double> fwd(n, 0.0), bwd(n, 0.0);
  for (int i = 1; i < n; i++)
  {
    fwd[i] = fwd[i - 1] + 0.5 * d.h * (q[i - 1] + q[i]);
  }
  for (int i = n - 2; i >= 0; i--)
  {
    bwd[i] = bwd[i + 1] - 0.5 * d.h * (q[i] + q[i + 1]);
  }
  int split = n;
  for (int i = 0; i < n; i++)
  {
    if (q[i] > 0.0)
    {
      split = i;
      break;
    }
  }
  CostTables ct;
  ct.F.resize(n);
  ct.K.resize(n);
  ct.d_ell = d_ell_constant * std::pow(p.ell, -4.0);
  ct.F_end_forward = fwd.back();
  for (int i = 0; i < n; i++)
  {
    ct.F[i] = i < split ? fwd[i] : bwd[i];
    ct.K[i] = (1.0 - ct.d_ell) * f[i] * f[i] + ct.F[i];
  }
  const double thresh = std::pow(p.ell, 3.0) * f.back();
  ct.ell_bar = 0.0;
  for (int i = n - 1; i >= 0; i--)
  {
    if (f[i] >= thresh)
    {
      ct.ell_bar = p.t(i);
      break;
    }
  }
  const auto it = std::min_element(ct.K.begin(), ct.K.end());
  ct.K_min = *it;
  ct.t_m = p.t(static_cast<int>(it - ct.K.begin()));
  return ct;
}

CostReport CheckCostPositivity(const CostTables &ct, const Profile1D &prof, bool interval_problem)
{
  const Params1D &p = prof.params;
  CostReport r;
  r.min_K_window = std::numeric_limits<double>::infinity();
  r.max_F = -std::numeric_limits<double>::infinity();
  r.min_second_difference = std::numeric_limits<double>::infinity();
  auto flag = [&r](const std::string &what, double t, double v) {
    r.ok = false;
    r.violations.push_back({what, t, v});
  };
  for (int i = 0; i < p.n; i++)
  {
    const double t = p.t(i);
    r.max_F = std::max(r.max_F, ct.F[i]);
    if (ct.F[i] > 1e-10)
    {
      flag("F > 0", t, ct.F[i]);
    }
    const bool in_window = !interval_problem || t <= ct.ell_bar;
    if (in_window)
    {
      r.min_K_window = std::min(r.min_K_window, ct.K[i]);
      if (ct.K[i] < -1e-10)
      {
        flag("K < 0 in window", t, ct.K[i]);
      }
    }
    if (i > 0 && i + 1 < p.n)
    {
      const double d2 = ct.K[i + 1] - 2.0 * ct.K[i] + ct.K[i - 1];
      r.min_second_difference = std::min(r.min_second_difference, d2);
      if (d2 < -1e-8)
      {
        flag("K not convex", t, d2);
      }
    }
  }
  if (std::abs(ct.F.front()) > 1e-8)
  {
    flag("F(0) != 0", 0.0, ct.F.front());
  }
  if (std::abs(ct.F_end_forward) > 1e-8)
  {
    flag("F(ell) != 0", p.ell, ct.F_end_forward);
  }
  if (interval_problem)
  {
    if (!(ct.K_min < 0.0))
    {
      flag("K has no negative minimum", ct.t_m, ct.K_min);
    }
    if (!(ct.t_m > ct.ell_bar && ct.t_m <= p.ell))
    {
      flag("t_m outside (ell_bar, ell]", ct.t_m, ct.K_min);
    }
  }
  return r;
}

CurvatureTable CurvatureExpansionCheck(double b, double k, const std::vector<double> &eps_list,
                                       double c1, double h)
{
  CurvatureTable tab;
  std::vector<double> lx, ly;
  for (double eps : eps_list)
  {
    if (!(eps > 0.0 && eps <= 0.1))
    {
      throw ValidationError("eps must lie in (0, 0.1]");
    }
    Params1D p;
    p.b = b;
    p.ell = c1 * std::abs(std::log(eps));
    p.n = static_cast<int>(std::lround(p.ell / h)) + 1;
    const Profile1D flat = OptimizeAlpha(p);
    p.k = k;
    p.eps = eps;
    const Profile1D curved = OptimizeAlpha(p);
    CurvatureRow row;
    row.eps = eps;
    row.ell = p.ell;
    row.e1d_k = curved.energy;
    row.predicted = flat.energy - eps * k * ECorrIntegral(flat);
    row.difference = row.e1d_k - row.predicted;
    tab.rows.push_back(row);
    lx.push_back(std::log(eps));
    ly.push_back(std::log(std::max(std::abs(row.difference), 1e-300)));
  }
  if (k == 0.0)
  {
    tab.ok = true;
    for (const auto &row : tab.rows)
    {
      tab.ok = tab.ok && std::abs(row.difference) < 1e-8;
    }
    return tab;
  }
  if (tab.rows.size() >= 2)
  {
    tab.fitted_exponent = FitLine(lx, ly).slope;
    tab.ok = tab.fitted_exponent >= 1.4;
  }
  return tab;
}

DecayReport DecayCheck(const Profile1D &prof)
{
  DecayReport r;
  if (prof.degenerate)
  {
    r.trivial = true;
    r.ok = true;
    r.message = "trivial profile, decay check skipped";
    return r;
  }
  const Params1D &p = prof.params;
  const double h = p.h();
  double lower = std::numeric_limits<double>::infinity(), upper = 0.0, der = 0.0;
  for (int i = 0; i < p.n; i++)
  {
    const double t = p.t(i);
    lower = std::min(lower, prof.f[i] / std::exp(-0.5 * (t + 0.5) * (t + 0.5)));
    upper = std::max(upper, prof.f[i] / std::exp(-0.5 * (t + prof.alpha) * (t + prof.alpha)));
  }
  for (int j = 0; j + 1 < p.n; j++)
  {
    const double tm = p.t(j) + 0.5 * h;
    const double fp = (prof.f[j + 1] - prof.f[j]) / h;
    der = std::max(der, std::abs(fp) / std::exp(-0.25 * tm * tm));
  }
  r.c_lower = lower;
  r.c_upper = upper;
  r.c_derivative = der;
  r.ok = lower > 0.0 && lower <= 100.0 && upper > 0.0 && upper <= 100.0 && der <= 100.0;
  std::ostringstream os;
  os << "c=" << lower << " c'=" << upper << " C=" << der;
  r.message = os.str();
  return r;
}

}  // namespace glwedge
