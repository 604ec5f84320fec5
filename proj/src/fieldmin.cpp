// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/fieldmin.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/Polynomials>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

const Complex I(0.0, 1.0);

double Dot(const ComplexField &x, const ComplexField &y)
{
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    s += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
  }
  return s;
}

double PolyValue(const std::array<double, 5> &c, double s)
{
  return (((c[4] * s + c[3]) * s + c[2]) * s + c[1]) * s;
}

// Global minimizer of the polynomial c1 s + ... + c4 s^4 (c4 >= 0); returns
// NaN when the polynomial is unbounded below or has no descent.
double QuarticArgmin(const std::array<double, 5> &c)
{
  const double scale = std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]) + std::abs(c[4]);
  if (!(c[1] < 0.0) || scale == 0.0)
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::vector<double> candidates;
  if (c[4] > 1e-14 * scale)
  {
    Eigen::Vector4d coeffs(c[1], 2.0 * c[2], 3.0 * c[3], 4.0 * c[4]);
    Eigen::PolynomialSolver<double, 3> solver;
    solver.compute(coeffs);
    std::vector<double> roots;
    solver.realRoots(roots, 1e-8);
    for (double r : roots)
    {
      // One Newton polish on the derivative.
      const double dp = c[1] + r * (2.0 * c[2] + r * (3.0 * c[3] + r * 4.0 * c[4]));
      const double ddp = 2.0 * c[2] + r * (6.0 * c[3] + r * 12.0 * c[4]);
      candidates.push_back(ddp > 0.0 ? r - dp / ddp : r);
    }
  }
  if (c[2] > 0.0)
  {
    // Quadratic model, then Newton on the full derivative; robust when the
    // higher coefficients are tiny.
    double r = -c[1] / (2.0 * c[2]);
    for (int k = 0; k < 30; k++)
    {
      const double dp = c[1] + r * (2.0 * c[2] + r * (3.0 * c[3] + r * 4.0 * c[4]));
      const double ddp = 2.0 * c[2] + r * (6.0 * c[3] + r * 12.0 * c[4]);
      if (!(ddp > 0.0))
      {
        break;
      }
      const double step = dp / ddp;
      r -= step;
      if (std::abs(step) <= 1e-15 * std::abs(r))
      {
        break;
      }
    }
    candidates.push_back(r);
  }
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_value = 0.0;
  for (double s : candidates)
  {
    const double v = PolyValue(c, s);
    if (std::isfinite(v) && v < best_value)
    {
      best_value = v;
      best = s;
    }
  }
  return best;
}

}  // namespace

double PotentialField::LinkPhase(const Mesh2D &mesh, int a, int b) const
{
  const Eigen::Vector2d &pa = mesh.nodes[a];
  const Eigen::Vector2d &pb = mesh.nodes[b];
  const Eigen::Vector2d mid = 0.5 * (pa + pb);
  const Eigen::Vector2d dl = pb - pa;
  double theta = 0.0;
  switch (kind)
  {
    case PotentialKind::F_HALF_PERP:
      theta = 0.5 * (-mid.y() * dl.x() + mid.x() * dl.y());
      break;
    case PotentialKind::TANGENTIAL_MINUS_T:
      theta = -mid.y() * dl.x();
      break;
    case PotentialKind::CUSTOM_NODAL:
      theta = 0.5 * (nodal[a] + nodal[b]).dot(dl);
      break;
  }
  if (!gauge_phase.empty())
  {
    theta += gauge_phase[b] - gauge_phase[a];
  }
  return theta;
}

DiscreteProblem::DiscreteProblem(const Mesh2D &mesh, const PotentialField &potential, double b,
                                 const BoundarySpec &bc)
    : mesh_(&mesh), b_(b)
{
  if (!(b > 0.0))
  {
    throw ValidationError("b must be positive");
  }
  if (potential.kind == PotentialKind::CUSTOM_NODAL &&
      static_cast<int>(potential.nodal.size()) != mesh.NumNodes())
  {
    throw ValidationError("custom potential needs one vector per node");
  }
  if (!potential.gauge_phase.empty() &&
      static_cast<int>(potential.gauge_phase.size()) != mesh.NumNodes())
  {
    throw ValidationError("gauge phase needs one value per node");
  }
  const EdgeList el = BuildEdges(mesh);
  links_.reserve(el.edges.size());
  for (std::size_t e = 0; e < el.edges.size(); e++)
  {
    const int a = el.edges[e][0], c = el.edges[e][1];
    const double theta = potential.LinkPhase(mesh, a, c);
    links_.push_back({a, c, el.cot_weight[e], std::polar(1.0, -theta)});
  }
  mass_ = LumpedMass(mesh);
  fixed_.assign(mesh.NumNodes(), 0);
  data_.assign(mesh.NumNodes(), Complex(0.0, 0.0));
  for (const auto &e : mesh.boundary)
  {
    if (bc.dirichlet[static_cast<int>(e.tag)])
    {
      fixed_[e.a] = fixed_[e.b] = 1;
    }
  }
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    if (fixed_[i])
    {
      if (!bc.data)
      {
        throw ValidationError("Dirichlet tags requested without boundary data");
      }
      data_[i] = bc.data(i);
    }
  }
  num_free_ = static_cast<int>(std::count(fixed_.begin(), fixed_.end(), 0));
  if (bc.current_term)
  {
    if (!bc.weight)
    {
      throw ValidationError("boundary current term requested without a weight function");
    }
    for (const auto &e : mesh.boundary)
    {
      if (e.tag != BoundaryTag::SIDE_PLUS && e.tag != BoundaryTag::SIDE_MINUS)
      {
        continue;
      }
      int a = e.a, c = e.b;
      if (mesh.t[a] > mesh.t[c])
      {
        std::swap(a, c);
      }
      const double tm = 0.5 * (mesh.t[a] + mesh.t[c]);
      const double w = bc.weight(tm);
      if (!std::isfinite(w))
      {
        std::ostringstream os;
        os << "boundary weight is not finite at t = " << tm << " (profile underflow)";
        throw ValidationError(os.str());
      }
      const double sigma = e.tag == BoundaryTag::SIDE_PLUS ? 1.0 : -1.0;
      sides_.push_back({a, c, sigma * w, std::polar(1.0, potential.LinkPhase(mesh, a, c))});
    }
  }
}

void DiscreteProblem::ImposeDirichlet(ComplexField &psi) const
{
  for (std::size_t i = 0; i < psi.size(); i++)
  {
    if (fixed_[i])
    {
      psi[i] = data_[i];
    }
  }
}

double DiscreteProblem::Energy(const ComplexField &psi) const
{
  double kin = 0.0;
  for (const auto &l : links_)
  {
    kin += l.kappa * std::norm(psi[l.b] - l.U * psi[l.a]);
  }
  double pot = 0.0;
  for (std::size_t i = 0; i < psi.size(); i++)
  {
    const double r = std::norm(psi[i]);
    pot += mass_[i] * (-r + 0.5 * r * r);
  }
  double cur = 0.0;
  for (const auto &s : sides_)
  {
    cur += s.sigma_w * (std::conj(psi[s.a]) * s.V * psi[s.b]).imag();
  }
  return kin + pot / b_ - cur;
}

ComplexField DiscreteProblem::Gradient(const ComplexField &psi) const
{
  ComplexField g(psi.size(), Complex(0.0, 0.0));
  for (const auto &l : links_)
  {
    const Complex z = psi[l.b] - l.U * psi[l.a];
    g[l.b] += 2.0 * l.kappa * z;
    g[l.a] -= 2.0 * l.kappa * std::conj(l.U) * z;
  }
  for (std::size_t i = 0; i < psi.size(); i++)
  {
    g[i] += (2.0 * mass_[i] / b_) * (std::norm(psi[i]) - 1.0) * psi[i];
  }
  for (const auto &s : sides_)
  {
    g[s.a] += s.sigma_w * I * s.V * psi[s.b];
    g[s.b] -= s.sigma_w * I * std::conj(s.V) * psi[s.a];
  }
  for (std::size_t i = 0; i < psi.size(); i++)
  {
    if (fixed_[i])
    {
      g[i] = 0.0;
    }
  }
  return g;
}

double DiscreteProblem::GradientNorm(const ComplexField &g) const
{
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); i++)
  {
    if (!fixed_[i])
    {
      s += std::norm(g[i]) / mass_[i];
    }
  }
  return std::sqrt(s);
}

std::array<double, 5> DiscreteProblem::LineCoefficients(const ComplexField &psi,
                                                        const ComplexField &d) const
{
  std::array<double, 5> c{0.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto &l : links_)
  {
    const Complex z = psi[l.b] - l.U * psi[l.a];
    const Complex zd = d[l.b] - l.U * d[l.a];
    c[1] += l.kappa * 2.0 * (std::conj(z) * zd).real();
    c[2] += l.kappa * std::norm(zd);
  }
  for (std::size_t i = 0; i < psi.size(); i++)
  {
    const double p0 = std::norm(psi[i]);
    const double p1 = 2.0 * (std::conj(psi[i]) * d[i]).real();
    const double p2 = std::norm(d[i]);
    const double m = mass_[i] / b_;
    c[1] += m * (-p1 + p0 * p1);
    c[2] += m * (-p2 + 0.5 * (p1 * p1 + 2.0 * p0 * p2));
    c[3] += m * p1 * p2;
    c[4] += m * 0.5 * p2 * p2;
  }
  for (const auto &s : sides_)
  {
    c[1] -= s.sigma_w * ((std::conj(psi[s.a]) * s.V * d[s.b]).imag() +
                         (std::conj(d[s.a]) * s.V * psi[s.b]).imag());
    c[2] -= s.sigma_w * (std::conj(d[s.a]) * s.V * d[s.b]).imag();
  }
  return c;
}

double AssembleEnergy(const Mesh2D &mesh, const PotentialField &potential, double b,
                      const BoundarySpec &bc, const ComplexField &psi)
{
  return DiscreteProblem(mesh, potential, b, bc).Energy(psi);
}

ComplexField AssembleGradient(const Mesh2D &mesh, const PotentialField &potential, double b,
                              const BoundarySpec &bc, const ComplexField &psi)
{
  return DiscreteProblem(mesh, potential, b, bc).Gradient(psi);
}

MinimizeResult Minimize(const DiscreteProblem &problem, ComplexField initial,
                        const MinimizeOptions &options)
{
  if (!(options.tol > 0.0))
  {
    throw ValidationError("minimizer tolerance must be positive");
  }
  const auto start = std::chrono::steady_clock::now();
  const int n = problem.mesh().NumNodes();
  if (static_cast<int>(initial.size()) != n)
  {
    throw ValidationError("initial field size does not match the mesh");
  }
  const std::vector<char> &fixed = problem.fixed();
  std::vector<int> index(n, -1);
  int nf = 0;
  for (int i = 0; i < n; i++)
  {
    if (!fixed[i])
    {
      index[i] = nf++;
    }
  }

  // Preconditioner: magnetic stiffness plus lumped mass on free nodes.
  using SpMat = Eigen::SparseMatrix<Complex>;
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(4 * problem.links().size() + n);
  for (const auto &l : problem.links())
  {
    const int ia = index[l.a], ib = index[l.b];
    if (ia >= 0)
    {
      trip.emplace_back(ia, ia, l.kappa);
    }
    if (ib >= 0)
    {
      trip.emplace_back(ib, ib, l.kappa);
    }
    if (ia >= 0 && ib >= 0)
    {
      trip.emplace_back(ib, ia, -l.kappa * l.U);
      trip.emplace_back(ia, ib, -l.kappa * std::conj(l.U));
    }
  }
  for (int i = 0; i < n; i++)
  {
    if (index[i] >= 0)
    {
      trip.emplace_back(index[i], index[i], problem.mass()[i]);
    }
  }
  SpMat P(nf, nf);
  P.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<SpMat> ldlt;
  if (nf > 0)
  {
    ldlt.compute(P);
    if (ldlt.info() != Eigen::Success)
    {
      throw SolverError("preconditioner factorization failed");
    }
  }
  auto precondition = [&](const ComplexField &g) {
    ComplexField z(n, Complex(0.0, 0.0));
    if (nf == 0)
    {
      return z;
    }
    Eigen::VectorXcd rhs(nf);
    for (int i = 0; i < n; i++)
    {
      if (index[i] >= 0)
      {
        rhs[index[i]] = g[i];
      }
    }
    const Eigen::VectorXcd sol = ldlt.solve(rhs);
    for (int i = 0; i < n; i++)
    {
      if (index[i] >= 0)
      {
        z[i] = sol[index[i]];
      }
    }
    return z;
  };

  MinimizeResult out;
  ComplexField psi = std::move(initial);
  problem.ImposeDirichlet(psi);
  double E = problem.Energy(psi);
  out.report.initial_energy = E;
  double noise = 0.0;
  {
    double kin = 0.0, pot = 0.0;
    for (const auto &l : problem.links())
    {
      kin += l.kappa * std::norm(psi[l.b] - l.U * psi[l.a]);
    }
    for (int i = 0; i < n; i++)
    {
      const double r = std::norm(psi[i]);
      pot += problem.mass()[i] * (r + 0.5 * r * r) / problem.b();
    }
    noise = 64.0 * std::numeric_limits<double>::epsilon() * (kin + pot + 1.0);
  }
  ComplexField g = problem.Gradient(psi);
  ComplexField z = precondition(g);
  double gz = Dot(g, z);
  ComplexField d(n);
  for (int i = 0; i < n; i++)
  {
    d[i] = -z[i];
  }
  bool steepest = true;
  double gn = problem.GradientNorm(g);
  int it = 0;
  int since_restart = 0;
  for (; it < options.max_iterations && gn >= options.tol; it++)
  {
    // The slope from the gradient is more accurate than the summed
    // coefficient, which cancels near convergence.
    auto c = problem.LineCoefficients(psi, d);
    c[1] = Dot(g, d);
    double s = QuarticArgmin(c);
    if (!std::isfinite(s) && !steepest)
    {
      for (int i = 0; i < n; i++)
      {
        d[i] = -z[i];
      }
      steepest = true;
      c = problem.LineCoefficients(psi, d);
      c[1] = Dot(g, d);
      s = QuarticArgmin(c);
    }
    if (!std::isfinite(s))
    {
      out.report.line_search_failures++;
      break;
    }
    ComplexField trial(n);
    for (int i = 0; i < n; i++)
    {
      trial[i] = psi[i] + s * d[i];
    }
    const double E_trial = problem.Energy(trial);
    // The exact line search guarantees descent; increases at the rounding
    // level of the energy sum are accepted so the gradient can converge.
    if (E_trial > E + noise)
    {
      out.report.line_search_failures++;
      if (steepest)
      {
        break;
      }
      for (int i = 0; i < n; i++)
      {
        d[i] = -z[i];
      }
      steepest = true;
      continue;
    }
    psi = std::move(trial);
    E = E_trial;
    ComplexField g_new = problem.Gradient(psi);
    ComplexField z_new = precondition(g_new);
    const double gz_new = Dot(g_new, z_new);
    double beta = 0.0;
    since_restart++;
    if (since_restart < options.restart_every && gz > 0.0)
    {
      beta = std::max(0.0, (gz_new - Dot(g_new, z)) / gz);
    }
    else
    {
      since_restart = 0;
    }
    for (int i = 0; i < n; i++)
    {
      d[i] = -z_new[i] + beta * d[i];
    }
    steepest = beta == 0.0;
    g = std::move(g_new);
    z = std::move(z_new);
    gz = gz_new;
    gn = problem.GradientNorm(g);
  }
  out.report.iterations = it;
  out.report.gradient_norm = gn;
  out.report.converged = gn < options.tol;
  out.report.energy = E;
  out.energy = E;
  out.psi = std::move(psi);
  out.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

DecayTable AgmonDecayProfile(const ComplexField &psi, const Mesh2D &mesh, double ell,
                             double min_rate)
{
  DecayTable table;
  const double lo = 2.0, hi = ell - 2.0, width = 0.5;
  if (!(hi - lo >= 2.0 * width))
  {
    throw ValidationError("decay fit range [2, ell - 2] is empty");
  }
  std::vector<std::array<Eigen::Vector2d, 2>> outer;
  for (const auto &e : mesh.boundary)
  {
    if (e.tag == BoundaryTag::OUTER)
    {
      outer.push_back({mesh.nodes[e.a], mesh.nodes[e.b]});
    }
  }
  if (outer.empty())
  {
    throw ValidationError("mesh has no OUTER boundary");
  }
  const int nbins = static_cast<int>(std::ceil(ell / width)) + 1;
  std::vector<double> max_abs(nbins, 0.0);
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    const Eigen::Vector2d &p = mesh.nodes[i];
    double dist = std::numeric_limits<double>::infinity();
    for (const auto &seg : outer)
    {
      const Eigen::Vector2d v = seg[1] - seg[0];
      const double u = std::clamp((p - seg[0]).dot(v) / v.squaredNorm(), 0.0, 1.0);
      dist = std::min(dist, (p - seg[0] - u * v).norm());
    }
    const int bin = std::min(nbins - 1, static_cast<int>(dist / width));
    max_abs[bin] = std::max(max_abs[bin], std::abs(psi[i]));
  }
  std::vector<double> x, y;
  for (int k = 0; k < nbins; k++)
  {
    const double center = (k + 0.5) * width;
    table.distance.push_back(center);
    table.max_abs.push_back(max_abs[k]);
    if (center >= lo && center <= hi && max_abs[k] > 0.0)
    {
      x.push_back(center);
      y.push_back(std::log(max_abs[k]));
    }
  }
  if (*std::max_element(max_abs.begin(), max_abs.end()) == 0.0)
  {
    table.trivial = true;
    table.rate = std::numeric_limits<double>::quiet_NaN();
    table.message = "field vanishes identically; rate undefined";
    return table;
  }
  if (x.size() < 2)
  {
    table.message = "fewer than two nonzero bins in the fit range";
    return table;
  }
  const LineFit fit = FitLine(x, y);
  table.rate = -fit.slope;
  table.envelope = std::exp(fit.intercept);
  table.ok = table.rate >= min_rate;
  std::ostringstream os;
  os << "fitted decay rate " << table.rate << (table.ok ? " >= " : " < ") << min_rate;
  table.message = os.str();
  return table;
}

void WriteFieldCsv(const ComplexField &psi, const Mesh2D &mesh, const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ValidationError("cannot write " + path);
  }
  out.precision(17);
  out << "x,y,re,im,abs\n";
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    out << mesh.nodes[i].x() << ',' << mesh.nodes[i].y() << ',' << psi[i].real() << ','
        << psi[i].imag() << ',' << std::abs(psi[i]) << '\n';
  }
}

}  // namespace glwedge
