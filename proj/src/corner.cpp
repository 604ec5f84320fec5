// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/corner.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

constexpr double kPi = std::numbers::pi;

double PolarAngle(const Eigen::Vector2d &p)
{
  double a = std::atan2(p.y(), p.x());
  // Interior angles lie in [0, beta] with beta < 2 pi; the small negative
  // range only arises from rounding on the plus edge.
  if (a < -1e-12)
  {
    a += 2.0 * kPi;
  }
  return std::max(a, 0.0);
}

}  // namespace

double WedgeGeometry::Area() const
{
  return 2.0 * ell * L - ell * ell * c;
}

double WedgeGeometry::Perimeter() const
{
  return 4.0 * L + 2.0 * ell - 2.0 * ell * c;
}

std::vector<Eigen::Vector2d> WedgeGeometry::Polygon() const
{
  return {V, B, E, D, C, A};
}

double WedgeGeometry::ShoelaceArea() const
{
  const auto poly = Polygon();
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); i++)
  {
    const auto &p = poly[i];
    const auto &q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

Eigen::Vector2d WedgeGeometry::MinusEs() const
{
  return Eigen::Vector2d(-std::cos(beta), -std::sin(beta));
}

Eigen::Vector2d WedgeGeometry::MinusEt() const
{
  return Eigen::Vector2d(std::sin(beta), -std::cos(beta));
}

Eigen::Vector2d WedgeGeometry::Mirror(const Eigen::Vector2d &p) const
{
  const double cb = std::cos(beta), sb = std::sin(beta);
  return Eigen::Vector2d(cb * p.x() + sb * p.y(), sb * p.x() - cb * p.y());
}

WedgeGeometry MakeWedgeGeometry(double beta, double L, double ell)
{
  if (!(beta > 0.0 && beta < 2.0 * kPi))
  {
    throw ValidationError("opening angle must lie in (0, 2 pi)");
  }
  if (!(L > 0.0 && ell > 0.0))
  {
    throw ValidationError("wedge needs positive L and ell");
  }
  WedgeGeometry g;
  g.beta = beta;
  g.L = L;
  g.ell = ell;
  g.c = std::cos(0.5 * beta) / std::sin(0.5 * beta);
  if (std::abs(g.c) < 1e-15)
  {
    g.c = 0.0;
  }
  if (ell * g.c > L)
  {
    std::ostringstream os;
    os << "geometry violation: ell cot(beta/2) = " << ell * g.c << " exceeds L = " << L;
    throw ValidationError(os.str());
  }
  g.V = Eigen::Vector2d(0.0, 0.0);
  g.B = Eigen::Vector2d(L, 0.0);
  g.E = Eigen::Vector2d(L, ell);
  g.D = Eigen::Vector2d(ell * g.c, ell);
  g.A = g.Mirror(g.B);
  g.C = g.Mirror(g.E);
  return g;
}

Mesh2D BuildWedgeMesh(const WedgeGeometry &geom, double h, double min_angle_degrees)
{
  if (!(h > 0.0))
  {
    throw ValidationError("mesh spacing must be positive");
  }
  if (geom.ell * geom.c > geom.L - h)
  {
    throw ValidationError("geometry violation: need ell cot(beta/2) <= L - h");
  }
  ZipperRegion region;
  region.left_slope = geom.c;
  region.right = geom.L;
  region.ell = geom.ell;
  region.h = h;
  // Keep dropped-node distance to the bisector at least 0.3 h perpendicular,
  // which holds the minimum angle at 20 degrees for beta above ~0.36.
  region.gap_fraction = std::max(0.5, 0.3 / std::sin(0.5 * geom.beta));
  const Mesh2D half = ZipperMesh(region);

  Mesh2D mesh;
  mesh.h = h;
  const int n = half.NumNodes();
  std::vector<int> mirror(n);
  for (int i = 0; i < n; i++)
  {
    mesh.nodes.push_back(half.nodes[i]);
    mesh.s.push_back(half.s[i]);
    mesh.t.push_back(half.t[i]);
    mesh.arm.push_back(half.arm[i] == 0 ? 0 : 1);
  }
  for (int i = 0; i < n; i++)
  {
    if (half.arm[i] == 0)
    {
      mirror[i] = i;
      continue;
    }
    mirror[i] = mesh.NumNodes();
    mesh.nodes.push_back(geom.Mirror(half.nodes[i]));
    mesh.s.push_back(-half.s[i]);
    mesh.t.push_back(half.t[i]);
    mesh.arm.push_back(-1);
  }
  for (const auto &tri : half.cells)
  {
    mesh.cells.push_back(tri);
  }
  for (const auto &tri : half.cells)
  {
    mesh.cells.push_back({mirror[tri[0]], mirror[tri[2]], mirror[tri[1]]});
  }
  for (const auto &e : half.boundary)
  {
    switch (e.tag)
    {
      case BoundaryTag::OUTER:
      case BoundaryTag::INNER:
        mesh.boundary.push_back(e);
        mesh.boundary.push_back({mirror[e.a], mirror[e.b], e.tag});
        break;
      case BoundaryTag::SIDE_PLUS:
        mesh.boundary.push_back(e);
        mesh.boundary.push_back({mirror[e.a], mirror[e.b], BoundaryTag::SIDE_MINUS});
        break;
      case BoundaryTag::SIDE_MINUS:
        // The left curve of the half mesh is the bisector, interior here.
        break;
    }
  }
  MakeDelaunay(mesh);
  ValidateMesh(mesh, min_angle_degrees);
  return mesh;
}

double IntegerConditionRatio(double beta, double L, double ell)
{
  const double c = std::cos(0.5 * beta) / std::sin(0.5 * beta);
  const double area = 2.0 * ell * L - ell * ell * c;
  const double perimeter = 4.0 * L + 2.0 * ell - 2.0 * ell * c;
  return area / (2.0 * kPi * perimeter);
}

double AdjustForIntegerCondition(double beta, double L_target, double ell)
{
  MakeWedgeGeometry(beta, L_target, ell);
  const double r0 = IntegerConditionRatio(beta, L_target, ell);
  const double target = std::ceil(r0 - 1e-12);
  if (std::abs(r0 - target) <= 1e-9 && target >= 1.0)
  {
    return L_target;
  }
  const double k = std::max(1.0, target);
  const double hi = 1.2 * L_target;
  auto g = [&](double L) { return IntegerConditionRatio(beta, L, ell) - k; };
  if (g(hi) < 0.0)
  {
    std::ostringstream os;
    os << "integer condition unattainable in [" << L_target << ", " << hi
       << "]: ratio ranges over [" << r0 << ", " << IntegerConditionRatio(beta, hi, ell) << "]";
    throw SolverError(os.str());
  }
  double L = BracketRoot(g, L_target, hi, 1e-13);
  // Step up to the first point where the condition holds within tolerance.
  if (std::abs(g(L)) > 1e-9)
  {
    throw SolverError("integer condition root did not meet tolerance");
  }
  return std::max(L, L_target);
}

const char *ConventionName(PhaseConvention c)
{
  return c == PhaseConvention::TANGENTIAL ? "tangential" : "literal";
}

ComplexField BoundaryDataStar(const Mesh2D &mesh, const ReferenceProfile &ref,
                              PhaseConvention convention)
{
  const double sign = convention == PhaseConvention::TANGENTIAL ? -1.0 : 1.0;
  ComplexField out(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    const double s = mesh.s[i], t = mesh.t[i];
    out[i] = std::polar(ref.f0(t), sign * ref.alpha() * s - 0.5 * s * t);
  }
  return out;
}

ComplexField TangentialState(const Mesh2D &mesh, const ReferenceProfile &ref,
                             PhaseConvention convention)
{
  const double sign = convention == PhaseConvention::TANGENTIAL ? -1.0 : 1.0;
  ComplexField out(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    out[i] = std::polar(ref.f0(mesh.t[i]), sign * ref.alpha() * mesh.s[i]);
  }
  return out;
}

WedgeGauge BuildWedgeGauge(const WedgeGeometry &geom, const Mesh2D &mesh)
{
  WedgeGauge gauge;
  gauge.delta = std::pow(geom.ell, -3.0);
  gauge.bound = 2.0 * std::pow(geom.ell, 4.0);
  gauge.integer_ratio = IntegerConditionRatio(geom.beta, geom.L, geom.ell);
  gauge.integer_condition =
      std::abs(gauge.integer_ratio - std::round(gauge.integer_ratio)) <= 1e-9 &&
      std::round(gauge.integer_ratio) >= 1.0;
  if (!gauge.integer_condition)
  {
    std::ostringstream os;
    os << "integer condition violated: ratio " << gauge.integer_ratio;
    gauge.warning = os.str();
  }
  const double half = 0.5 * geom.beta;
  const double delta = gauge.delta;
  const Eigen::Vector2d es_m = geom.MinusEs(), et_m = geom.MinusEt();
  auto phi_plus = [](const Eigen::Vector2d &p) { return -0.5 * p.x() * p.y(); };
  auto phi_minus = [&](const Eigen::Vector2d &p) { return -0.5 * p.dot(es_m) * p.dot(et_m); };
  auto chi = [&](double theta) {
    return std::clamp((theta - half + delta) / (2.0 * delta), 0.0, 1.0);
  };
  gauge.phi.resize(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    const Eigen::Vector2d &p = mesh.nodes[i];
    if (p.norm() == 0.0)
    {
      gauge.phi[i] = 0.0;
      continue;
    }
    const double x = chi(PolarAngle(p));
    gauge.phi[i] = (1.0 - x) * phi_plus(p) + x * phi_minus(p);
  }

  // Analytic sup of |F + grad phi| over the strip inside the domain.
  const double r_max = geom.ell / std::sin(half);
  const int nr = 400, nth = 41;
  for (int ir = 1; ir <= nr; ir++)
  {
    const double r = r_max * ir / nr;
    for (int it = 0; it < nth; it++)
    {
      const double theta = half - delta + 2.0 * delta * it / (nth - 1);
      const Eigen::Vector2d p(r * std::cos(theta), r * std::sin(theta));
      if (p.y() > geom.ell + 1e-12 || p.dot(et_m) > geom.ell + 1e-12)
      {
        continue;
      }
      const double x = chi(theta);
      const Eigen::Vector2d F(-0.5 * p.y(), 0.5 * p.x());
      const Eigen::Vector2d g_plus(-0.5 * p.y(), -0.5 * p.x());
      const Eigen::Vector2d g_minus = -0.5 * (p.dot(et_m) * es_m + p.dot(es_m) * et_m);
      const Eigen::Vector2d e_theta(-std::sin(theta), std::cos(theta));
      const double dchi = (theta > half - delta && theta < half + delta) ? 1.0 / (2.0 * delta) : 0.0;
      const Eigen::Vector2d a = F + (1.0 - x) * g_plus + x * g_minus +
                                (phi_minus(p) - phi_plus(p)) * dchi / r * e_theta;
      gauge.sup_a_beta = std::max(gauge.sup_a_beta, a.norm());
    }
  }
  gauge.min_strip_layers = 2.0 * delta * r_max / std::max(mesh.h, 1e-300);

  PotentialField pot;
  pot.kind = PotentialKind::F_HALF_PERP;
  pot.gauge_phase = gauge.phi;
  for (int c = 0; c < mesh.NumCells(); c++)
  {
    const auto &tri = mesh.cells[c];
    double flux = 0.0;
    for (int k = 0; k < 3; k++)
    {
      flux += pot.LinkPhase(mesh, tri[k], tri[(k + 1) % 3]);
    }
    gauge.max_curl_deviation =
        std::max(gauge.max_curl_deviation, std::abs(flux / mesh.CellArea(c) - 1.0));
  }
  const EdgeList edges = BuildEdges(mesh);
  for (const auto &e : edges.edges)
  {
    const Eigen::Vector2d &pa = mesh.nodes[e[0]];
    const Eigen::Vector2d &pb = mesh.nodes[e[1]];
    const double ta = pa.norm() == 0.0 ? 0.0 : PolarAngle(pa);
    const double tb = pb.norm() == 0.0 ? 0.0 : PolarAngle(pb);
    const bool plus_a = ta <= half - delta, plus_b = tb <= half - delta;
    const bool minus_a = ta >= half + delta, minus_b = tb >= half + delta;
    Eigen::Vector2d es, et;
    if (plus_a && plus_b)
    {
      es = Eigen::Vector2d(1.0, 0.0);
      et = Eigen::Vector2d(0.0, 1.0);
    }
    else if (minus_a && minus_b)
    {
      es = es_m;
      et = et_m;
    }
    else
    {
      continue;
    }
    const Eigen::Vector2d mid = 0.5 * (pa + pb);
    const double expected = -mid.dot(et) * (pb - pa).dot(es);
    gauge.max_tangential_deviation =
        std::max(gauge.max_tangential_deviation,
                 std::abs(pot.LinkPhase(mesh, e[0], e[1]) - expected));
  }
  return gauge;
}

const char *CornerVariantName(CornerVariant v)
{
  return v == CornerVariant::DIRICHLET_STAR ? "dirichlet_star" : "neumann";
}

CornerResult SolveCorner(const CornerSpec &spec)
{
  if (!(spec.b > 0.0 && spec.h > 0.0))
  {
    throw ValidationError("corner needs positive b and h");
  }
  CornerResult res;
  res.spec = spec;
  res.geom = MakeWedgeGeometry(spec.beta, spec.L, spec.ell);
  res.mesh = BuildWedgeMesh(res.geom, spec.h);
  res.ref = MakeReferenceProfile(spec.b, spec.ell, spec.h);
  if (res.ref.profile.degenerate)
  {
    throw SolverError("reference profile is trivial at this b; corner problem is degenerate");
  }
  PotentialField pot;
  pot.kind = PotentialKind::F_HALF_PERP;
  ComplexField data;
  if (spec.formulation == Formulation::F_GAUGE)
  {
    data = BoundaryDataStar(res.mesh, res.ref, spec.convention);
  }
  else
  {
    pot.gauge_phase = BuildWedgeGauge(res.geom, res.mesh).phi;
    data = TangentialState(res.mesh, res.ref, spec.convention);
  }
  BoundarySpec bc;
  auto shared = std::make_shared<ComplexField>(data);
  bc.data = [shared](int i) { return (*shared)[i]; };
  bc.dirichlet[static_cast<int>(BoundaryTag::INNER)] = true;
  if (spec.variant == CornerVariant::DIRICHLET_STAR)
  {
    bc.dirichlet[static_cast<int>(BoundaryTag::SIDE_MINUS)] = true;
    bc.dirichlet[static_cast<int>(BoundaryTag::SIDE_PLUS)] = true;
  }
  else
  {
    auto wref = std::make_shared<ReferenceProfile>(
        MakeReferenceProfile(spec.b, spec.ell, 0.005, Potential1D::CONTINUUM));
    bc.current_term = true;
    bc.weight = [wref](double t) { return std::max(-1.0, wref->Weight(t)); };
  }
  const DiscreteProblem problem(res.mesh, pot, spec.b, bc);
  MinimizeResult mr = Minimize(problem, data, spec.options);
  res.psi = std::move(mr.psi);
  res.energy = mr.energy;
  res.report = mr.report;
  res.e_defect = res.energy - 2.0 * spec.L * res.ref.energy();
  try
  {
    res.decay = AgmonDecayProfile(res.psi, res.mesh, spec.ell);
  }
  catch (const ValidationError &e)
  {
    res.decay.message = e.what();
  }
  return res;
}

double ScheduleL(double beta, double ell, const CornerSchedule &schedule)
{
  const double c = std::cos(0.5 * beta) / std::sin(0.5 * beta);
  double L = std::max(schedule.L_factor * ell, ell * c + schedule.L_margin);
  const double hmax = *std::max_element(schedule.hs.begin(), schedule.hs.end());
  L = std::ceil(L / hmax - 1e-9) * hmax;
  if (schedule.adjust_integer)
  {
    L = AdjustForIntegerCondition(beta, L, ell);
  }
  return L;
}

CornerEstimate CornerEnergyEstimate(double beta, double b, const CornerSchedule &schedule,
                                    double e_corr, const MinimizeOptions &options)
{
  if (schedule.ells.empty() || schedule.hs.size() != 2)
  {
    throw ValidationError("corner schedule needs at least one ell and exactly two spacings");
  }
  CornerEstimate est;
  est.beta = beta;
  est.b = b;
  est.e_corr = e_corr;
  est.conjecture = -(kPi - beta) * e_corr;
  std::vector<double> hs = schedule.hs;
  std::sort(hs.begin(), hs.end(), std::greater<double>());
  for (double ell : schedule.ells)
  {
    const double L = ScheduleL(beta, ell, schedule);
    std::vector<double> es;
    for (double h : hs)
    {
      CornerSpec spec;
      spec.beta = beta;
      spec.L = L;
      spec.ell = ell;
      spec.b = b;
      spec.h = h;
      spec.options = options;
      const CornerResult r = SolveCorner(spec);
      CornerRow row;
      row.L = L;
      row.ell = ell;
      row.h = h;
      row.energy = r.energy;
      row.e1d = r.ref.energy();
      row.e = r.e_defect;
      row.converged = r.report.converged;
      row.decay_rate = r.decay.rate;
      est.rows.push_back(row);
      es.push_back(r.e_defect);
    }
    est.limits.push_back({L, ell, Richardson2(es[0], es[1])});
  }
  const auto &lim = est.limits;
  est.e_corner = lim.back().e_extrapolated;
  if (lim.size() >= 2)
  {
    const double a = lim[lim.size() - 2].e_extrapolated, c = lim.back().e_extrapolated;
    est.spread = std::abs(c - a);
    est.plateau = est.spread < schedule.plateau_tol;
  }
  return est;
}

GapResult DirichletNeumannGap(double beta, double b, double L, double ell, double h,
                              const MinimizeOptions &options)
{
  CornerSpec spec;
  spec.beta = beta;
  spec.b = b;
  spec.L = L;
  spec.ell = ell;
  spec.h = h;
  spec.options = options;
  GapResult g;
  g.energy_dirichlet = SolveCorner(spec).energy;
  spec.variant = CornerVariant::NEUMANN_MODIFIED;
  g.energy_neumann = SolveCorner(spec).energy;
  g.gap = g.energy_dirichlet - g.energy_neumann;
  return g;
}

ConjectureTable ConjectureCheck(double b, const std::vector<double> &betas,
                                const CornerSchedule &schedule, double e_corr,
                                const MinimizeOptions &options)
{
  ConjectureTable table;
  table.b = b;
  table.e_corr = e_corr;
  for (double beta : betas)
  {
    const CornerEstimate est = CornerEnergyEstimate(beta, b, schedule, e_corr, options);
    ConjectureRow row;
    row.beta = beta;
    row.e_corner = est.e_corner;
    row.conjecture = est.conjecture;
    row.abs_dev = std::abs(row.e_corner - row.conjecture);
    row.rel_dev = row.conjecture != 0.0 ? row.abs_dev / std::abs(row.conjecture) : 0.0;
    row.plateau = est.plateau;
    table.rows.push_back(row);
    if (std::abs(beta - kPi) >= 0.3)
    {
      table.sign_checked++;
      if (row.e_corner * row.conjecture > 0.0)
      {
        table.sign_agree++;
      }
    }
  }
  return table;
}

}  // namespace glwedge
