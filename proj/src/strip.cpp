// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/strip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

double Interpolate(const std::vector<double> &v, double h, double t)
{
  const int n = static_cast<int>(v.size());
  const double x = std::clamp(t / h, 0.0, static_cast<double>(n - 1));
  const int i = std::min(n - 2, static_cast<int>(std::floor(x)));
  const double r = x - i;
  if (r == 0.0)
  {
    return v[i];
  }
  return (1.0 - r) * v[i] + r * v[i + 1];
}

// Nodes whose coordinate equals value, sorted by the other coordinate.
std::vector<int> Column(const Mesh2D &mesh, double s_value)
{
  std::vector<int> out;
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    if (std::abs(mesh.s[i] - s_value) < 1e-9)
    {
      out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) { return mesh.t[a] < mesh.t[b]; });
  return out;
}

}  // namespace

double ReferenceProfile::f0(double t) const
{
  return Interpolate(profile.f, profile.params.h(), t);
}

double ReferenceProfile::F0(double t) const
{
  return Interpolate(tables.F, profile.params.h(), t);
}

double ReferenceProfile::Weight(double t) const
{
  const double f = f0(t);
  if (!(f > 0.0))
  {
    return std::numeric_limits<double>::infinity();
  }
  return F0(t) / (f * f);
}

ReferenceProfile MakeReferenceProfile(double b, double ell, double h, Potential1D potential)
{
  if (!(h > 0.0))
  {
    throw ValidationError("mesh spacing must be positive");
  }
  // Write-once memo: profiles are deterministic functions of their key.
  static std::mutex mutex;
  static std::map<std::tuple<double, double, double, int>, ReferenceProfile> memo;
  const auto key = std::make_tuple(b, ell, h, static_cast<int>(potential));
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = memo.find(key);
    if (it != memo.end())
    {
      return it->second;
    }
  }
  Params1D p;
  p.b = b;
  p.ell = ell;
  p.n = static_cast<int>(std::lround(ell / h)) + 1;
  p.potential = potential;
  p.Validate();
  ReferenceProfile ref;
  ref.profile = OptimizeAlpha(p);
  ref.tables = ComputeCostTables(ref.profile);
  std::lock_guard<std::mutex> lock(mutex);
  memo.emplace(key, ref);
  return ref;
}

const char *VariantName(StripVariant v)
{
  switch (v)
  {
    case StripVariant::DIRICHLET:
      return "dirichlet";
    case StripVariant::NEUMANN_MODIFIED:
      return "neumann";
    case StripVariant::DIRICHLET_PHASE:
      return "dirichlet_phase";
  }
  return "unknown";
}

void StripSpec::Validate() const
{
  if (!(L > 0.0 && ell > 0.0 && h > 0.0 && b > 0.0))
  {
    throw ValidationError("strip needs positive L, ell, h and b");
  }
  if (h > 0.5 * std::min(L, ell))
  {
    throw ValidationError("strip spacing too coarse for its side lengths");
  }
  if (variant == StripVariant::DIRICHLET_PHASE && !kappa)
  {
    throw ValidationError("dirichlet_phase variant needs a phase function");
  }
  if (!(options.tol > 0.0))
  {
    throw ValidationError("minimizer tolerance must be positive");
  }
}

StripSetup PrepareStrip(const StripSpec &spec)
{
  spec.Validate();
  StripSetup setup;
  setup.mesh = BuildStripMesh(spec.L, spec.ell, spec.h);
  setup.ref = MakeReferenceProfile(spec.b, spec.ell, spec.h);
  if (setup.ref.profile.degenerate)
  {
    throw SolverError("reference profile is trivial at this b; strip problem is degenerate");
  }
  setup.potential.kind = PotentialKind::TANGENTIAL_MINUS_T;
  const Mesh2D &mesh = setup.mesh;
  setup.trial.resize(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    double phase = -setup.ref.alpha() * mesh.s[i];
    if (spec.variant == StripVariant::DIRICHLET_PHASE)
    {
      phase += spec.kappa(mesh.t[i]);
    }
    setup.trial[i] = std::polar(setup.ref.f0(mesh.t[i]), phase);
  }
  auto data = std::make_shared<ComplexField>(setup.trial);
  setup.bc.data = [data](int i) { return (*data)[i]; };
  setup.bc.dirichlet[static_cast<int>(BoundaryTag::INNER)] = true;
  if (spec.variant == StripVariant::NEUMANN_MODIFIED)
  {
    auto ref = std::make_shared<ReferenceProfile>(
        MakeReferenceProfile(spec.b, spec.ell, 0.005, Potential1D::CONTINUUM));
    setup.bc.current_term = true;
    setup.bc.weight = [ref](double t) { return std::max(-1.0, ref->Weight(t)); };
  }
  else
  {
    setup.bc.dirichlet[static_cast<int>(BoundaryTag::SIDE_MINUS)] = true;
    setup.bc.dirichlet[static_cast<int>(BoundaryTag::SIDE_PLUS)] = true;
  }
  return setup;
}

StripResult SolveStrip(const StripSpec &spec, const ComplexField *initial)
{
  StripResult res;
  res.spec = spec;
  res.setup = PrepareStrip(spec);
  const DiscreteProblem problem(res.setup.mesh, res.setup.potential, spec.b, res.setup.bc);
  MinimizeResult mr = Minimize(problem, initial ? *initial : res.setup.trial, spec.options);
  res.psi = std::move(mr.psi);
  res.energy = mr.energy;
  res.e_per_length = mr.energy / spec.L;
  res.report = mr.report;
  try
  {
    res.decay = AgmonDecayProfile(res.psi, res.setup.mesh, spec.ell);
  }
  catch (const ValidationError &e)
  {
    res.decay.message = e.what();
  }
  return res;
}

EnergySplit ReducedEnergySplit(const ComplexField &psi, const Mesh2D &mesh,
                               const ReferenceProfile &ref, double b, double L, double energy)
{
  EnergySplit split;
  split.bulk = L * ref.energy();
  const double alpha = ref.alpha();
  std::vector<Complex> u(mesh.NumNodes());
  std::vector<double> f(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    f[i] = ref.f0(mesh.t[i]);
    u[i] = f[i] >= 1e-14 ? psi[i] / std::polar(f[i], -alpha * mesh.s[i]) : Complex(0.0, 0.0);
  }
  double sum = 0.0;
  for (const auto &tri : mesh.cells)
  {
    if (f[tri[0]] < 1e-14 || f[tri[1]] < 1e-14 || f[tri[2]] < 1e-14)
    {
      split.excluded_cells++;
      continue;
    }
    const double s0 = mesh.s[tri[0]], s1 = mesh.s[tri[1]], s2 = mesh.s[tri[2]];
    const double t0 = mesh.t[tri[0]], t1 = mesh.t[tri[1]], t2 = mesh.t[tri[2]];
    const double two_area = (s1 - s0) * (t2 - t0) - (s2 - s0) * (t1 - t0);
    const std::array<double, 3> gs{(t1 - t2) / two_area, (t2 - t0) / two_area,
                                   (t0 - t1) / two_area};
    const std::array<double, 3> gt{(s2 - s1) / two_area, (s0 - s2) / two_area,
                                   (s1 - s0) / two_area};
    Complex ds(0.0, 0.0), dt(0.0, 0.0), uc(0.0, 0.0);
    double quartic = 0.0;
    for (int k = 0; k < 3; k++)
    {
      ds += gs[k] * u[tri[k]];
      dt += gt[k] * u[tri[k]];
      uc += u[tri[k]] / 3.0;
      const double fk = f[tri[k]];
      const double q = 1.0 - std::norm(u[tri[k]]);
      quartic += fk * fk * fk * fk * q * q / (6.0 * b);
    }
    const double tc = (t0 + t1 + t2) / 3.0;
    const double fc = ref.f0(tc);
    const double js = (std::conj(uc) * ds).imag();
    const double area = 0.5 * two_area;
    sum += area * (fc * fc * (std::norm(ds) + std::norm(dt) - 2.0 * (tc + alpha) * js) + quartic);
  }
  split.reduced = sum;
  split.mismatch = energy - split.bulk - split.reduced;
  return split;
}

FieldDiagnostics ComputeFieldDiagnostics(const StripResult &res, double T)
{
  const Mesh2D &mesh = res.setup.mesh;
  const ReferenceProfile &ref = res.setup.ref;
  FieldDiagnostics d;
  d.T = T;
  std::vector<double> mod(mesh.NumNodes());
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    mod[i] = std::abs(res.psi[i]);
    if (mesh.t[i] <= T + 1e-12)
    {
      d.sup_deviation = std::max(d.sup_deviation, std::abs(mod[i] - ref.f0(mesh.t[i])));
    }
  }
  for (int c = 0; c < mesh.NumCells(); c++)
  {
    const auto &tri = mesh.cells[c];
    const double two_area = 2.0 * mesh.CellArea(c);
    double ds = 0.0;
    for (int k = 0; k < 3; k++)
    {
      const int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
      ds += mod[tri[k]] * (mesh.t[a] - mesh.t[b]) / two_area;
    }
    d.ds_modulus_sq += 0.5 * two_area * ds * ds;
  }
  PotentialField tangential;
  tangential.kind = PotentialKind::TANGENTIAL_MINUS_T;
  const DiscreteProblem kin(mesh, tangential, res.spec.b, BoundarySpec{});
  for (const auto &l : kin.links())
  {
    d.covariant_sq += l.kappa * std::norm(res.psi[l.b] - l.U * res.psi[l.a]);
  }
  auto column_mass = [&](const std::vector<int> &col) {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < col.size(); k++)
    {
      m += 0.5 * (mesh.t[col[k + 1]] - mesh.t[col[k]]) *
           (std::norm(res.psi[col[k]]) + std::norm(res.psi[col[k + 1]]));
    }
    return m;
  };
  const std::vector<int> last = Column(mesh, res.spec.L);
  const std::vector<int> prev = Column(mesh, res.spec.L - res.spec.h);
  if (!last.empty() && last.size() == prev.size())
  {
    d.ds_mass_at_L = (column_mass(last) - column_mass(prev)) / res.spec.h;
  }
  std::vector<int> bottom;
  for (int i = 0; i < mesh.NumNodes(); i++)
  {
    if (std::abs(mesh.t[i]) < 1e-12)
    {
      bottom.push_back(i);
    }
  }
  std::sort(bottom.begin(), bottom.end(), [&](int a, int b) { return mesh.s[a] < mesh.s[b]; });
  double phase = 0.0;
  for (std::size_t k = 0; k + 1 < bottom.size(); k++)
  {
    phase += std::arg(res.psi[bottom[k + 1]] * std::conj(res.psi[bottom[k]]));
  }
  d.winding = phase / (2.0 * std::numbers::pi);
  d.expected_winding = -ref.alpha() * res.spec.L / (2.0 * std::numbers::pi);
  return d;
}

}  // namespace glwedge
