// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/assembler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "glwedge/numerics.hpp"

namespace glwedge
{

namespace
{

constexpr double kPi = std::numbers::pi;

Arc ConstantArc(double length, double curvature)
{
  Arc a;
  a.length = length;
  a.curvature.value = curvature;
  return a;
}

const CornerValue *Lookup(const CornerEnergies &table, double beta)
{
  const auto it = table.lower_bound(beta - 1e-9);
  if (it != table.end() && std::abs(it->first - beta) <= 1e-9)
  {
    return &it->second;
  }
  return nullptr;
}

}  // namespace

double DomainSpec::Perimeter() const
{
  double p = 0.0;
  for (const Arc &a : arcs)
  {
    p += a.length;
  }
  return p;
}

DomainSpec SquareDomain(double side)
{
  DomainSpec d;
  for (int i = 0; i < 4; i++)
  {
    d.arcs.push_back(ConstantArc(side, 0.0));
    d.corners.push_back(0.5 * kPi);
  }
  return d;
}

DomainSpec DiskDomain(double radius)
{
  DomainSpec d;
  d.arcs.push_back(ConstantArc(2.0 * kPi * radius, 1.0 / radius));
  return d;
}

DomainSpec HalfDiskDomain(double radius)
{
  DomainSpec d;
  d.arcs.push_back(ConstantArc(2.0 * radius, 0.0));
  d.arcs.push_back(ConstantArc(kPi * radius, 1.0 / radius));
  d.corners = {0.5 * kPi, 0.5 * kPi};
  return d;
}

double IntegrateCurvature(const Arc &arc)
{
  if (!(arc.length > 0.0) || !std::isfinite(arc.length))
  {
    throw ValidationError("arc length must be positive and finite");
  }
  if (arc.curvature.kind == Curvature::Kind::CONSTANT)
  {
    return arc.curvature.value * arc.length;
  }
  const std::vector<double> &k = arc.curvature.samples;
  const int n = static_cast<int>(k.size());
  if (n < 3)
  {
    throw ValidationError("sampled curvature needs at least 3 samples");
  }
  for (double v : k)
  {
    if (!std::isfinite(v))
    {
      throw ValidationError("sampled curvature must be finite");
    }
  }
  const double h = arc.length / (n - 1);
  // Simpson panels over an even number of intervals, 3/8 rule for a final odd triple.
  const int simpson_end = (n - 1) % 2 == 0 ? n - 1 : n - 4;
  double sum = 0.0;
  for (int i = 0; i + 2 <= simpson_end; i += 2)
  {
    sum += h / 3.0 * (k[i] + 4.0 * k[i + 1] + k[i + 2]);
  }
  if (simpson_end != n - 1)
  {
    const int i = simpson_end;
    sum += 3.0 * h / 8.0 * (k[i] + 3.0 * k[i + 1] + 3.0 * k[i + 2] + k[i + 3]);
  }
  return sum;
}

double TotalCurvature(const DomainSpec &spec)
{
  double total = 0.0;
  for (const Arc &a : spec.arcs)
  {
    total += IntegrateCurvature(a);
  }
  return total;
}

double GaussBonnetResidual(const DomainSpec &spec)
{
  if (spec.arcs.empty())
  {
    throw ValidationError("open boundary chain: no arcs");
  }
  if (!spec.corners.empty() && spec.corners.size() != spec.arcs.size())
  {
    std::ostringstream msg;
    msg << "open boundary chain: " << spec.arcs.size() << " arcs but " << spec.corners.size()
        << " corners";
    throw ValidationError(msg.str());
  }
  double defect = 0.0;
  for (double beta : spec.corners)
  {
    if (!(beta > 0.0 && beta < 2.0 * kPi))
    {
      throw ValidationError("corner angle must lie in (0, 2 pi)");
    }
    defect += kPi - beta;
  }
  return std::abs(TotalCurvature(spec) + defect - 2.0 * kPi);
}

CornerEnergies ConjectureCornerEnergies(const DomainSpec &spec, double e_corr)
{
  CornerEnergies table;
  for (double beta : spec.corners)
  {
    table[beta] = CornerValue{-(kPi - beta) * e_corr, true};
  }
  return table;
}

ExpansionReport ExpandEnergy(const DomainSpec &spec, double eps, const HalfLineSummary &summary,
                             const CornerEnergies &corner_energies, double gate)
{
  if (!(eps > 0.0))
  {
    throw ValidationError("eps must be positive");
  }
  ExpansionReport r;
  r.gauss_bonnet_residual = GaussBonnetResidual(spec);
  if (r.gauss_bonnet_residual > gate)
  {
    std::ostringstream msg;
    msg << "domain does not close up: Gauss-Bonnet residual " << r.gauss_bonnet_residual
        << " exceeds " << gate;
    throw ValidationError(msg.str());
  }
  r.eps = eps;
  r.b = summary.b;
  r.e1d_star = summary.e1d_star;
  r.e_corr = summary.e_corr_integral;
  r.perimeter = spec.Perimeter();
  r.total_curvature = TotalCurvature(spec);
  r.leading = r.perimeter * r.e1d_star / eps;
  r.curvature_term = 0.0 - r.e_corr * r.total_curvature;  // no negative zero
  for (double beta : spec.corners)
  {
    const CornerValue *v = Lookup(corner_energies, beta);
    if (v == nullptr)
    {
      std::ostringstream msg;
      msg << "missing corner energy for beta = " << beta;
      throw ValidationError(msg.str());
    }
    r.corners.push_back({beta, v->value, v->from_conjecture});
    r.corner_term += v->value;
  }
  r.order_one = r.curvature_term + r.corner_term;
  r.total = r.leading + r.order_one;
  r.smooth_equivalent = -2.0 * kPi * r.e_corr;
  return r;
}

}  // namespace glwedge
