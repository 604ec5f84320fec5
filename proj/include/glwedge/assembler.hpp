// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "glwedge/profile1d.hpp"

namespace glwedge
{

// Signed boundary curvature along one smooth arc, either constant or sampled
// at equally spaced arclength points including both ends.
struct Curvature
{
  enum class Kind
  {
    CONSTANT,
    SAMPLES
  };
  Kind kind = Kind::CONSTANT;
  double value = 0.0;
  std::vector<double> samples;
};

struct Arc
{
  double length = 0.0;
  Curvature curvature;
};

// Arcs in counterclockwise order. corners[j] is the opening angle at the end
// of arc j; an empty list means a single smooth closed curve.
struct DomainSpec
{
  std::vector<Arc> arcs;
  std::vector<double> corners;

  double Perimeter() const;
};

DomainSpec SquareDomain(double side);
DomainSpec DiskDomain(double radius);
DomainSpec HalfDiskDomain(double radius);

// Integral of the curvature over one arc: exact for constants, composite
// Simpson for samples (3/8 rule on the last panel for an even count).
double IntegrateCurvature(const Arc &arc);

// Total curvature of all arcs.
double TotalCurvature(const DomainSpec &spec);

// |int K + sum (pi - beta_j) - 2 pi|. Throws ValidationError when the arc and
// corner lists cannot form a closed chain.
double GaussBonnetResidual(const DomainSpec &spec);

struct CornerValue
{
  double value = 0.0;
  bool from_conjecture = false;
};

// Keyed by opening angle; lookups match to 1e-9.
using CornerEnergies = std::map<double, CornerValue>;

// -(pi - beta) E_corr for every corner of the spec.
CornerEnergies ConjectureCornerEnergies(const DomainSpec &spec, double e_corr);

struct CornerTerm
{
  double beta = 0.0;
  double value = 0.0;
  bool from_conjecture = false;
};

struct ExpansionReport
{
  double eps = 0.0;
  double b = 0.0;
  double e1d_star = 0.0;
  double e_corr = 0.0;
  double perimeter = 0.0;
  double total_curvature = 0.0;
  double gauss_bonnet_residual = 0.0;
  double leading = 0.0;         // |boundary| E1D / eps
  double curvature_term = 0.0;  // -E_corr int K
  double corner_term = 0.0;     // sum of corner energies
  double order_one = 0.0;       // curvature_term + corner_term
  double total = 0.0;
  double smooth_equivalent = 0.0;  // -2 pi E_corr
  std::vector<CornerTerm> corners;
};

// Refuses specs whose Gauss-Bonnet residual exceeds gate and corners missing
// from the table.
ExpansionReport ExpandEnergy(const DomainSpec &spec, double eps, const HalfLineSummary &summary,
                             const CornerEnergies &corner_energies, double gate = 1e-6);

}  // namespace glwedge
