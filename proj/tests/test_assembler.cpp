// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "glwedge/assembler.hpp"
#include "glwedge/io.hpp"
#include "glwedge/numerics.hpp"

namespace glwedge
{
namespace
{

constexpr double kPi = std::numbers::pi;

HalfLineSummary FakeSummary()
{
  HalfLineSummary s;
  s.b = 1.5;
  s.e1d_star = -0.0076;
  s.e_corr_integral = 0.0432;
  return s;
}

TEST(Assembler, GaussBonnetOnStandardDomains)
{
  EXPECT_LT(GaussBonnetResidual(SquareDomain(1.0)), 1e-12);
  EXPECT_LT(GaussBonnetResidual(DiskDomain(1.0)), 1e-10);
  EXPECT_LT(GaussBonnetResidual(HalfDiskDomain(2.0)), 1e-10);
}

TEST(Assembler, SimpsonIsExactForCubicsWithEitherParity)
{
  for (int n : {5, 6, 7, 10})
  {
    Arc arc;
    arc.length = 2.0;
    arc.curvature.kind = Curvature::Kind::SAMPLES;
    for (int i = 0; i < n; i++)
    {
      const double s = 2.0 * i / (n - 1);
      arc.curvature.samples.push_back(s * s * s - s);
    }
    EXPECT_NEAR(IntegrateCurvature(arc), 2.0, 1e-13) << "n = " << n;
  }
}

TEST(Assembler, SmoothDomainHasNoCornerTerm)
{
  const ExpansionReport r = ExpandEnergy(DiskDomain(1.0), 0.05, FakeSummary(), {});
  EXPECT_EQ(r.corner_term, 0.0);
  EXPECT_NEAR(r.order_one, -2.0 * kPi * 0.0432, 1e-12);
  EXPECT_NEAR(r.leading, 2.0 * kPi * -0.0076 / 0.05, 1e-12);
}

TEST(Assembler, SquareExpansionTerms)
{
  CornerEnergies table;
  table[kPi / 2.0] = CornerValue{-0.15, false};
  const ExpansionReport r = ExpandEnergy(SquareDomain(1.0), 0.02, FakeSummary(), table);
  EXPECT_NEAR(r.leading, 4.0 * -0.0076 / 0.02, 1e-12);
  EXPECT_EQ(r.curvature_term, 0.0);
  EXPECT_NEAR(r.corner_term, -0.6, 1e-15);
}

TEST(Assembler, ConjectureSubstitutionIdentity)
{
  const DomainSpec d = HalfDiskDomain(1.0);
  const ExpansionReport r =
      ExpandEnergy(d, 0.1, FakeSummary(), ConjectureCornerEnergies(d, 0.0432));
  EXPECT_NEAR(r.order_one, r.smooth_equivalent, 1e-12);
}

TEST(Assembler, RefusesOpenOrMismatchedSpecs)
{
  DomainSpec d = SquareDomain(1.0);
  d.corners[1] = 1.0;
  EXPECT_THROW(ExpandEnergy(d, 0.1, FakeSummary(), ConjectureCornerEnergies(d, 0.04)),
               ValidationError);
  d = SquareDomain(1.0);
  d.corners.pop_back();
  EXPECT_THROW(GaussBonnetResidual(d), ValidationError);
  EXPECT_THROW(ExpandEnergy(SquareDomain(1.0), 0.1, FakeSummary(), {}), ValidationError);
}

TEST(Assembler, DomainJsonParsing)
{
  const Json j = Json::parse(R"({"arcs": [{"length": 2.0, "curvature": {"kind": "const", "value": 0}},
      {"length": 3.141592653589793, "curvature": {"kind": "samples", "values": [1, 1, 1, 1, 1]}}],
      "corners": [1.5707963267948966, 1.5707963267948966]})");
  const DomainSpec d = DomainSpecFromJson(j);
  EXPECT_EQ(d.arcs.size(), 2u);
  EXPECT_LT(GaussBonnetResidual(d), 1e-12);
  EXPECT_THROW(DomainSpecFromJson(Json::parse(R"({"arcs": [{"length": 1}]})")), ValidationError);
}

}  // namespace
}  // namespace glwedge
