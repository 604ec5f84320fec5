// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "glwedge/numerics.hpp"

namespace glwedge
{
namespace
{

TEST(Numerics, RichardsonRemovesQuadraticError)
{
  auto value = [](double h) { return 2.0 + 3.0 * h * h; };
  EXPECT_NEAR(Richardson2(value(0.1), value(0.05)), 2.0, 1e-14);
}

TEST(Numerics, ObservedOrderOfQuadraticSequence)
{
  auto value = [](double h) { return 1.0 + h * h; };
  EXPECT_NEAR(ObservedOrder(value(0.4), value(0.2), value(0.1)), 2.0, 1e-12);
}

TEST(Numerics, FitLineRecoversExactLine)
{
  const LineFit fit = FitLine({0.0, 1.0, 2.0, 3.0}, {1.0, -1.0, -3.0, -5.0});
  EXPECT_NEAR(fit.slope, -2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
}

TEST(Numerics, BrentFindsParabolaMinimum)
{
  const MinResult r = BrentMinimize([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, -1, 1);
  EXPECT_NEAR(r.x, 0.3, 1e-8);
  EXPECT_NEAR(r.fx, 1.0, 1e-14);
}

TEST(Numerics, BracketRootFindsSqrtTwo)
{
  EXPECT_NEAR(BracketRoot([](double x) { return x * x - 2.0; }, 0.0, 2.0), std::sqrt(2.0), 1e-14);
}

TEST(Numerics, HashIsStableAndSensitive)
{
  EXPECT_EQ(HashHex("abc"), HashHex("abc"));
  EXPECT_NE(HashHex("abc"), HashHex("abd"));
  EXPECT_EQ(HashHex("").size(), 16u);
}

}  // namespace
}  // namespace glwedge
