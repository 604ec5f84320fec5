// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "glwedge/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace glwedge
{

double Richardson2(double coarse, double fine)
{
  return (4.0 * fine - coarse) / 3.0;
}

double ObservedOrder(double coarse, double mid, double fine)
{
  return std::log2(std::abs((coarse - mid) / (mid - fine)));
}

LineFit FitLine(const std::vector<double> &x, const std::vector<double> &y)
{
  if (x.size() != y.size() || x.size() < 2)
  {
    throw ValidationError("FitLine needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0)
  {
    throw ValidationError("FitLine: degenerate abscissae");
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

MinResult BrentMinimize(const std::function<double(double)> &f, double lo, double hi,
                        int bits)
{
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits, iters);
  return {r.first, r.second};
}

double BracketRoot(const std::function<double(double)> &f, double lo, double hi,
                   double xtol)
{
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0)
  {
    return lo;
  }
  if (fhi == 0.0)
  {
    return hi;
  }
  if ((flo > 0) == (fhi > 0))
  {
    throw SolverError("BracketRoot: endpoints do not bracket a sign change");
  }
  std::uintmax_t iters = 200;
  auto tol = [xtol](double a, double b) { return std::abs(b - a) <= xtol; };
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  const double a = r.first, b = r.second;
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

std::string HashHex(const std::string &text)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text)
  {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace glwedge
