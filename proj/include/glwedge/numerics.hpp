// Copyright the glwedge authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace glwedge
{

// Base class for all errors raised by the library. The CLI maps
// ValidationError to exit code 2 and SolverError to exit code 1.
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Second-order Richardson extrapolation from spacings h and h/2.
double Richardson2(double coarse, double fine);

// Observed order from three values on h, h/2, h/4.
double ObservedOrder(double coarse, double mid, double fine);

struct LineFit
{
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit FitLine(const std::vector<double> &x, const std::vector<double> &y);

struct MinResult
{
  double x = 0.0;
  double fx = 0.0;
};

// Brent minimization on [lo, hi] with roughly `bits` bits of precision in x.
MinResult BrentMinimize(const std::function<double(double)> &f, double lo, double hi,
                        int bits = 40);

// Bracketed root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
double BracketRoot(const std::function<double(double)> &f, double lo, double hi,
                   double xtol = 1e-15);

// Stable 64-bit FNV-1a hash rendered as 16 hex digits.
std::string HashHex(const std::string &text);

}  // namespace glwedge
