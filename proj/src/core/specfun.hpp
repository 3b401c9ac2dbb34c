// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHDET_SPECFUN_HPP
#define CHDET_SPECFUN_HPP

namespace chdet {

// Open interval on which a function evaluates to a finite value.
// Infinite endpoints are allowed; every domain produced here contains 0.
struct EvalDomain {
  double lo;
  double hi;
  bool contains(double x) const { return x > lo && x < hi; }
};

// Gauss error function, erf(x) = (2/sqrt(pi)) * integral of exp(-t^2) from 0
// to x.  Absolute error <= 1e-12 for |x| <= 10; saturates to +-1 beyond the
// double-precision round-off point.
double erf(double x);

// Imaginary error function, erfi(x) = (2/sqrt(pi)) * integral of exp(t^2)
// from 0 to x.  Throws OverflowRangeError for |x| > 25, where exp(x^2)
// approaches double overflow.  Relative error <= 1e-10 for |x| <= 5.
double erfi(double x);

// ln(erfi(x)) for x > 0, usable far beyond the overflow range of erfi itself.
double log_erfi(double x);

// Dawson integral D(x) = exp(-x^2) * integral of exp(t^2) from 0 to x, x >= 0.
double dawson(double x);

// Scaled complementary error function erfcx(x) = exp(x^2)*erfc(x) for x >= 0.
double erfcx(double x);

// ln(erfcx(x)) for any x (stable for large negative x, where erfcx ~ 2e^{x^2}).
double log_erfcx(double x);

// ln(erfc(x)) for x >= 0 (stable deep in the tail).
double log_erfc(double x);

// ln(sinh(x)/x), even in x, 0 at x = 0 (removable singularity).
double log_sinh_ratio(double x);

// d/dx ln(sinh(x)/x) = coth(x) - 1/x, odd in x.
double log_sinh_ratio_deriv(double x);

// ln(cosh(x)), even in x, asymptote |x| - ln 2, never overflows.
double log_cosh(double x);

// ln(e^a + e^b) without overflow.
double log_add_exp(double a, double b);

}  // namespace chdet

#endif
