// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Derivative-free scalar and small-dimension optimization helpers: bracketed
// golden-section search, geometric bracket growth for one-sided domains,
// Nelder-Mead simplex descent, and a Halton sequence for multistart seeding.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace chdet {

// Maximizes a unimodal function on [lo, hi] by golden-section search until
// the bracket shrinks to rel_tol * max(1, |x|) (plus a matching absolute
// floor).  Returns the midpoint of the final bracket and its value.
struct GoldenResult {
  double arg = 0.0;
  double value = 0.0;
};
GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol = 1e-10);

// Grows an upper bracket for the maximum of a concave function f defined on
// [0, limit) by geometric expansion of x until f starts decreasing or x
// reaches cap (or 0.999 * limit for finite limits).  Returns the bracket hi.
// Sets *hit_cap when the function was still increasing at the cap, which for
// a concave objective means the supremum sits at (or beyond) the domain edge.
double grow_upper_bracket(const std::function<double(double)>& f, double x0,
                          double limit, double cap, bool* hit_cap);

// Minimizes f by the Nelder-Mead simplex method from the given start point.
// Plain unconstrained version; callers embed constraints via transforms.
struct NelderMeadResult {
  std::vector<double> arg;
  double value = 0.0;
  std::size_t evaluations = 0;
};
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& start, double initial_step = 0.25,
    double tol = 1e-10, std::size_t max_iter = 2000);

// i-th point (0-based) of the d-dimensional Halton sequence in [0, 1)^d,
// using the first d primes as bases.  Low-discrepancy multistart seeds.
std::vector<double> halton_point(std::size_t index, std::size_t dim);

}  // namespace chdet
