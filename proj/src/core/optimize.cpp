// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chdet {

namespace {
constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio
}

GoldenResult golden_max(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  // Bracket width target scales with the magnitude of the argument.
  for (int iter = 0; iter < 400; ++iter) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= rel_tol * scale) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  GoldenResult r;
  r.arg = 0.5 * (a + b);
  r.value = f(r.arg);
  // Keep the better of the probed interior points if rounding made the
  // midpoint marginally worse.
  if (fc > r.value) {
    r.arg = c;
    r.value = fc;
  }
  if (fd > r.value) {
    r.arg = d;
    r.value = fd;
  }
  return r;
}

double grow_upper_bracket(const std::function<double(double)>& f, double x0,
                          double limit, double cap, bool* hit_cap) {
  if (hit_cap) *hit_cap = false;
  double edge = cap;
  if (std::isfinite(limit)) edge = std::min(edge, 0.999 * limit);
  double x = std::min(x0, edge);
  double fx = f(x);
  double prev = fx;
  while (x < edge) {
    const double nx = std::min(x * 2.0, edge);
    const double fn = f(nx);
    x = nx;
    if (fn < prev) return x;  // concave objective has turned over
    prev = fn;
  }
  // Still rising at the edge.  For a finite domain limit the supremum is
  // approached at the edge itself; for the growth cap, report it.
  if (!std::isfinite(limit) && hit_cap) *hit_cap = true;
  return x;
}

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& start, double initial_step, double tol,
    std::size_t max_iter) {
  const std::size_t n = start.size();
  NelderMeadResult result;
  std::vector<std::vector<double>> pts(n + 1, start);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 1; i <= n; ++i) pts[i][i - 1] += initial_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
  result.evaluations = n + 1;

  auto order = [&] {
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        if (vals[j] < vals[i]) {
          std::swap(vals[i], vals[j]);
          std::swap(pts[i], pts[j]);
        }
  };

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    order();
    if (std::abs(vals[n] - vals[0]) <=
        tol * (1.0 + std::abs(vals[0]) + std::abs(vals[n])))
      break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / double(n);

    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (pts[n][j] - centroid[j]);
      return p;
    };

    const std::vector<double> refl = blend(-1.0);
    const double frefl = f(refl);
    ++result.evaluations;
    if (frefl < vals[0]) {
      const std::vector<double> expd = blend(-2.0);
      const double fexpd = f(expd);
      ++result.evaluations;
      if (fexpd < frefl) {
        pts[n] = expd;
        vals[n] = fexpd;
      } else {
        pts[n] = refl;
        vals[n] = frefl;
      }
    } else if (frefl < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = frefl;
    } else {
      const bool outside = frefl < vals[n];
      const std::vector<double> ctr = blend(outside ? -0.5 : 0.5);
      const double fctr = f(ctr);
      ++result.evaluations;
      if (fctr < std::min(frefl, vals[n])) {
        pts[n] = ctr;
        vals[n] = fctr;
      } else {
        // Shrink toward the best vertex.
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          vals[i] = f(pts[i]);
          ++result.evaluations;
        }
      }
    }
  }
  order();
  result.arg = pts[0];
  result.value = vals[0];
  return result;
}

std::vector<double> halton_point(std::size_t index, std::size_t dim) {
  static const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<double> out(dim, 0.0);
  for (std::size_t d = 0; d < dim; ++d) {
    const int base = kPrimes[d % 8];
    double f = 1.0, x = 0.0;
    // index + 1 skips the all-zeros point.
    for (std::size_t i = index + 1; i > 0; i /= base) {
      f /= base;
      x += f * double(i % base);
    }
    out[d] = x;
  }
  return out;
}

}  // namespace chdet
