// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/optimize.hpp"

namespace chdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Geometric bracket growth stops here; a concave objective still rising at
// this point is treated as achieving its supremum "at infinity".
constexpr double kGrowthCap = 1e15;

double max_abs_weight(const DiscreteJointPMF& pmf) {
  double m = 0.0;
  for (const Atom& a : pmf.atoms())
    if (a.prob > 0.0) m = std::max(m, std::abs(a.w));
  return m;
}

// Largest admissible Chernoff parameter: for gamma > 0 the quadratic tilt
// alpha*gamma must stay below the model's ceiling; for gamma = 0 the linear
// tilt alpha*w must stay inside the plain CGF domain.
double chernoff_limit(const DiscreteJointPMF& pmf, double gamma,
                      const NoiseModel& noise) {
  double limit = kInf;
  if (gamma > 0.0) {
    const double ymax = noise.joint_y_max();
    if (ymax == 0.0) return 0.0;
    if (std::isfinite(ymax)) limit = ymax / gamma;
  }
  const double mw = max_abs_weight(pmf);
  if (gamma == 0.0 && mw > 0.0) {
    const double hi = noise.cgf_domain().hi;
    if (std::isfinite(hi)) limit = std::min(limit, hi / mw);
  }
  return limit;
}

// Essential supremum of w N + gamma N^2 per atom, averaged over the PMF.
// +inf as soon as one effective atom sees unbounded support.
double h0_statistic_sup(const DiscreteJointPMF& pmf, double gamma,
                        const NoiseModel& noise) {
  const double c = noise.support_sup();
  double acc = 0.0;
  for (const Atom& a : pmf.atoms()) {
    if (a.prob == 0.0) continue;
    if (a.w == 0.0 && gamma == 0.0) continue;
    if (std::isinf(c)) return kInf;
    acc += a.prob * (std::abs(a.w) * c + gamma * c * c);
  }
  return acc;
}

// Essential infimum of w Y + gamma Y^2 with Y = s + V, averaged over the PMF.
// Finite even for unbounded V when gamma > 0 (upward parabola) or w == 0.
double h1_statistic_inf(const DiscreteJointPMF& pmf, double gamma,
                        const NoiseModel& noise) {
  const double c = noise.support_sup();
  double acc = 0.0;
  for (const Atom& a : pmf.atoms()) {
    if (a.prob == 0.0) continue;
    double lo;
    if (gamma > 0.0) {
      const double vertex = -a.w / (2.0 * gamma);
      auto val = [&](double y) { return a.w * y + gamma * y * y; };
      if (std::isinf(c) || std::abs(vertex - a.s) <= c) {
        lo = -a.w * a.w / (4.0 * gamma);
      } else {
        lo = std::min(val(a.s - c), val(a.s + c));
      }
    } else if (a.w == 0.0) {
      lo = 0.0;
    } else if (std::isinf(c)) {
      return -kInf;
    } else {
      lo = a.w * a.s - std::abs(a.w) * c;
    }
    acc += a.prob * lo;
  }
  return acc;
}

SupResult maximize_over_parameter(const std::function<double(double)>& f,
                                  double limit) {
  if (limit <= 0.0) return {0.0, 0.0};
  bool hit_cap = false;
  const double start = std::min(1.0, 0.5 * std::min(limit, kGrowthCap));
  const double hi = grow_upper_bracket(f, start, limit, kGrowthCap, &hit_cap);
  if (hit_cap) {
    // Still rising at the growth cap: quote the value reached there.  The
    // exponent is a valid (if slightly conservative) bound at any finite
    // parameter, and callers with a genuinely infinite supremum have already
    // been routed through the essential-bound fast paths.
    return {f(hi), hi};
  }
  GoldenResult g = golden_max(f, 0.0, hi);
  if (g.value <= 0.0) return {0.0, 0.0};
  return {g.value, g.arg};
}

}  // namespace

double efa_at(const DetectorSpec& spec, const NoiseModel& noise_n,
              double alpha) {
  if (!(alpha >= 0.0))
    throw InvalidArgumentError("alpha must be nonnegative");
  const double mean_cgf = spec.pmf.expect([&](double w, double) {
    return noise_n.joint_cgf(alpha * w, alpha * spec.gamma);
  });
  return alpha * spec.theta - mean_cgf;
}

SupResult efa(const DetectorSpec& spec, const NoiseModel& noise_n) {
  if (!(spec.gamma >= 0.0))
    throw InvalidArgumentError("gamma must be nonnegative");
  const double ess = h0_statistic_sup(spec.pmf, spec.gamma, noise_n);
  if (spec.theta > ess) return {kInf, kInf};
  const double limit = chernoff_limit(spec.pmf, spec.gamma, noise_n);
  return maximize_over_parameter(
      [&](double a) { return efa_at(spec, noise_n, a); }, limit);
}

double emd_at(const DetectorSpec& spec, const NoiseModel& noise_v,
              double lambda) {
  if (!(lambda >= 0.0))
    throw InvalidArgumentError("lambda must be nonnegative");
  const double g = spec.gamma;
  return spec.pmf.expect([&](double w, double s) {
    return lambda * (w * s + g * s * s - spec.theta) -
           noise_v.joint_cgf(lambda * w + 2.0 * lambda * g * s, -lambda * g);
  });
}

SupResult emd(const DetectorSpec& spec, const NoiseModel& noise_v) {
  if (!(spec.gamma >= 0.0))
    throw InvalidArgumentError("gamma must be nonnegative");
  const double ess = h1_statistic_inf(spec.pmf, spec.gamma, noise_v);
  if (std::isfinite(ess) && spec.theta < ess) return {kInf, kInf};
  double limit = kInf;
  if (spec.gamma == 0.0) {
    const double mw = max_abs_weight(spec.pmf);
    const double hi = noise_v.cgf_domain().hi;
    if (mw > 0.0 && std::isfinite(hi)) limit = hi / mw;
  }
  return maximize_over_parameter(
      [&](double l) { return emd_at(spec, noise_v, l); }, limit);
}

SupResult theta_for_e0(const DiscreteJointPMF& weights, double gamma,
                       const NoiseModel& noise_n, double e0) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(gamma >= 0.0)) throw InvalidArgumentError("gamma must be nonnegative");
  if (weights.weights_all_zero() && gamma == 0.0)
    throw InvalidArgumentError(
        "threshold selection needs a nonzero statistic (all weights are zero "
        "and gamma is zero)");
  if (gamma > 0.0 && noise_n.joint_y_max() == 0.0)
    throw DomainError(
        "no admissible Chernoff parameter: the quadratic tilt diverges for " +
        noise_n.describe());
  // e0 = 0: the infimum is the alpha -> 0 limit, the mean of the statistic
  // under H0 (zero-mean noise leaves only the energy term).
  if (e0 == 0.0) return {gamma * noise_n.variance(), 0.0};

  auto objective = [&](double alpha) {
    const double mean_cgf = weights.expect([&](double w, double) {
      return noise_n.joint_cgf(alpha * w, alpha * gamma);
    });
    return (e0 + mean_cgf) / alpha;
  };
  const double limit = chernoff_limit(weights, gamma, noise_n);
  auto neg = [&](double a) { return -objective(a); };
  bool hit_cap = false;
  const double start = std::min(1.0, 0.5 * std::min(limit, kGrowthCap));
  const double hi =
      grow_upper_bracket(neg, start, limit, kGrowthCap, &hit_cap);
  if (hit_cap) return {objective(hi), hi};
  GoldenResult g = golden_max(neg, 0.0, hi);
  return {-g.value, g.arg};
}

}  // namespace chdet
