// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "core/errors.hpp"
#include "core/exponents.hpp"
#include "core/optimize.hpp"

namespace chdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves f(w) = target for a strictly increasing f on the open symmetric
// interval (-hi_limit, hi_limit).  Brackets by geometric growth (or geometric
// approach to a finite edge), then bisects.
double solve_increasing(const std::function<double(double)>& f, double target,
                        double hi_limit) {
  double hi;
  if (std::isfinite(hi_limit)) {
    hi = 0.5 * hi_limit;
    while (f(hi) < target) {
      const double gap = hi_limit - hi;
      if (gap <= 1e-13 * hi_limit)
        throw OutOfRangeError(
            "target exceeds the range of the stationarity map on its domain");
      hi = hi_limit - 0.75 * gap;
    }
  } else {
    hi = 1.0;
    while (f(hi) < target) {
      hi *= 2.0;
      if (hi > 1e18)
        throw OutOfRangeError(
            "target exceeds the range of the stationarity map (bounded "
            "slope)");
    }
  }
  double lo;
  if (std::isfinite(hi_limit)) {
    lo = -0.5 * hi_limit;
    while (f(lo) > target) {
      const double gap = hi_limit + lo;
      if (gap <= 1e-13 * hi_limit)
        throw OutOfRangeError(
            "target lies below the range of the stationarity map on its "
            "domain");
      lo = -hi_limit + 0.75 * gap;
    }
  } else {
    lo = -1.0;
    while (f(lo) > target) {
      lo *= 2.0;
      if (lo < -1e18)
        throw OutOfRangeError(
            "target lies below the range of the stationarity map (bounded "
            "slope)");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double val = f(mid);
    if (std::abs(val - target) <= 1e-10 * (1.0 + std::abs(target))) return mid;
    if (val < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * (1.0 + std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

// Open half-width of the admissible weight interval.  Only the linear tilts
// constrain it: for gamma > 0 the MD side runs at y < 0 (always finite) and
// the FA side at y > 0 admits any x.  include_fa_term mirrors whether the
// C~_N term is present (it is absent at phi == 0).
double weight_limit(double alpha, double lambda, double gamma,
                    bool include_fa_term, const NoiseModel& noise_v,
                    const NoiseModel& noise_n) {
  if (gamma > 0.0) return kInf;
  double limit = kInf;
  const double vh = noise_v.cgf_domain().hi;
  if (std::isfinite(vh) && lambda > 0.0) limit = std::min(limit, vh / lambda);
  if (include_fa_term && alpha > 0.0) {
    const double nh = noise_n.cgf_domain().hi;
    if (std::isfinite(nh)) limit = std::min(limit, nh / alpha);
  }
  return limit;
}

void require_positive_lambda(const StationarityParams& p) {
  if (!(p.lambda > 0.0))
    throw InvalidArgumentError("lambda must be positive");
}

// Weight solving the budget-substituted stationarity
//   C~_Vx(lambda w + 2 lambda gamma s, -lambda gamma)
//     + C~_Nx(alpha w, alpha gamma) = s,
// i.e. the phi = lambda / alpha case that arises when the threshold is
// eliminated through the FA budget.
double substituted_weight(double s, double lambda, double alpha, double gamma,
                          const NoiseModel& noise_v,
                          const NoiseModel& noise_n) {
  if (s == 0.0) return 0.0;  // odd map
  auto f = [&](double w) {
    double out = noise_v.joint_cgf_dx(lambda * w + 2.0 * lambda * gamma * s,
                                      -lambda * gamma);
    if (alpha > 0.0) out += noise_n.joint_cgf_dx(alpha * w, alpha * gamma);
    return out;
  };
  return solve_increasing(
      f, s, weight_limit(alpha, lambda, gamma, alpha > 0.0, noise_v, noise_n));
}

struct SubstitutedEval {
  double value = -kInf;
  std::vector<double> weights;
};

// Budget-substituted objective at fixed Chernoff parameters:
//   Phi(lambda, alpha) = E[lambda W S + lambda gamma S^2
//                          - C~_V(lambda W + 2 lambda gamma S, -lambda gamma)]
//                      - (lambda/alpha) (e0 + E[C~_N(alpha W, alpha gamma)])
// with W the per-atom stationarity solution.  Its maximum over the
// parameters is the best MD exponent at FA budget e0.
SubstitutedEval eval_substituted(const DiscreteJointPMF& signal, double e0,
                                 double gamma, double lambda, double alpha,
                                 const NoiseModel& noise_v,
                                 const NoiseModel& noise_n) {
  SubstitutedEval out;
  out.weights.reserve(signal.size());
  double md_part = 0.0;
  double fa_part = 0.0;
  for (const Atom& a : signal.atoms()) {
    const double w =
        substituted_weight(a.s, lambda, alpha, gamma, noise_v, noise_n);
    out.weights.push_back(w);
    md_part += a.prob * (lambda * w * a.s + lambda * gamma * a.s * a.s -
                         noise_v.joint_cgf(
                             lambda * w + 2.0 * lambda * gamma * a.s,
                             -lambda * gamma));
    if (alpha > 0.0)
      fa_part += a.prob * noise_n.joint_cgf(alpha * w, alpha * gamma);
  }
  if (alpha > 0.0) {
    out.value = md_part - (lambda / alpha) * (e0 + fa_part);
  } else {
    // alpha -> 0 limit of the budget term at e0 = 0: the H0 mean of the
    // statistic, gamma * E[N^2].
    out.value = md_part - lambda * gamma * noise_n.variance();
  }
  return out;
}

// Maximizes f over x > 0 (x < limit when finite) by a coarse log-spaced scan
// refined with golden-section around the best grid point.
SupResult maximize_positive(const std::function<double(double)>& f,
                            double limit) {
  std::vector<double> xs;
  if (std::isfinite(limit)) {
    for (int k = 1; k <= 26; ++k) xs.push_back(limit * std::pow(0.5, k));
  } else {
    for (int j = -13; j <= 13; ++j) xs.push_back(std::pow(2.0, j));
  }
  double best_x = xs.front();
  double best_v = -kInf;
  for (double x : xs) {
    const double val = f(x);
    if (val > best_v) {
      best_v = val;
      best_x = x;
    }
  }
  if (!std::isfinite(best_v)) return {best_v, best_x};
  double hi = best_x * 2.0;
  if (std::isfinite(limit)) hi = std::min(hi, 0.9995 * limit);
  const GoldenResult gr = golden_max(f, best_x * 0.5, hi, 1e-9);
  if (gr.value > best_v) return {gr.value, gr.arg};
  return {best_v, best_x};
}

// Largest Chernoff parameter alpha admissible on the FA side for a given
// energy coefficient.
double alpha_ceiling(double gamma, const NoiseModel& noise_n) {
  if (gamma == 0.0) return kInf;
  const double ymax = noise_n.joint_y_max();
  if (ymax == 0.0)
    throw DomainError(
        "no admissible Chernoff parameter: quadratic tilt diverges for " +
        noise_n.describe());
  return std::isfinite(ymax) ? ymax / gamma : kInf;
}

WeightsResult assemble(const DiscreteJointPMF& signal,
                       const std::vector<double>& weights, double gamma,
                       double e0, double theta, const NoiseModel& noise_v,
                       const NoiseModel& noise_n) {
  std::vector<Atom> atoms;
  atoms.reserve(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const Atom& a = signal.atoms()[i];
    atoms.push_back({weights[i], a.s, a.prob});
  }
  WeightsResult out;
  out.design.pmf = DiscreteJointPMF(std::move(atoms));
  out.design.gamma = gamma;
  out.design.theta = theta;
  const SupResult fa = efa(out.design, noise_n);
  const SupResult md = emd(out.design, noise_v);
  out.point.e0 = e0;
  out.point.e_fa = fa.value;
  out.point.e_md = md.value;
  out.point.alpha_star = fa.arg;
  out.point.lambda_star = md.arg;
  out.point.gamma_star = gamma;
  out.point.theta_star = theta;
  out.point.design = out.design;
  return out;
}

}  // namespace

double g(double w, const StationarityParams& p, const NoiseModel& noise_v,
         const NoiseModel& noise_n) {
  require_positive_lambda(p);
  double out = noise_v.cgf_deriv(p.lambda * w);
  if (p.phi != 0.0)
    out += (p.phi * p.alpha / p.lambda) * noise_n.cgf_deriv(p.alpha * w);
  return out;
}

double g_tilde(double w, double s, const StationarityParams& p,
               const NoiseModel& noise_v, const NoiseModel& noise_n) {
  require_positive_lambda(p);
  double out = noise_v.joint_cgf_dx(
      p.lambda * w + 2.0 * p.lambda * p.gamma * s, -p.lambda * p.gamma);
  if (p.phi != 0.0)
    out += (p.alpha * p.phi / p.lambda) *
           noise_n.joint_cgf_dx(p.alpha * w, p.alpha * p.gamma);
  return out;
}

double g_inverse(double target, double s, const StationarityParams& p,
                 const NoiseModel& noise_v, const NoiseModel& noise_n) {
  require_positive_lambda(p);
  return solve_increasing(
      [&](double w) { return g_tilde(w, s, p, noise_v, noise_n); }, target,
      weight_limit(p.alpha, p.lambda, p.gamma, p.phi != 0.0, noise_v,
                   noise_n));
}

double solve_phi(const DiscreteJointPMF& signal, double alpha, double lambda,
                 double gamma, double e0, double theta,
                 const NoiseModel& noise_v, const NoiseModel& noise_n) {
  if (!(alpha > 0.0)) throw InvalidArgumentError("alpha must be positive");
  if (!(lambda > 0.0)) throw InvalidArgumentError("lambda must be positive");
  const double rhs = alpha * theta - e0;
  auto lhs = [&](double phi) {
    StationarityParams p{alpha, phi, lambda, gamma};
    return signal.expect([&](double, double s) {
      const double w =
          (s == 0.0) ? 0.0 : g_inverse(s, s, p, noise_v, noise_n);
      return noise_n.joint_cgf(alpha * w, alpha * gamma);
    });
  };
  if (lhs(0.0) <= rhs) return 0.0;  // FA constraint slack: no multiplier
  // lhs decreases in phi toward C~_N(0, alpha*gamma); bracket the crossing.
  double phi_hi = 1.0;
  while (lhs(phi_hi) > rhs) {
    phi_hi *= 2.0;
    if (phi_hi > 1.153e18)  // 2^60: treat the constraint as unreachable
      return 0.0;
  }
  double phi_lo = phi_hi * 0.5 >= 1.0 ? phi_hi * 0.5 : 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (phi_lo + phi_hi);
    const double val = lhs(mid);
    if (std::abs(val - rhs) <= 1e-8 * (1.0 + std::abs(rhs))) return mid;
    if (val > rhs) {
      phi_lo = mid;
    } else {
      phi_hi = mid;
    }
    if (phi_hi - phi_lo <= 1e-14 * (1.0 + phi_hi)) break;
  }
  return 0.5 * (phi_lo + phi_hi);
}

WeightsResult optimal_weights(const DiscreteJointPMF& signal, double e0,
                              double gamma, const NoiseModel& noise_v,
                              const NoiseModel& noise_n) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(gamma >= 0.0)) throw InvalidArgumentError("gamma must be nonnegative");
  if (gamma == 0.0 && signal.second_moment_s() == 0.0)
    throw InvalidArgumentError(
        "signal power is zero: the pure correlator has nothing to detect");
  const double a_max = alpha_ceiling(gamma, noise_n);

  // Inner evaluation at fixed lambda: best alpha for the substituted
  // objective.  At e0 = 0 the alpha -> 0 limit is optimal and evaluated
  // directly (the budget term degenerates to the H0 mean of the statistic).
  auto best_over_alpha = [&](double lambda) {
    if (e0 == 0.0) {
      SupResult r;
      r.arg = 0.0;
      r.value = eval_substituted(signal, e0, gamma, lambda, 0.0, noise_v,
                                 noise_n)
                    .value;
      return r;
    }
    return maximize_positive(
        [&](double alpha) {
          try {
            return eval_substituted(signal, e0, gamma, lambda, alpha, noise_v,
                                    noise_n)
                .value;
          } catch (const OutOfRangeError&) {
            return -kInf;
          }
        },
        a_max);
  };

  double lambda_star, alpha_star;
  if (gamma == 0.0) {
    // The pure correlator is scale invariant: (w, theta) -> (x w, x theta)
    // absorbs any rescaling of lambda, so lambda can be pinned to 1.
    lambda_star = 1.0;
    alpha_star = best_over_alpha(1.0).arg;
  } else {
    const SupResult lam = maximize_positive(
        [&](double lambda) { return best_over_alpha(lambda).value; }, kInf);
    lambda_star = lam.arg;
    alpha_star = best_over_alpha(lambda_star).arg;
  }

  const SubstitutedEval ev = eval_substituted(signal, e0, gamma, lambda_star,
                                              alpha_star, noise_v, noise_n);
  if (!std::isfinite(ev.value))
    throw InfeasibleError(
        "no Chernoff parameters gave a finite objective for this FA budget");

  std::vector<Atom> watoms;
  for (std::size_t i = 0; i < signal.size(); ++i)
    watoms.push_back(
        {ev.weights[i], signal.atoms()[i].s, signal.atoms()[i].prob});
  const SupResult th = theta_for_e0(DiscreteJointPMF(watoms), gamma, noise_n,
                                    e0);
  return assemble(signal, ev.weights, gamma, e0, th.value, noise_v, noise_n);
}

WeightsResult optimal_weights_at_theta(const DiscreteJointPMF& signal,
                                       double e0, double theta, double gamma,
                                       const NoiseModel& noise_v,
                                       const NoiseModel& noise_n) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(gamma >= 0.0)) throw InvalidArgumentError("gamma must be nonnegative");
  const double a_max = alpha_ceiling(gamma, noise_n);

  // FA feasibility at parameter alpha: even the all-zero weight vector must
  // satisfy alpha*theta - E[C~_N] >= e0.
  auto feasible = [&](double alpha) {
    return alpha * theta - noise_n.joint_cgf(0.0, alpha * gamma) >= e0;
  };

  auto value_at = [&](double lambda, double alpha,
                      std::vector<double>* weights) {
    if (!(alpha > 0.0) || !feasible(alpha)) return -kInf;
    const double phi =
        solve_phi(signal, alpha, lambda, gamma, e0, theta, noise_v, noise_n);
    StationarityParams p{alpha, phi, lambda, gamma};
    double acc = 0.0;
    if (weights) weights->clear();
    for (const Atom& a : signal.atoms()) {
      const double w =
          (a.s == 0.0) ? 0.0 : g_inverse(a.s, a.s, p, noise_v, noise_n);
      if (weights) weights->push_back(w);
      acc += a.prob *
             (lambda * (w * a.s + gamma * a.s * a.s - theta) -
              noise_v.joint_cgf(lambda * w + 2.0 * lambda * gamma * a.s,
                                -lambda * gamma));
    }
    return acc;
  };

  auto best_over_alpha = [&](double lambda) {
    return maximize_positive(
        [&](double alpha) {
          try {
            return value_at(lambda, alpha, nullptr);
          } catch (const OutOfRangeError&) {
            return -kInf;
          }
        },
        a_max);
  };

  const SupResult lam = maximize_positive(
      [&](double lambda) { return best_over_alpha(lambda).value; }, kInf);
  if (!std::isfinite(lam.value))
    throw InfeasibleError(
        "the FA budget is unreachable at this threshold for every Chernoff "
        "parameter");
  const double alpha_star = best_over_alpha(lam.arg).arg;
  std::vector<double> weights;
  value_at(lam.arg, alpha_star, &weights);
  return assemble(signal, weights, gamma, e0, theta, noise_v, noise_n);
}

}  // namespace chdet
