// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/design.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "core/correlator.hpp"
#include "core/errors.hpp"
#include "core/exponents.hpp"
#include "core/optimize.hpp"

namespace chdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Four-level antisymmetric design: weights {+-1, +-beta} matched to signal
// levels {+-a, +-3a}, all equiprobable.
DiscreteJointPMF four_level_pmf(double beta, double a) {
  return DiscreteJointPMF({{-beta, -3.0 * a, 0.25},
                           {-1.0, -a, 0.25},
                           {1.0, a, 0.25},
                           {beta, 3.0 * a, 0.25}});
}

DiscreteJointPMF ternary_signal(double a) {
  return DiscreteJointPMF({{0.0, -a, 0.25}, {0.0, 0.0, 0.5}, {0.0, a, 0.25}});
}

// Evaluates a fixed design: tighten the threshold to spend the FA budget
// exactly, then read both exponents back through the evaluators.
ExponentPoint eval_design(const DiscreteJointPMF& pmf, double gamma, double e0,
                          const NoiseModel& noise_v,
                          const NoiseModel& noise_n) {
  ExponentPoint pt;
  pt.e0 = e0;
  pt.design.pmf = pmf;
  pt.design.gamma = gamma;
  pt.design.theta = theta_for_e0(pmf, gamma, noise_n, e0).value;
  const SupResult fa = efa(pt.design, noise_n);
  const SupResult md = emd(pt.design, noise_v);
  pt.e_fa = fa.value;
  pt.alpha_star = fa.arg;
  pt.e_md = md.value;
  pt.lambda_star = md.arg;
  pt.gamma_star = gamma;
  pt.theta_star = pt.design.theta;
  return pt;
}

// Maximizes f over a logarithmic grid of positive arguments, refined by
// golden-section around the best grid point.  Returns the best argument.
double best_on_log_grid(const std::function<double(double)>& f, double lo,
                        double hi) {
  const double step = std::sqrt(2.0);
  double best_x = lo, best_v = -kInf;
  for (double x = lo; x <= hi * 1.0000001; x *= step) {
    const double val = f(x);
    if (val > best_v) {
      best_v = val;
      best_x = x;
    }
  }
  const GoldenResult g = golden_max(f, best_x / step, std::min(hi, best_x * step), 1e-9);
  return g.value > best_v ? g.arg : best_x;
}

NoiseModel laplace_pair_v(double q, double z0) {
  return NoiseModel::sum(NoiseModel::laplace(q),
                         NoiseModel::binary_symmetric(z0));
}

NoiseModel uniform_pair_v(double B, double z0) {
  return NoiseModel::sum(NoiseModel::uniform(B),
                         NoiseModel::binary_symmetric(z0));
}

ExponentPoint better_of(const ExponentPoint& a, const ExponentPoint& b) {
  return b.e_md > a.e_md ? b : a;
}

}  // namespace

ExponentPoint solve_example1(double e0, double a, double laplace_q, double z0,
                             bool classical) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(a > 0.0) || !(laplace_q > 0.0) || !(z0 > 0.0))
    throw InvalidArgumentError("a, q, and z0 must be positive");
  const NoiseModel n = NoiseModel::laplace(laplace_q);
  const NoiseModel v = laplace_pair_v(laplace_q, z0);
  auto value = [&](double beta) {
    return eval_design(four_level_pmf(beta, a), 0.0, e0, v, n).e_md;
  };
  const double beta = classical ? 3.0 : best_on_log_grid(value, 0.0625, 64.0);
  return eval_design(four_level_pmf(beta, a), 0.0, e0, v, n);
}

JointResult solve_joint_linear(double e0, double P_s, const NoiseModel& noise_v,
                               const NoiseModel& noise_n) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(P_s > 0.0)) throw InvalidArgumentError("P_s must be positive");
  auto design_at = [&](double p) {
    TernaryDesign d;
    d.p = p;
    d.w = 1.0;
    d.s = std::sqrt(P_s / (2.0 * p));
    d.gamma = 0.0;
    return d;
  };
  auto value = [&](double p) {
    const DetectorSpec spec = design_at(p).to_detector();
    return eval_design(spec.pmf, 0.0, e0, noise_v, noise_n).e_md;
  };
  // Duty cycle over (0, 1/2]: log grid down from the edge, golden refine.
  const double step = std::sqrt(2.0);
  double best_p = 0.5, best_v = -kInf;
  for (double p = 0.5; p > 2e-4; p /= step) {
    const double val = value(p);
    if (val > best_v) {
      best_v = val;
      best_p = p;
    }
  }
  const GoldenResult g =
      golden_max(value, best_p / step, std::min(0.5, best_p * step), 1e-9);
  if (g.value > best_v) best_p = g.arg;

  JointResult out;
  out.ternary = design_at(best_p);
  out.point = eval_design(out.ternary.to_detector().pmf, 0.0, e0, noise_v,
                          noise_n);
  out.ternary.theta = out.point.theta_star;
  return out;
}

ExponentPoint solve_example3_energy(double e0, double a, double B, double z0) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(a > 0.0) || !(B > 0.0) || !(z0 > 0.0))
    throw InvalidArgumentError("a, B, and z0 must be positive");
  const NoiseModel n = NoiseModel::uniform(B);
  const NoiseModel v = uniform_pair_v(B, z0);
  const DiscreteJointPMF sig = ternary_signal(a);
  // Scaling (w, gamma, theta) jointly leaves the detector unchanged, so any
  // gamma > 0 is reachable from the gamma = 1 slice; only the gamma = 0
  // boundary needs its own solve.
  const ExponentPoint linear = optimal_weights(sig, e0, 0.0, v, n).point;
  const ExponentPoint energy = optimal_weights(sig, e0, 1.0, v, n).point;
  return better_of(linear, energy);
}

JointResult solve_joint_energy(double e0, double P_s, const NoiseModel& noise_v,
                               const NoiseModel& noise_n) {
  if (!(e0 >= 0.0)) throw InvalidArgumentError("e0 must be nonnegative");
  if (!(P_s > 0.0)) throw InvalidArgumentError("P_s must be positive");

  // gamma = 0 boundary: the plain joint problem.
  const JointResult linear = solve_joint_linear(e0, P_s, noise_v, noise_n);

  // gamma > 0: with the weight scale pinned to w = 1, search (gamma, p) by
  // multistart direct descent in transformed coordinates u = ln(gamma),
  // r = logit(2p).  The power budget is spent exactly: s = sqrt(P_s / 2p).
  auto design_at = [&](double gamma, double p) {
    TernaryDesign d;
    d.p = p;
    d.w = 1.0;
    d.s = std::sqrt(P_s / (2.0 * p));
    d.gamma = gamma;
    return d;
  };
  auto value = [&](const std::vector<double>& x) {
    const double gamma = std::exp(x[0]);
    const double p = 0.5 / (1.0 + std::exp(-x[1]));
    if (!(gamma > 0.0) || !(p > 1e-12) || p >= 0.5) return kInf;  // minimizing
    try {
      const DetectorSpec spec = design_at(gamma, p).to_detector();
      return -eval_design(spec.pmf, gamma, e0, noise_v, noise_n).e_md;
    } catch (const Error&) {
      return kInf;
    }
  };

  double best_neg = kInf;
  std::vector<double> best_x{0.0, 0.0};
  for (std::size_t i = 0; i < 16; ++i) {
    const std::vector<double> h = halton_point(i, 2);
    const std::vector<double> start{-8.0 + 11.0 * h[0], -4.5 + 9.0 * h[1]};
    const NelderMeadResult r = nelder_mead(value, start, 0.35, 1e-9, 400);
    if (r.value < best_neg) {
      best_neg = r.value;
      best_x = r.arg;
    }
  }

  JointResult out = linear;
  if (-best_neg > linear.point.e_md) {
    const double gamma = std::exp(best_x[0]);
    const double p = 0.5 / (1.0 + std::exp(-best_x[1]));
    out.ternary = design_at(gamma, p);
    out.point = eval_design(out.ternary.to_detector().pmf, gamma, e0, noise_v,
                            noise_n);
    out.ternary.theta = out.point.theta_star;
  }
  return out;
}

std::vector<std::pair<double, double>> threshold_curve(
    const std::vector<double>& e0_grid, double B) {
  if (e0_grid.empty()) throw InvalidArgumentError("the budget grid is empty");
  if (!(B > 0.0)) throw InvalidArgumentError("B must be positive");
  const NoiseModel n = NoiseModel::uniform(B);
  const DiscreteJointPMF weights(
      {{-1.0, 0.0, 0.25}, {0.0, 0.0, 0.5}, {1.0, 0.0, 0.25}});
  std::vector<std::pair<double, double>> out;
  out.reserve(e0_grid.size());
  for (double e0 : e0_grid)
    out.emplace_back(e0, theta_for_e0(weights, 0.0, n, e0).value);
  return out;
}

std::vector<SweepEntry> sweep(const CurveRequest& request,
                              const DesignConfig& config) {
  for (std::size_t i = 1; i < request.e0_grid.size(); ++i)
    if (!(request.e0_grid[i] > request.e0_grid[i - 1]))
      throw InvalidArgumentError("budget grid must be strictly increasing");

  auto run_point = [&](double e0) {
    SweepEntry entry;
    entry.e0 = e0;
    try {
      switch (request.mode) {
        case CurveMode::kLinearFixedSignal:
          entry.point = solve_example1(e0, config.a, config.q, config.z0,
                                       /*classical=*/false);
          break;
        case CurveMode::kClassical:
          entry.point = solve_example1(e0, config.a, config.q, config.z0,
                                       /*classical=*/true);
          break;
        case CurveMode::kLinearJoint:
          entry.point = solve_joint_linear(e0, request.Ps,
                                           laplace_pair_v(config.q, config.z0),
                                           NoiseModel::laplace(config.q))
                            .point;
          break;
        case CurveMode::kEnergyFixedSignal:
          entry.point = solve_example3_energy(e0, config.a, config.B,
                                              config.z0);
          break;
        case CurveMode::kEnergyJoint:
          entry.point = solve_joint_energy(e0, request.Ps,
                                           uniform_pair_v(config.B, config.z0),
                                           NoiseModel::uniform(config.B))
                            .point;
          break;
      }
    } catch (const std::exception& e) {
      entry.ok = false;
      entry.message = e.what();
    }
    return entry;
  };

  const std::size_t n = request.e0_grid.size();
  std::vector<SweepEntry> out(n);
  const std::size_t workers = std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = run_point(request.e0_grid[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        out[i] = run_point(request.e0_grid[i]);
    });
  }
  for (std::thread& th : pool) th.join();
  return out;
}

}  // namespace chdet
