// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "core/correlator.hpp"
#include "core/errors.hpp"
#include "core/exponents.hpp"
#include "core/noise.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

using namespace chdet;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

// Balanced ternary signal: +-s0 with probability 1/4 each, 0 otherwise.
DiscreteJointPMF ternary_signal(double s0) {
  return DiscreteJointPMF(
      {{0.0, -s0, 0.25}, {0.0, 0.0, 0.5}, {0.0, s0, 0.25}});
}

// Equiprobable four-level signal {-3a, -a, a, 3a}.
DiscreteJointPMF four_level_signal(double a) {
  return DiscreteJointPMF({{0.0, -3.0 * a, 0.25},
                           {0.0, -a, 0.25},
                           {0.0, a, 0.25},
                           {0.0, 3.0 * a, 0.25}});
}

double uniform_in(std::uint64_t* state, double lo, double hi) {
  return lo + (hi - lo) * double(splitmix64_next(*state) >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("stationarity map is linear for a gaussian pair") {
  const NoiseModel v = NoiseModel::gaussian(2.0);
  const NoiseModel n = NoiseModel::gaussian(1.0);
  const StationarityParams p{0.7, 0.4, 1.3, 0.0};
  const double slope = p.lambda * 2.0 + p.phi * p.alpha * p.alpha * 1.0 / p.lambda;
  std::uint64_t st = 77;
  for (int i = 0; i < 50; ++i) {
    const double w = uniform_in(&st, -5.0, 5.0);
    CHECK(std::abs(g(w, p, v, n) - slope * w) <= 1e-12 * (1.0 + std::abs(w)));
  }
  // Inverting the linear map divides by the slope.
  const double w = g_inverse(1.9, 0.0, p, v, n);
  CHECK(rel_err(w, 1.9 / slope) <= 1e-9);
}

TEST_CASE("stationarity map is odd and strictly increasing") {
  const NoiseModel v = NoiseModel::sum(NoiseModel::laplace(4.0),
                                       NoiseModel::binary_symmetric(7.0));
  const NoiseModel& n = v;
  const StationarityParams p{0.2, 0.7, 0.9, 0.0};
  // lambda * w must stay inside the finiteness strip |x| < 4.
  const double wmax = 0.95 * 4.0 / p.lambda;
  std::uint64_t st = 1234;
  for (int i = 0; i < 1000; ++i) {
    const double w = uniform_in(&st, 0.0, wmax);
    const double gp = g(w, p, v, n);
    const double gm = g(-w, p, v, n);
    CHECK(std::abs(gp + gm) <= 1e-12 * (1.0 + std::abs(gp)));
    const double w2 = uniform_in(&st, 0.0, wmax);
    if (w2 > w) CHECK(g(w2, p, v, n) > gp);
    if (w2 < w) CHECK(g(w2, p, v, n) < gp);
  }
}

TEST_CASE("quadratic-tilt map reduces to the linear-tilt map at zero energy "
          "weight") {
  const NoiseModel models[] = {
      NoiseModel::gaussian(1.5),
      NoiseModel::uniform(5.0),
      NoiseModel::binary_symmetric(7.0),
      NoiseModel::sum(NoiseModel::uniform(5.0),
                      NoiseModel::binary_symmetric(7.0)),
  };
  std::uint64_t st = 991;
  for (const NoiseModel& m : models) {
    const StationarityParams p{0.3, 0.8, 1.1, 0.0};
    for (int i = 0; i < 200; ++i) {
      const double w = uniform_in(&st, -3.0, 3.0);
      const double s = uniform_in(&st, -6.0, 6.0);
      const double a = g(w, p, m, m);
      const double b = g_tilde(w, s, p, m, m);
      CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("map inversion round-trips") {
  const NoiseModel v = NoiseModel::gaussian(1.5);
  const NoiseModel n = NoiseModel::gaussian(0.8);
  // Energy-weighted case: the FA-side quadratic tilt alpha*gamma must stay
  // below the admissible ceiling 1 / (2 * variance) = 0.625.
  const StationarityParams p{0.5, 0.6, 0.9, 0.4};
  std::uint64_t st = 5150;
  for (int i = 0; i < 100; ++i) {
    const double t = uniform_in(&st, -8.0, 8.0);
    const double s = uniform_in(&st, -4.0, 4.0);
    const double w = g_inverse(t, s, p, v, n);
    CHECK(std::abs(g_tilde(w, s, p, v, n) - t) <= 1e-9 * (1.0 + std::abs(t)));
  }
  const NoiseModel vb = NoiseModel::sum(NoiseModel::uniform(5.0),
                                        NoiseModel::binary_symmetric(7.0));
  const StationarityParams pb{0.25, 0.5, 0.7, 0.3};
  for (int i = 0; i < 40; ++i) {
    const double t = uniform_in(&st, -6.0, 6.0);
    const double s = uniform_in(&st, -6.0, 6.0);
    const double w = g_inverse(t, s, pb, vb, vb);
    CHECK(std::abs(g_tilde(w, s, pb, vb, vb) - t) <=
          1e-9 * (1.0 + std::abs(t)));
  }
}

TEST_CASE("inversion reports unreachable targets") {
  // A two-point noise has a bounded statistic: the tilted mean never leaves
  // (-z0, z0), so targets beyond that radius are unreachable.
  const NoiseModel v = NoiseModel::binary_symmetric(3.0);
  const NoiseModel n = NoiseModel::binary_symmetric(2.0);
  const StationarityParams p{0.4, 0.0, 1.0, 0.0};
  CHECK_THROWS_AS((void)g_inverse(3.5, 3.5, p, v, n), OutOfRangeError);
  CHECK_THROWS_AS((void)g_inverse(-3.5, -3.5, p, v, n), OutOfRangeError);
  CHECK(std::abs(g_tilde(g_inverse(2.9, 2.9, p, v, n), 2.9, p, v, n) - 2.9) <=
        1e-9 * 3.9);
}

TEST_CASE("multiplier solve matches closed-form algebra for gaussian noise") {
  // With unit-variance gaussian noise on both sides, lambda = alpha = 1 and a
  // single signal level s = 2, the budget function is 2 / (1 + phi)^2, so a
  // right-hand side of 1/2 pins phi at exactly 1.
  const NoiseModel v = NoiseModel::gaussian(1.0);
  const NoiseModel n = NoiseModel::gaussian(1.0);
  const DiscreteJointPMF signal({{0.0, 2.0, 1.0}});
  const double phi = solve_phi(signal, 1.0, 1.0, 0.0, 1.0, 1.5, v, n);
  CHECK(rel_err(phi, 1.0) <= 1e-6);

  // A generous threshold leaves the constraint slack: no multiplier needed.
  CHECK(solve_phi(signal, 1.0, 1.0, 0.0, 1.0, 3.1, v, n) == 0.0);

  // An unreachably tight budget never crosses; the solve falls back to 0.
  CHECK(solve_phi(signal, 1.0, 1.0, 0.0, 1.0, 0.9, v, n) == 0.0);
}

TEST_CASE("gaussian pair attains the matched-filter trade-off") {
  const double vv = 2.0, vn = 1.0;
  const NoiseModel v = NoiseModel::gaussian(vv);
  const NoiseModel n = NoiseModel::gaussian(vn);
  const DiscreteJointPMF signal = ternary_signal(1.0);
  const double es2 = signal.second_moment_s();

  const double e0 = 0.1;
  const WeightsResult res = optimal_weights(signal, e0, 0.0, v, n);

  // For gaussian noise the best weights are proportional to the signal and
  // the trade-off has a closed form.
  const double pred =
      std::pow(std::sqrt(es2) - std::sqrt(2.0 * e0 * vn), 2) / (2.0 * vv);
  CHECK(rel_err(res.point.e_md, pred) <= 1e-6);
  CHECK(std::abs(res.point.e_fa - e0) <= 1e-8 * (1.0 + e0));

  const auto& atoms = res.design.pmf.atoms();
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[1].w == 0.0);
  const double c = atoms[2].w / atoms[2].s;
  CHECK(c > 0.0);
  for (const Atom& a : atoms) {
    if (a.s == 0.0) continue;
    CHECK(std::abs(a.w - c * a.s) <= 1e-6 * std::abs(c * a.s));
  }
  // Antisymmetric weights for the symmetric signal.
  CHECK(std::abs(atoms[0].w + atoms[2].w) <= 1e-12 * std::abs(atoms[2].w));

  // The threshold spends the budget exactly: theta = sqrt(2 e0 vn E[W^2]).
  const double ew2 = res.design.pmf.second_moment_w();
  CHECK(rel_err(res.design.theta, std::sqrt(2.0 * e0 * vn * ew2)) <= 1e-6);

  // Zero budget: the threshold sits at the H0 mean and the miss exponent is
  // E[S^2] / (2 vv).
  const WeightsResult res0 = optimal_weights(signal, 0.0, 0.0, v, n);
  CHECK(res0.design.theta == 0.0);
  CHECK(res0.point.e_fa == 0.0);
  CHECK(rel_err(res0.point.e_md, es2 / (2.0 * vv)) <= 1e-6);
}

TEST_CASE("energy-augmented design is locally optimal") {
  const NoiseModel v = NoiseModel::gaussian(1.5);
  const NoiseModel n = NoiseModel::gaussian(1.0);
  const DiscreteJointPMF signal = ternary_signal(2.0);
  const double gamma = 0.15, e0 = 0.25;
  const WeightsResult res = optimal_weights(signal, e0, gamma, v, n);

  CHECK(std::abs(res.point.e_fa - e0) <= 1e-7 * (1.0 + e0));
  CHECK(res.point.e_md > 0.0);

  // Per-atom stationarity at the reported Chernoff parameters.
  const double lam = res.point.lambda_star;
  const double alf = res.point.alpha_star;
  for (const Atom& a : res.design.pmf.atoms()) {
    const double got =
        v.joint_cgf_dx(lam * a.w + 2.0 * lam * gamma * a.s, -lam * gamma) +
        n.joint_cgf_dx(alf * a.w, alf * gamma);
    CHECK(std::abs(got - a.s) <= 5e-4 * (1.0 + std::abs(a.s)));
  }

  // Nudging any weight and re-tightening the threshold cannot improve the
  // miss exponent at the same FA budget.
  const auto& atoms = res.design.pmf.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (double sign : {-1.0, 1.0}) {
      std::vector<Atom> pert = atoms;
      const double step =
          0.01 * (std::abs(pert[i].w) > 0.0 ? std::abs(pert[i].w) : 1.0);
      pert[i].w += sign * step;
      DetectorSpec spec;
      spec.pmf = DiscreteJointPMF(pert);
      spec.gamma = gamma;
      spec.theta = theta_for_e0(spec.pmf, gamma, n, e0).value;
      CHECK(emd(spec, v).value <= res.point.e_md + 1e-9);
    }
  }

  // Zero budget: threshold equals the H0 mean of the statistic and the FA
  // exponent vanishes.
  const WeightsResult res0 = optimal_weights(signal, 0.0, gamma, v, n);
  CHECK(rel_err(res0.design.theta, gamma * 1.0) <= 1e-9);
  CHECK(res0.point.e_fa <= 1e-9);
  CHECK(res0.point.e_md > res.point.e_md);
}

TEST_CASE("a matched energy weight beats the plain correlator when the "
          "hypotheses differ in variance") {
  // H1 noise has twice the H0 variance: the energy term carries information
  // that the plain correlator ignores, so some gamma > 0 must win.
  const NoiseModel v = NoiseModel::gaussian(2.0);
  const NoiseModel n = NoiseModel::gaussian(1.0);
  const DiscreteJointPMF signal = ternary_signal(2.0);
  const double e0 = 0.2;
  const double base = optimal_weights(signal, e0, 0.0, v, n).point.e_md;
  double best = base;
  for (double gamma : {0.05, 0.1, 0.2, 0.4})
    best = std::max(best,
                    optimal_weights(signal, e0, gamma, v, n).point.e_md);
  CHECK(best > base * 1.001);
}

TEST_CASE("optimal weights dominate the proportional correlator") {
  const NoiseModel v = NoiseModel::sum(NoiseModel::laplace(4.0),
                                       NoiseModel::binary_symmetric(7.0));
  const NoiseModel& n = v;
  const DiscreteJointPMF signal = four_level_signal(4.0);
  const double e0 = 1.0;

  const WeightsResult res = optimal_weights(signal, e0, 0.0, v, n);
  CHECK(std::abs(res.point.e_fa - e0) <= 1e-7 * (1.0 + e0));

  // Classical comparator: weights proportional to the signal, threshold
  // re-tightened to the same budget.
  std::vector<Atom> prop;
  for (const Atom& a : signal.atoms()) prop.push_back({a.s, a.s, a.prob});
  DetectorSpec cls;
  cls.pmf = DiscreteJointPMF(prop);
  cls.gamma = 0.0;
  cls.theta = theta_for_e0(cls.pmf, 0.0, n, e0).value;
  const double e_md_cls = emd(cls, v).value;

  CHECK(res.point.e_md >= e_md_cls - 1e-7);
  CHECK(res.point.e_md > e_md_cls * 1.01);  // strictly better, not a tie

  // Antisymmetry of the optimal weights in the signal level.
  const auto& atoms = res.design.pmf.atoms();
  REQUIRE(atoms.size() == 4);
  CHECK(std::abs(atoms[0].w + atoms[3].w) <= 1e-9 * std::abs(atoms[3].w));
  CHECK(std::abs(atoms[1].w + atoms[2].w) <= 1e-9 * std::abs(atoms[2].w));
}

TEST_CASE("fixed-threshold search agrees with the budget-driven design") {
  const NoiseModel v = NoiseModel::gaussian(2.0);
  const NoiseModel n = NoiseModel::gaussian(1.0);
  const DiscreteJointPMF signal = ternary_signal(1.0);

  SUBCASE("plain correlation") {
    const double e0 = 0.1;
    const WeightsResult a = optimal_weights(signal, e0, 0.0, v, n);
    const WeightsResult b =
        optimal_weights_at_theta(signal, e0, a.design.theta, 0.0, v, n);
    CHECK(rel_err(b.point.e_md, a.point.e_md) <= 1e-5);
    CHECK(b.point.e_fa >= e0 - 1e-7);
  }

  SUBCASE("with energy weighting") {
    const DiscreteJointPMF strong = ternary_signal(2.0);
    const double e0 = 0.25, gamma = 0.15;
    const WeightsResult a = optimal_weights(strong, e0, gamma, v, n);
    const WeightsResult b =
        optimal_weights_at_theta(strong, e0, a.design.theta, gamma, v, n);
    CHECK(rel_err(b.point.e_md, a.point.e_md) <= 1e-5);
    CHECK(b.point.e_fa >= e0 - 1e-7);
  }
}

TEST_CASE("design guards reject unusable requests") {
  const NoiseModel g1 = NoiseModel::gaussian(1.0);
  const DiscreteJointPMF signal = ternary_signal(1.0);
  const DiscreteJointPMF silent({{0.0, 0.0, 1.0}});

  CHECK_THROWS_AS((void)optimal_weights(silent, 0.5, 0.0, g1, g1),
                  InvalidArgumentError);
  CHECK_THROWS_AS((void)optimal_weights(signal, -0.5, 0.0, g1, g1),
                  InvalidArgumentError);
  CHECK_THROWS_AS((void)optimal_weights(signal, 0.5, -0.1, g1, g1),
                  InvalidArgumentError);

  // Heavy-tailed FA noise admits no quadratic tilt at all.
  const NoiseModel lap = NoiseModel::laplace(4.0);
  CHECK_THROWS_AS((void)optimal_weights(signal, 0.5, 0.3, g1, lap),
                  DomainError);

  // A zero threshold cannot buy a positive FA exponent.
  CHECK_THROWS_AS(
      (void)optimal_weights_at_theta(signal, 1.0, 0.0, 0.0, g1, g1),
      InfeasibleError);
}
