// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/errors.hpp"
#include "core/noise.hpp"

using chdet::DomainError;
using chdet::InvalidArgumentError;
using chdet::NoiseModel;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

struct JointRef {
  double x, y, ln_m, dx;
};

// Reference values frozen from 60-digit adaptive quadrature of the defining
// integrals E[exp(x X + y X^2)] and E[X exp(x X + y X^2)] / E[exp(...)].
const std::vector<JointRef> kUniform5Refs = {
    // Small-exponent region (handled internally by direct quadrature).
    {0.3, -0.2, -0.81674105691738968, 0.73376559438035899},
    {0.3, 0.2, 3.5377881464946003, 3.8444465914716852},
    {5.99, 0.0002, 25.862000801901452, 4.8331070956539573},
    {5.99, -0.0002, 25.852646285070433, 4.8330030578046258},
    // Large-exponent region (closed forms via erf / scaled-erfc / Dawson).
    {6.01, 0.0002, 25.958668502221073, 4.8336623195568644},
    {6.01, -0.0002, 25.94931191131047, 4.8335589483777241},
    {1.0, 2.0, 49.66222858035108, 4.9509773745741188},
    {0.2, 3.0, 70.424812495643397, 3.7682950020720303},
    {0.5, 1.19, 27.453172698469952, 4.8449317326058069},
    {1.2, 1.0, 26.298145157070485, 4.9075309822526541},
    {0.0, 1.3, 28.341639773403308, 0.0},
    {0.0, -1.3, -1.8614022823030919, 0.0},
    {35.0, 1.0, 193.89174252217617, 4.9777336636616653},
    {4.0, -1.0, 2.2697688046211559, 1.9999651863524879},
    {7.0, -1.1, 9.3549817844137332, 3.1747065548825916},
    {12.0, -1.0, 31.727027159437461, 4.6805162428826044},
    {30.0, -1.0, 119.69674364452582, 4.9504879416326979},
    {40.0, -2.0, 144.69192110913821, 4.950953383018744},
    {29.99, 0.0002, 144.25148467225441, 4.9666577457533632},
    {30.01, 0.0002, 144.35081804941207, 4.9666799650746309},
};

const std::vector<JointRef> kLaplace2Refs = {
    {0.5, -0.3, -0.076327061753791326, 0.1576364355348294},
    {3.0, -0.1, 4.2138419202007352, 5.0586954224772365},
};

// Models exercised by the property suites, with per-model ranges keeping the
// probe points well inside the joint domain and away from degenerate tilts.
struct ModelRange {
  NoiseModel model;
  double xmax;
  double ymin, ymax;
};

std::vector<ModelRange> property_models() {
  const NoiseModel bin_pair =
      NoiseModel::sum(NoiseModel::binary_symmetric(1.0),
                      NoiseModel::binary_symmetric(2.0));
  return {
      {NoiseModel::gaussian(1.0), 3.0, -1.5, 0.45},
      {NoiseModel::gaussian(2.5), 3.0, -1.5, 0.18},
      {NoiseModel::laplace(2.0), 3.0, -1.5, -0.01},
      {NoiseModel::laplace(4.0), 3.0, -1.5, -0.01},
      {NoiseModel::uniform(5.0), 8.0, -1.2, 1.2},
      {NoiseModel::uniform(0.8), 3.0, -1.5, 1.5},
      {NoiseModel::binary_symmetric(7.0), 0.45, -1.0, 1.0},
      {NoiseModel::binary_symmetric(1.0), 2.0, -1.5, 1.5},
      {NoiseModel::sum(NoiseModel::laplace(4.0),
                       NoiseModel::binary_symmetric(7.0)),
       0.45, -1.0, -0.01},
      {NoiseModel::sum(NoiseModel::uniform(5.0),
                       NoiseModel::binary_symmetric(7.0)),
       0.5, -0.4, 0.4},
      {NoiseModel::sum(NoiseModel::gaussian(0.5), NoiseModel::uniform(2.0)),
       2.0, -1.5, 0.9},
      {NoiseModel::sum(bin_pair, NoiseModel::gaussian(0.5)), 2.0, -1.5, 0.9},
  };
}

}  // namespace

TEST_CASE("construction rejects non-positive parameters") {
  CHECK_THROWS_AS(NoiseModel::gaussian(0.0), InvalidArgumentError);
  CHECK_THROWS_AS(NoiseModel::gaussian(-1.0), InvalidArgumentError);
  CHECK_THROWS_AS(NoiseModel::laplace(0.0), InvalidArgumentError);
  CHECK_THROWS_AS(NoiseModel::uniform(-2.0), InvalidArgumentError);
  CHECK_THROWS_AS(NoiseModel::binary_symmetric(0.0), InvalidArgumentError);
}

TEST_CASE("cgf closed forms match independent references") {
  CHECK(rel_err(NoiseModel::laplace(4.0).cgf(2.0), 0.28768207245178093) <
        1e-14);
  CHECK(rel_err(NoiseModel::uniform(5.0).cgf(1.0), 2.6973695060455838) <
        1e-13);
  CHECK(rel_err(NoiseModel::binary_symmetric(7.0).cgf(0.3),
                1.4217370741119728) < 1e-13);
  CHECK(rel_err(NoiseModel::gaussian(2.5).cgf(1.25), 1.953125) < 1e-15);
  // CGF at the origin vanishes for every model.
  for (const auto& mr : property_models()) CHECK(mr.model.cgf(0.0) == 0.0);
}

TEST_CASE("cgf derivative closed forms and finite differences") {
  CHECK(rel_err(NoiseModel::laplace(4.0).cgf_deriv(2.0), 1.0 / 3.0) < 1e-14);
  CHECK(rel_err(NoiseModel::uniform(5.0).cgf_deriv(1.0), 4.0004540199100969) <
        1e-13);
  for (const auto& mr : property_models()) {
    CHECK(mr.model.cgf_deriv(0.0) == 0.0);
    const double h = 1e-6;
    for (double v : {0.31, -0.17, 0.05}) {
      const double fd =
          (mr.model.cgf(v + h) - mr.model.cgf(v - h)) / (2.0 * h);
      CHECK(std::abs(mr.model.cgf_deriv(v) - fd) < 2e-7 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("cgf domain is enforced and intersects across sums") {
  const NoiseModel lap = NoiseModel::laplace(4.0);
  CHECK(lap.cgf_domain().lo == -4.0);
  CHECK(lap.cgf_domain().hi == 4.0);
  CHECK_THROWS_AS(lap.cgf(4.0), DomainError);
  CHECK_THROWS_AS(lap.cgf(-4.5), DomainError);
  CHECK_THROWS_AS(lap.cgf_deriv(7.0), DomainError);
  CHECK(std::isfinite(lap.cgf(3.999)));
  const NoiseModel mix =
      NoiseModel::sum(NoiseModel::laplace(2.0), NoiseModel::uniform(5.0));
  CHECK(mix.cgf_domain().hi == 2.0);
  CHECK_THROWS_AS(mix.cgf(2.0), DomainError);
  CHECK(std::isfinite(mix.cgf(1.999)));
}

TEST_CASE("cgf additivity for sums is exact") {
  const NoiseModel u = NoiseModel::uniform(5.0);
  const NoiseModel b = NoiseModel::binary_symmetric(7.0);
  const NoiseModel s = NoiseModel::sum(u, b);
  for (double v : {0.1, -0.6, 1.3, 2.7}) {
    CHECK(s.cgf(v) == u.cgf(v) + b.cgf(v));
    CHECK(s.cgf_deriv(v) == u.cgf_deriv(v) + b.cgf_deriv(v));
  }
  CHECK(rel_err(s.cgf(0.1),
                chdet::log_sinh_ratio(0.5) + chdet::log_cosh(0.7)) < 1e-15);
}

TEST_CASE("uniform joint cgf matches quadrature references on both regimes") {
  const NoiseModel u = NoiseModel::uniform(5.0);
  for (const auto& r : kUniform5Refs) {
    CHECK(rel_err(u.joint_cgf(r.x, r.y), r.ln_m) < 1e-10);
    if (r.dx == 0.0) {
      CHECK(std::abs(u.joint_cgf_dx(r.x, r.y)) < 1e-12);
    } else {
      CHECK(rel_err(u.joint_cgf_dx(r.x, r.y), r.dx) < 1e-9);
    }
  }
}

TEST_CASE("laplace joint cgf matches quadrature references") {
  const NoiseModel l = NoiseModel::laplace(2.0);
  for (const auto& r : kLaplace2Refs) {
    CHECK(rel_err(l.joint_cgf(r.x, r.y), r.ln_m) < 1e-11);
    CHECK(rel_err(l.joint_cgf_dx(r.x, r.y), r.dx) < 1e-11);
  }
}

TEST_CASE("gaussian and binary joint cgf closed forms") {
  const NoiseModel g = NoiseModel::gaussian(1.0);
  CHECK(rel_err(g.joint_cgf(1.0, 0.25), 1.3465735902799727) < 1e-14);
  CHECK(rel_err(g.joint_cgf_dx(1.0, 0.25), 2.0) < 1e-14);
  const NoiseModel b = NoiseModel::binary_symmetric(7.0);
  CHECK(rel_err(b.joint_cgf(0.1, -0.04), -1.7327297706414944) < 1e-13);
  CHECK(rel_err(b.joint_cgf_dx(0.1, 0.01), 4.2305744398201445) < 1e-14);
  CHECK(rel_err(b.joint_cgf_dx(0.1, -3.0), 4.2305744398201445) < 1e-14);
}

TEST_CASE("sum joint cgf matches quadrature references") {
  const NoiseModel lap_bin = NoiseModel::sum(
      NoiseModel::laplace(4.0), NoiseModel::binary_symmetric(7.0));
  CHECK(rel_err(lap_bin.joint_cgf(0.2, -0.05), -1.6729594230160655) < 1e-10);
  CHECK(rel_err(lap_bin.joint_cgf_dx(0.2, -0.05), 6.1194531422900422) < 1e-10);

  const NoiseModel uni_bin = NoiseModel::sum(
      NoiseModel::uniform(5.0), NoiseModel::binary_symmetric(7.0));
  const std::vector<JointRef> uni_bin_refs = {
      {0.3, -0.2, -2.8703180583608805, 2.0117430005401702},
      {0.3, 0.1, 14.041637779040221, 11.583095358632776},
      {0.5, -0.3, -3.2367305827326699, 2.3347520542851029},
  };
  for (const auto& r : uni_bin_refs) {
    CHECK(rel_err(uni_bin.joint_cgf(r.x, r.y), r.ln_m) < 1e-10);
    CHECK(rel_err(uni_bin.joint_cgf_dx(r.x, r.y), r.dx) < 1e-9);
  }
  // Left/right operands commute.
  const NoiseModel bin_uni = NoiseModel::sum(
      NoiseModel::binary_symmetric(7.0), NoiseModel::uniform(5.0));
  CHECK(rel_err(bin_uni.joint_cgf(0.3, -0.2), -2.8703180583608805) < 1e-10);

  const NoiseModel gauss_uni =
      NoiseModel::sum(NoiseModel::gaussian(0.5), NoiseModel::uniform(2.0));
  CHECK(rel_err(gauss_uni.joint_cgf(0.8, -0.4), -0.22564847269833235) < 1e-9);
  CHECK(rel_err(gauss_uni.joint_cgf_dx(0.8, -0.4), 0.6666977296007695) <
        1e-9);
  CHECK(rel_err(gauss_uni.joint_cgf(0.3, 0.55), 3.7739776568721648) < 1e-9);
  CHECK(rel_err(gauss_uni.joint_cgf_dx(0.3, 0.55), 3.5611569793164017) <
        1e-9);

  const NoiseModel nested = NoiseModel::sum(
      NoiseModel::sum(NoiseModel::binary_symmetric(1.0),
                      NoiseModel::binary_symmetric(2.0)),
      NoiseModel::gaussian(0.5));
  CHECK(rel_err(nested.joint_cgf(0.4, -0.3), -0.77925645805211359) < 1e-10);
  CHECK(rel_err(nested.joint_cgf_dx(0.4, -0.3), 0.64417312543214587) < 1e-10);
}

TEST_CASE("nested binary sums agree with exact sign enumeration") {
  // Four binary components force the internal sum rebalancing; the reference
  // is the exact 16-point mixture computed directly here.
  const double z[4] = {1.0, 2.0, 1.5, 0.7};
  const NoiseModel model = NoiseModel::sum(
      NoiseModel::sum(NoiseModel::binary_symmetric(z[0]),
                      NoiseModel::binary_symmetric(z[1])),
      NoiseModel::sum(NoiseModel::binary_symmetric(z[2]),
                      NoiseModel::binary_symmetric(z[3])));
  for (double y : {-0.3, 0.25}) {
    for (double x : {0.4, -1.1}) {
      double m = 0.0, md = 0.0;
      for (int mask = 0; mask < 16; ++mask) {
        double v = 0.0;
        for (int i = 0; i < 4; ++i) v += (mask >> i & 1) ? z[i] : -z[i];
        const double e = std::exp(x * v + y * v * v) / 16.0;
        m += e;
        md += v * e;
      }
      CHECK(rel_err(model.joint_cgf(x, y), std::log(m)) < 1e-12);
      CHECK(rel_err(model.joint_cgf_dx(x, y), md / m) < 1e-11);
    }
  }
}

TEST_CASE("sum of gaussians equals gaussian of summed variance") {
  const NoiseModel pair =
      NoiseModel::sum(NoiseModel::gaussian(1.0), NoiseModel::gaussian(2.0));
  const NoiseModel merged = NoiseModel::gaussian(3.0);
  CHECK(pair.joint_y_max() == merged.joint_y_max());
  CHECK(rel_err(pair.joint_cgf(0.7, 0.12), 3.2614828379064437) < 1e-9);
  for (double y : {-0.8, 0.0, 0.12}) {
    for (double x : {0.3, -1.7, 2.2}) {
      CHECK(rel_err(pair.joint_cgf(x, y), merged.joint_cgf(x, y)) < 1e-9);
      CHECK(std::abs(pair.joint_cgf_dx(x, y) - merged.joint_cgf_dx(x, y)) <
            1e-8);
    }
  }
}

TEST_CASE("joint cgf reduces to the plain cgf at y = 0") {
  std::mt19937_64 rng(11);
  for (const auto& mr : property_models()) {
    const double xmax = std::min(mr.xmax, 0.95 * mr.model.cgf_domain().hi);
    std::uniform_real_distribution<double> ux(-xmax, xmax);
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      CHECK(mr.model.joint_cgf(x, 0.0) == mr.model.cgf(x));
      CHECK(mr.model.joint_cgf_dx(x, 0.0) == mr.model.cgf_deriv(x));
    }
  }
}

TEST_CASE("joint cgf is even in x and its x-derivative is odd") {
  std::mt19937_64 rng(13);
  int points = 0;
  for (const auto& mr : property_models()) {
    std::uniform_real_distribution<double> ux(0.0, mr.xmax);
    std::uniform_real_distribution<double> uy(mr.ymin, mr.ymax);
    for (int i = 0; i < 90; ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      const double a = mr.model.joint_cgf(x, y);
      const double b = mr.model.joint_cgf(-x, y);
      CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
      CHECK(std::abs(mr.model.joint_cgf_dx(x, y) +
                     mr.model.joint_cgf_dx(-x, y)) <=
            1e-9 * (1.0 + std::abs(mr.model.joint_cgf_dx(x, y))));
      ++points;
    }
  }
  CHECK(points >= 1000);
}

TEST_CASE("joint cgf x-derivative matches centered finite differences") {
  std::mt19937_64 rng(17);
  for (const auto& mr : property_models()) {
    std::uniform_real_distribution<double> ux(-mr.xmax, mr.xmax);
    std::uniform_real_distribution<double> uy(mr.ymin, mr.ymax);
    for (int i = 0; i < 60; ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      const double h = 1e-5;
      const double fd =
          (mr.model.joint_cgf(x + h, y) - mr.model.joint_cgf(x - h, y)) /
          (2.0 * h);
      const double an = mr.model.joint_cgf_dx(x, y);
      CHECK(std::abs(an - fd) <= 1e-6 * (1.0 + std::abs(an)));
    }
  }
}

TEST_CASE("joint cgf is strictly convex in x") {
  std::mt19937_64 rng(19);
  int points = 0;
  for (const auto& mr : property_models()) {
    std::uniform_real_distribution<double> ux(-mr.xmax, mr.xmax);
    std::uniform_real_distribution<double> uy(mr.ymin, mr.ymax);
    for (int i = 0; i < 90; ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      const double h = 1e-3;
      const double d2 = mr.model.joint_cgf(x + h, y) -
                        2.0 * mr.model.joint_cgf(x, y) +
                        mr.model.joint_cgf(x - h, y);
      CHECK(d2 > 0.0);
      ++points;
    }
  }
  CHECK(points >= 1000);
}

TEST_CASE("joint domain limits by tail behaviour") {
  CHECK(NoiseModel::gaussian(1.0).joint_y_max() == 0.5);
  CHECK(NoiseModel::gaussian(2.5).joint_y_max() == 0.2);
  CHECK(NoiseModel::laplace(4.0).joint_y_max() == 0.0);
  CHECK(std::isinf(NoiseModel::uniform(5.0).joint_y_max()));
  CHECK(std::isinf(NoiseModel::binary_symmetric(7.0).joint_y_max()));
  const NoiseModel lap_bin = NoiseModel::sum(
      NoiseModel::laplace(4.0), NoiseModel::binary_symmetric(7.0));
  CHECK(lap_bin.joint_y_max() == 0.0);
  const NoiseModel gauss_uni =
      NoiseModel::sum(NoiseModel::gaussian(0.5), NoiseModel::uniform(2.0));
  CHECK(gauss_uni.joint_y_max() == 1.0);

  CHECK_THROWS_AS(NoiseModel::laplace(4.0).joint_cgf(0.1, 1e-6), DomainError);
  CHECK_THROWS_AS(NoiseModel::gaussian(1.0).joint_cgf(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(NoiseModel::gaussian(1.0).joint_cgf_dx(0.0, 0.7),
                  DomainError);
  CHECK(std::isfinite(NoiseModel::gaussian(1.0).joint_cgf(0.0, 0.4999)));
  CHECK_THROWS_AS(lap_bin.joint_cgf(0.1, 0.01), DomainError);
  CHECK_THROWS_AS(gauss_uni.joint_cgf(0.1, 1.0), DomainError);
  CHECK(std::isfinite(gauss_uni.joint_cgf(0.1, 0.99)));
  CHECK_THROWS_AS(NoiseModel::laplace(4.0).joint_cgf(4.2, 0.0), DomainError);
  CHECK(std::isfinite(NoiseModel::laplace(4.0).joint_cgf(4.2, -0.01)));
  // Bounded support admits arbitrarily large tilts in either argument.
  CHECK(std::isfinite(
      NoiseModel::uniform(5.0).joint_cgf(200.0, 40.0)));
  CHECK(std::isfinite(
      NoiseModel::binary_symmetric(7.0).joint_cgf(100.0, 100.0)));
  // Non-finite arguments are rejected outright.
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(NoiseModel::uniform(5.0).joint_cgf(inf, -1.0), DomainError);
  CHECK_THROWS_AS(NoiseModel::uniform(5.0).joint_cgf(0.0, -inf), DomainError);
}

TEST_CASE("model variance and support bounds") {
  CHECK(NoiseModel::gaussian(2.5).variance() == 2.5);
  CHECK(NoiseModel::laplace(4.0).variance() == 0.125);
  CHECK(rel_err(NoiseModel::uniform(5.0).variance(), 25.0 / 3.0) < 1e-15);
  CHECK(NoiseModel::binary_symmetric(7.0).variance() == 49.0);
  const NoiseModel s = NoiseModel::sum(
      NoiseModel::uniform(5.0), NoiseModel::binary_symmetric(7.0));
  CHECK(rel_err(s.variance(), 25.0 / 3.0 + 49.0) < 1e-15);
  CHECK(s.support_sup() == 12.0);
  CHECK(std::isinf(NoiseModel::gaussian(1.0).support_sup()));
  CHECK(std::isinf(
      NoiseModel::sum(NoiseModel::laplace(2.0), NoiseModel::uniform(1.0))
          .support_sup()));
}

TEST_CASE("samplers are deterministic and hit documented supports") {
  for (const auto& mr : property_models()) {
    const auto a = mr.model.sample(512, 42);
    const auto b = mr.model.sample(512, 42);
    CHECK(a == b);
    const auto c = mr.model.sample(512, 43);
    CHECK(a != c);
  }
  const auto u = NoiseModel::uniform(5.0).sample(20000, 1);
  for (double v : u) {
    CHECK(v >= -5.0);
    CHECK(v <= 5.0);
  }
  const auto bs = NoiseModel::binary_symmetric(7.0).sample(20000, 2);
  int plus = 0;
  for (double v : bs) {
    CHECK(std::abs(v) == 7.0);
    plus += v > 0.0;
  }
  // Two-sided binomial(20000, 1/2) within five standard deviations.
  CHECK(std::abs(plus - 10000) < 5 * std::sqrt(20000 * 0.25));
}

TEST_CASE("sample moments and empirical mgf agree with the model") {
  const std::size_t n = 400000;
  std::uint64_t seed = 5;
  for (const auto& mr : property_models()) {
    const auto draws = mr.model.sample(n, seed++);
    double mean = 0.0, sq = 0.0;
    for (double v : draws) {
      mean += v;
      sq += v * v;
    }
    mean /= double(n);
    sq /= double(n);
    const double sd = std::sqrt(mr.model.variance());
    CHECK(std::abs(mean) < 5.0 * sd / std::sqrt(double(n)));
    CHECK(std::abs(sq - mr.model.variance()) <
          6.0 * sq / std::sqrt(double(n)) + 1e-9);
    // Empirical MGF at a small tilt versus exp(cgf), three standard errors.
    const double t = 0.2;
    double m1 = 0.0, m2 = 0.0;
    for (double v : draws) {
      const double e = std::exp(t * v);
      m1 += e;
      m2 += e * e;
    }
    m1 /= double(n);
    m2 /= double(n);
    const double want = std::exp(mr.model.cgf(t));
    const double se = std::sqrt(std::max(0.0, m2 - m1 * m1) / double(n));
    CHECK(std::abs(m1 - want) < 3.5 * se + 1e-12);
  }
}

TEST_CASE("describe names the model tree") {
  const NoiseModel s = NoiseModel::sum(
      NoiseModel::uniform(5.0), NoiseModel::binary_symmetric(7.0));
  CHECK(s.describe() ==
        "sum(uniform(half_width=5), binary(magnitude=7))");
}
