// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace chdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793;
constexpr double kSqrtPi = 1.7724538509055160;
constexpr double kTwoOverSqrtPi = 1.1283791670955126;
constexpr double kLn2 = 0.6931471805599453;

// Exponent range below which the uniform-support joint CGF falls back to
// log-shifted quadrature.  Above it the closed-form branches are safe: their
// difference branches require |x|*b > 2*|y|*b^2, so the range bound forces
// |x|*b >= 20 and the cancelling factor exp(-2|x|b) <= exp(-40).
constexpr double kUniformQuadRange = 30.0;

using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;

// ---- Gaussian closed forms -------------------------------------------------

double jc_gaussian(double s2, double x, double y) {
  const double d = 1.0 - 2.0 * s2 * y;
  return -0.5 * std::log1p(-2.0 * s2 * y) + s2 * x * x / (2.0 * d);
}

double jc_gaussian_dx(double s2, double x, double y) {
  return s2 * x / (1.0 - 2.0 * s2 * y);
}

// ---- Laplace closed forms (y < 0) -----------------------------------------
//
// E[exp(x X + y X^2)] with density (q/2) exp(-q|t|) splits into two one-sided
// Gaussian-type integrals; with p = -y and
//   A = (q - x) / (2 sqrt(p)),  B = (q + x) / (2 sqrt(p))
// the mean is (q/4) sqrt(pi/p) [erfcx(A) + erfcx(B)], evaluated in logs so
// that negative A (x beyond q) cannot overflow.

double jc_laplace(double q, double x, double y) {
  const double p = -y;
  const double sp = std::sqrt(p);
  const double a = (q - x) / (2.0 * sp);
  const double b = (q + x) / (2.0 * sp);
  return std::log(q / 4.0) + 0.5 * std::log(kPi / p) +
         log_add_exp(log_erfcx(a), log_erfcx(b));
}

double jc_laplace_dx(double q, double x, double y) {
  const double p = -y;
  const double sp = std::sqrt(p);
  const double a = (q - x) / (2.0 * sp);
  const double b = (q + x) / (2.0 * sp);
  const double la = log_erfcx(a);
  const double lb = log_erfcx(b);
  const double m = std::max(la, lb);
  const double ea = std::exp(la - m);
  const double eb = std::exp(lb - m);
  return (b * eb - a * ea) / (sp * (ea + eb));
}

// ---- Uniform closed forms and quadrature (y != 0) -------------------------

double jc_uniform_quad(double b, double x, double y) {
  auto h = [&](double t) { return x * t + y * t * t; };
  double m = std::max(h(-b), h(b));
  if (y < 0.0) {
    const double tstar = -x / (2.0 * y);
    if (std::abs(tstar) <= b) m = std::max(m, h(tstar));
  }
  const double integral = Quad::integrate(
      [&](double t) { return std::exp(h(t) - m); }, -b, b, 15, 1e-13);
  return m + std::log(integral / (2.0 * b));
}

double jc_uniform_quad_dx(double b, double x, double y) {
  auto h = [&](double t) { return x * t + y * t * t; };
  double m = std::max(h(-b), h(b));
  if (y < 0.0) {
    const double tstar = -x / (2.0 * y);
    if (std::abs(tstar) <= b) m = std::max(m, h(tstar));
  }
  const double denom = Quad::integrate(
      [&](double t) { return std::exp(h(t) - m); }, -b, b, 15, 1e-13);
  const double numer = Quad::integrate(
      [&](double t) { return t * std::exp(h(t) - m); }, -b, b, 15, 1e-13);
  return numer / denom;
}

double jc_uniform_closed(double b, double ax, double y) {
  const double p = std::abs(y);
  const double sp = std::sqrt(p);
  const double base = std::log(kSqrtPi / (4.0 * b * sp));
  if (y < 0.0) {
    const double u1 = sp * b - ax / (2.0 * sp);
    const double u2 = sp * b + ax / (2.0 * sp);
    if (u1 >= 0.0) {
      return ax * ax / (4.0 * p) + std::log(erf(u1) + erf(u2)) + base;
    }
    // Gaussian bump centred beyond the support: difference of erfc values,
    // with ax^2/(4p) - u1^2 = ax*b - p*b^2 substituted analytically.
    const double au1 = -u1;
    const double l1 = log_erfcx(au1);
    const double l2 = log_erfcx(u2);
    return ax * b - p * b * b + l1 +
           std::log1p(-std::exp(-2.0 * ax * b + l2 - l1)) + base;
  }
  // y > 0: erfi branch.  In this regime v2^2 = p b^2 + ax b + ax^2/(4p) >= 30
  // so the Dawson asymptotics are in play and v2^2 - ax^2/(4p) = p b^2 + ax b
  // is substituted analytically to avoid forming the difference in floats.
  const double v1 = sp * b - ax / (2.0 * sp);
  const double v2 = sp * b + ax / (2.0 * sp);
  const double av1 = std::abs(v1);
  const double log_tail2 = std::log(kTwoOverSqrtPi * dawson(v2));
  double corr = 0.0;
  if (av1 > 0.0) {
    double delta;  // ln erfi(av1) - ln erfi(v2)
    if (av1 > 5.0) {
      delta = -2.0 * ax * b + std::log(dawson(av1) / dawson(v2));
    } else {
      delta = log_erfi(av1) - (v2 * v2 + log_tail2);
    }
    const double s = (v1 >= 0.0) ? 1.0 : -1.0;
    corr = std::log1p(s * std::exp(delta));
  }
  return p * b * b + ax * b + log_tail2 + corr + base;
}

double jc_uniform_closed_dx(double b, double ax, double y) {
  const double p = std::abs(y);
  const double sp = std::sqrt(p);
  if (y < 0.0) {
    const double u1 = sp * b - ax / (2.0 * sp);
    const double u2 = sp * b + ax / (2.0 * sp);
    if (u1 >= 0.0) {
      const double s = erf(u1) + erf(u2);
      return ax / (2.0 * p) +
             (std::exp(-u2 * u2) - std::exp(-u1 * u1)) /
                 (std::sqrt(kPi * p) * s);
    }
    const double au1 = -u1;
    const double t = erfcx(au1) - std::exp(-2.0 * ax * b) * erfcx(u2);
    return ax / (2.0 * p) +
           (std::exp(-2.0 * ax * b) - 1.0) / (std::sqrt(kPi * p) * t);
  }
  const double v1 = sp * b - ax / (2.0 * sp);
  const double v2 = sp * b + ax / (2.0 * sp);
  const double av1 = std::abs(v1);
  const double s = (v1 >= 0.0) ? 1.0 : -1.0;
  const double denom = dawson(v2) + s * std::exp(-2.0 * ax * b) * dawson(av1);
  return -ax / (2.0 * p) + (-std::expm1(-2.0 * ax * b)) / (2.0 * sp * denom);
}

double jc_uniform(double b, double x, double y) {
  const double ax = std::abs(x);
  if (ax * b + std::abs(y) * b * b < kUniformQuadRange)
    return jc_uniform_quad(b, x, y);
  return jc_uniform_closed(b, ax, y);
}

double jc_uniform_dx(double b, double x, double y) {
  const double ax = std::abs(x);
  if (ax * b + std::abs(y) * b * b < kUniformQuadRange)
    return jc_uniform_quad_dx(b, x, y);
  const double sgn = (x < 0.0) ? -1.0 : 1.0;
  if (ax == 0.0) return 0.0;
  return sgn * jc_uniform_closed_dx(b, ax, y);
}

}  // namespace

// ---- Model plumbing --------------------------------------------------------

struct NoiseModel::Impl {
  enum class Kind { kGaussian, kLaplace, kUniform, kBinary, kSum };
  Kind kind = Kind::kGaussian;
  double param = 0.0;  // variance / scale / half-width / magnitude
  std::shared_ptr<const Impl> left, right;
};

using Kind = NoiseModel::Impl::Kind;

namespace {

NoiseModel::Impl make_scalar(Kind kind, double param) {
  NoiseModel::Impl impl;
  impl.kind = kind;
  impl.param = param;
  return impl;
}

}  // namespace

NoiseModel NoiseModel::gaussian(double variance) {
  if (!(variance > 0.0))
    throw InvalidArgumentError("gaussian variance must be positive");
  return NoiseModel(
      std::make_shared<const Impl>(make_scalar(Kind::kGaussian, variance)));
}

NoiseModel NoiseModel::laplace(double scale) {
  if (!(scale > 0.0))
    throw InvalidArgumentError("laplace scale must be positive");
  return NoiseModel(
      std::make_shared<const Impl>(make_scalar(Kind::kLaplace, scale)));
}

NoiseModel NoiseModel::uniform(double half_width) {
  if (!(half_width > 0.0))
    throw InvalidArgumentError("uniform half-width must be positive");
  return NoiseModel(
      std::make_shared<const Impl>(make_scalar(Kind::kUniform, half_width)));
}

NoiseModel NoiseModel::binary_symmetric(double magnitude) {
  if (!(magnitude > 0.0))
    throw InvalidArgumentError("binary magnitude must be positive");
  return NoiseModel(
      std::make_shared<const Impl>(make_scalar(Kind::kBinary, magnitude)));
}

NoiseModel NoiseModel::sum(const NoiseModel& left, const NoiseModel& right) {
  NoiseModel::Impl impl;
  impl.kind = Kind::kSum;
  impl.left = left.impl_;
  impl.right = right.impl_;
  return NoiseModel(std::make_shared<const Impl>(std::move(impl)));
}

EvalDomain NoiseModel::cgf_domain() const {
  switch (impl_->kind) {
    case Kind::kLaplace:
      return {-impl_->param, impl_->param};
    case Kind::kSum: {
      const EvalDomain a = NoiseModel(impl_->left).cgf_domain();
      const EvalDomain b = NoiseModel(impl_->right).cgf_domain();
      return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    default:
      return {-kInf, kInf};
  }
}

namespace {

// "Tail variance": the Gaussian-equivalent variance of the heaviest tail.
// It controls the largest quadratic tilt y with E[exp(y X^2)] finite:
// bounded support -> 0 (any y), Gaussian -> sigma^2, exponential tails ->
// +inf (no y > 0 at all).  It adds over independent sums.
double tail_variance(const NoiseModel::Impl& impl) {
  switch (impl.kind) {
    case Kind::kGaussian:
      return impl.param;
    case Kind::kLaplace:
      return kInf;
    case Kind::kUniform:
    case Kind::kBinary:
      return 0.0;
    case Kind::kSum:
      return tail_variance(*impl.left) + tail_variance(*impl.right);
  }
  return kInf;
}

}  // namespace

double NoiseModel::joint_y_max() const {
  const double tau = tail_variance(*impl_);
  if (tau == 0.0) return kInf;
  if (std::isinf(tau)) return 0.0;
  return 1.0 / (2.0 * tau);
}

bool NoiseModel::joint_in_domain(double x, double y) const {
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  if (y == 0.0) return cgf_domain().contains(x);
  if (y < 0.0) return true;
  return y < joint_y_max();
}

double NoiseModel::variance() const {
  switch (impl_->kind) {
    case Kind::kGaussian:
      return impl_->param;
    case Kind::kLaplace:
      return 2.0 / (impl_->param * impl_->param);
    case Kind::kUniform:
      return impl_->param * impl_->param / 3.0;
    case Kind::kBinary:
      return impl_->param * impl_->param;
    case Kind::kSum:
      return NoiseModel(impl_->left).variance() +
             NoiseModel(impl_->right).variance();
  }
  return 0.0;
}

double NoiseModel::support_sup() const {
  switch (impl_->kind) {
    case Kind::kGaussian:
    case Kind::kLaplace:
      return kInf;
    case Kind::kUniform:
    case Kind::kBinary:
      return impl_->param;
    case Kind::kSum:
      return NoiseModel(impl_->left).support_sup() +
             NoiseModel(impl_->right).support_sup();
  }
  return kInf;
}

double NoiseModel::cgf(double v) const {
  if (!cgf_domain().contains(v))
    throw DomainError("cgf argument outside the finiteness domain of " +
                      describe());
  switch (impl_->kind) {
    case Kind::kGaussian:
      return 0.5 * impl_->param * v * v;
    case Kind::kLaplace: {
      const double r = v / impl_->param;
      return -std::log1p(-r * r);
    }
    case Kind::kUniform:
      return log_sinh_ratio(impl_->param * v);
    case Kind::kBinary:
      return log_cosh(impl_->param * v);
    case Kind::kSum:
      return NoiseModel(impl_->left).cgf(v) + NoiseModel(impl_->right).cgf(v);
  }
  return 0.0;
}

double NoiseModel::cgf_deriv(double v) const {
  if (!cgf_domain().contains(v))
    throw DomainError("cgf argument outside the finiteness domain of " +
                      describe());
  switch (impl_->kind) {
    case Kind::kGaussian:
      return impl_->param * v;
    case Kind::kLaplace: {
      const double q = impl_->param;
      return 2.0 * v / (q * q - v * v);
    }
    case Kind::kUniform:
      return impl_->param * log_sinh_ratio_deriv(impl_->param * v);
    case Kind::kBinary:
      return impl_->param * std::tanh(impl_->param * v);
    case Kind::kSum:
      return NoiseModel(impl_->left).cgf_deriv(v) +
             NoiseModel(impl_->right).cgf_deriv(v);
  }
  return 0.0;
}

namespace {

bool has_primitive_density(const NoiseModel::Impl& impl) {
  switch (impl.kind) {
    case Kind::kGaussian:
    case Kind::kLaplace:
    case Kind::kUniform:
      return true;
    default:
      return false;
  }
}

double log_density(const NoiseModel::Impl& impl, double z) {
  switch (impl.kind) {
    case Kind::kGaussian:
      return -0.5 * z * z / impl.param - 0.5 * std::log(2.0 * kPi * impl.param);
    case Kind::kLaplace:
      return std::log(impl.param / 2.0) - impl.param * std::abs(z);
    case Kind::kUniform:
      return -std::log(2.0 * impl.param);
    default:
      return -kInf;
  }
}

}  // namespace

// ln E[exp(x V + y V^2)] for V = O + Z, integrating over a density component
// Z and delegating the conditional mean to the other component O:
//   E[..] = E_Z[ exp(x Z + y Z^2 + joint_cgf_O(x + 2 y Z, y)) ].
double NoiseModel::joint_cgf(double x, double y) const {
  if (!joint_in_domain(x, y))
    throw DomainError("joint cgf argument outside the domain of " +
                      describe());
  switch (impl_->kind) {
    case Kind::kGaussian:
      return jc_gaussian(impl_->param, x, y);
    case Kind::kLaplace:
      return (y == 0.0) ? cgf(x) : jc_laplace(impl_->param, x, y);
    case Kind::kUniform:
      return (y == 0.0) ? cgf(x) : jc_uniform(impl_->param, x, y);
    case Kind::kBinary: {
      const double z0 = impl_->param;
      return y * z0 * z0 + log_cosh(x * z0);
    }
    case Kind::kSum:
      break;
  }
  if (y == 0.0) return cgf(x);

  const NoiseModel left(impl_->left);
  const NoiseModel right(impl_->right);
  // Binary components mix in closed form over their two support points.
  if (impl_->right->kind == Kind::kBinary || impl_->left->kind == Kind::kBinary) {
    const bool right_binary = impl_->right->kind == Kind::kBinary;
    const NoiseModel& other = right_binary ? left : right;
    const double z0 = (right_binary ? impl_->right : impl_->left)->param;
    const double lp = x * z0 + other.joint_cgf(x + 2.0 * y * z0, y);
    const double lm = -x * z0 + other.joint_cgf(x - 2.0 * y * z0, y);
    return y * z0 * z0 - kLn2 + log_add_exp(lp, lm);
  }
  if (has_primitive_density(*impl_->right) || has_primitive_density(*impl_->left)) {
    const bool over_right = has_primitive_density(*impl_->right);
    const NoiseModel& other = over_right ? left : right;
    const Impl& dens = *(over_right ? impl_->right : impl_->left);
    auto h = [&](double z) {
      return log_density(dens, z) + x * z + y * z * z +
             other.joint_cgf(x + 2.0 * y * z, y);
    };
    double lo = 0.0, hi = 0.0;
    if (dens.kind == Kind::kUniform) {
      lo = -dens.param;
      hi = dens.param;
    } else {
      double span = 8.0 * std::sqrt(NoiseModel(
          std::make_shared<const Impl>(dens)).variance());
      for (int iter = 0;; ++iter) {
        double peak = -kInf;
        for (int i = 0; i <= 256; ++i)
          peak = std::max(peak, h(-span + 2.0 * span * i / 256.0));
        if (h(-span) < peak - 50.0 && h(span) < peak - 50.0) break;
        if (iter > 60)
          throw OverflowRangeError(
              "joint cgf quadrature failed to localize for " + describe());
        span *= 2.0;
      }
      lo = -span;
      hi = span;
    }
    double m = -kInf;
    for (int i = 0; i <= 256; ++i)
      m = std::max(m, h(lo + (hi - lo) * i / 256.0));
    const double integral = Quad::integrate(
        [&](double z) { return std::exp(h(z) - m); }, lo, hi, 15, 1e-13);
    return m + std::log(integral);
  }
  // Neither side directly integrable: rebalance Sum(Sum(a, b), r) into
  // Sum(a, Sum(b, r)) until a closed-form or density component surfaces.
  if (impl_->left->kind == Kind::kSum) {
    const NoiseModel a(impl_->left->left);
    const NoiseModel b(impl_->left->right);
    return NoiseModel::sum(a, NoiseModel::sum(b, right)).joint_cgf(x, y);
  }
  const NoiseModel a(impl_->right->left);
  const NoiseModel b(impl_->right->right);
  return NoiseModel::sum(NoiseModel::sum(left, a), b).joint_cgf(x, y);
}

double NoiseModel::joint_cgf_dx(double x, double y) const {
  if (!joint_in_domain(x, y))
    throw DomainError("joint cgf argument outside the domain of " +
                      describe());
  switch (impl_->kind) {
    case Kind::kGaussian:
      return jc_gaussian_dx(impl_->param, x, y);
    case Kind::kLaplace:
      return (y == 0.0) ? cgf_deriv(x) : jc_laplace_dx(impl_->param, x, y);
    case Kind::kUniform:
      return (y == 0.0) ? cgf_deriv(x) : jc_uniform_dx(impl_->param, x, y);
    case Kind::kBinary:
      return impl_->param * std::tanh(x * impl_->param);
    case Kind::kSum:
      break;
  }
  if (y == 0.0) return cgf_deriv(x);

  const NoiseModel left(impl_->left);
  const NoiseModel right(impl_->right);
  if (impl_->right->kind == Kind::kBinary || impl_->left->kind == Kind::kBinary) {
    const bool right_binary = impl_->right->kind == Kind::kBinary;
    const NoiseModel& other = right_binary ? left : right;
    const double z0 = (right_binary ? impl_->right : impl_->left)->param;
    const double lp = x * z0 + other.joint_cgf(x + 2.0 * y * z0, y);
    const double lm = -x * z0 + other.joint_cgf(x - 2.0 * y * z0, y);
    const double m = std::max(lp, lm);
    const double ep = std::exp(lp - m);
    const double em = std::exp(lm - m);
    const double dp = z0 + other.joint_cgf_dx(x + 2.0 * y * z0, y);
    const double dm = -z0 + other.joint_cgf_dx(x - 2.0 * y * z0, y);
    return (ep * dp + em * dm) / (ep + em);
  }
  if (has_primitive_density(*impl_->right) || has_primitive_density(*impl_->left)) {
    const bool over_right = has_primitive_density(*impl_->right);
    const NoiseModel& other = over_right ? left : right;
    const Impl& dens = *(over_right ? impl_->right : impl_->left);
    auto h = [&](double z) {
      return log_density(dens, z) + x * z + y * z * z +
             other.joint_cgf(x + 2.0 * y * z, y);
    };
    double lo = 0.0, hi = 0.0;
    if (dens.kind == Kind::kUniform) {
      lo = -dens.param;
      hi = dens.param;
    } else {
      double span = 8.0 * std::sqrt(NoiseModel(
          std::make_shared<const Impl>(dens)).variance());
      for (int iter = 0;; ++iter) {
        double peak = -kInf;
        for (int i = 0; i <= 256; ++i)
          peak = std::max(peak, h(-span + 2.0 * span * i / 256.0));
        if (h(-span) < peak - 50.0 && h(span) < peak - 50.0) break;
        if (iter > 60)
          throw OverflowRangeError(
              "joint cgf quadrature failed to localize for " + describe());
        span *= 2.0;
      }
      lo = -span;
      hi = span;
    }
    double m = -kInf;
    for (int i = 0; i <= 256; ++i)
      m = std::max(m, h(lo + (hi - lo) * i / 256.0));
    const double denom = Quad::integrate(
        [&](double z) { return std::exp(h(z) - m); }, lo, hi, 15, 1e-13);
    const double numer = Quad::integrate(
        [&](double z) {
          return (z + other.joint_cgf_dx(x + 2.0 * y * z, y)) *
                 std::exp(h(z) - m);
        },
        lo, hi, 15, 1e-13);
    return numer / denom;
  }
  if (impl_->left->kind == Kind::kSum) {
    const NoiseModel a(impl_->left->left);
    const NoiseModel b(impl_->left->right);
    return NoiseModel::sum(a, NoiseModel::sum(b, right)).joint_cgf_dx(x, y);
  }
  const NoiseModel a(impl_->right->left);
  const NoiseModel b(impl_->right->right);
  return NoiseModel::sum(NoiseModel::sum(left, a), b).joint_cgf_dx(x, y);
}

namespace {

void fill_samples(const NoiseModel::Impl& impl, double* out, std::size_t n,
                  std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  switch (impl.kind) {
    case Kind::kGaussian: {
      const double sd = std::sqrt(impl.param);
      std::size_t i = 0;
      while (i + 1 < n) {
        const double u1 = 1.0 - uniform01(gen);  // (0, 1]: keeps log finite
        const double u2 = uniform01(gen);
        const double r = sd * std::sqrt(-2.0 * std::log(u1));
        out[i++] = r * std::cos(2.0 * kPi * u2);
        out[i++] = r * std::sin(2.0 * kPi * u2);
      }
      if (i < n) {
        const double u1 = 1.0 - uniform01(gen);
        const double u2 = uniform01(gen);
        out[i] = sd * std::sqrt(-2.0 * std::log(u1)) *
                 std::cos(2.0 * kPi * u2);
      }
      return;
    }
    case Kind::kLaplace: {
      const double q = impl.param;
      for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform01(gen) - 0.5;
        const double mag = -std::log1p(-2.0 * std::abs(u)) / q;
        out[i] = (u < 0.0) ? -mag : mag;
      }
      return;
    }
    case Kind::kUniform: {
      const double b = impl.param;
      for (std::size_t i = 0; i < n; ++i)
        out[i] = (2.0 * uniform01(gen) - 1.0) * b;
      return;
    }
    case Kind::kBinary: {
      const double z0 = impl.param;
      for (std::size_t i = 0; i < n; ++i)
        out[i] = (gen() >> 63) ? z0 : -z0;
      return;
    }
    case Kind::kSum: {
      fill_samples(*impl.left, out, n, derive_stream_seed(seed, 1));
      std::vector<double> tmp(n);
      fill_samples(*impl.right, tmp.data(), n, derive_stream_seed(seed, 2));
      for (std::size_t i = 0; i < n; ++i) out[i] += tmp[i];
      return;
    }
  }
}

}  // namespace

std::vector<double> NoiseModel::sample(std::size_t n,
                                       std::uint64_t seed) const {
  std::vector<double> out(n);
  fill_samples(*impl_, out.data(), n, seed);
  return out;
}

void NoiseModel::sample_into(std::size_t n, std::uint64_t seed,
                             double* out) const {
  fill_samples(*impl_, out, n, seed);
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case Kind::kGaussian:
      os << "gaussian(variance=" << impl_->param << ")";
      break;
    case Kind::kLaplace:
      os << "laplace(scale=" << impl_->param << ")";
      break;
    case Kind::kUniform:
      os << "uniform(half_width=" << impl_->param << ")";
      break;
    case Kind::kBinary:
      os << "binary(magnitude=" << impl_->param << ")";
      break;
    case Kind::kSum:
      os << "sum(" << NoiseModel(impl_->left).describe() << ", "
         << NoiseModel(impl_->right).describe() << ")";
      break;
  }
  return os.str();
}

}  // namespace chdet
