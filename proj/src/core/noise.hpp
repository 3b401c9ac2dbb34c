// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Zero-mean symmetric noise models with closed-form cumulant generating
// functions (CGFs), joint CGFs of (X, X^2), their first derivatives,
// finiteness domains, and exact sampling.  The sum model V = N + Z composes
// two independent components.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/specfun.hpp"

namespace chdet {

class NoiseModel {
 public:
  // Normal with the given variance.
  static NoiseModel gaussian(double variance);
  // Two-sided exponential with density (scale/2) * exp(-scale*|x|);
  // variance 2/scale^2.
  static NoiseModel laplace(double scale);
  // Uniform on [-half_width, half_width].
  static NoiseModel uniform(double half_width);
  // Two-point distribution at +-magnitude with equal probability.
  static NoiseModel binary_symmetric(double magnitude);
  // Independent sum of two components.
  static NoiseModel sum(const NoiseModel& left, const NoiseModel& right);

  // ln E[exp(v X)].  Throws DomainError outside cgf_domain().
  double cgf(double v) const;
  // d/dv of cgf.
  double cgf_deriv(double v) const;
  // ln E[exp(x X + y X^2)].  Throws DomainError when (x, y) is not
  // admissible (see joint_in_domain).
  double joint_cgf(double x, double y) const;
  // Partial derivative of joint_cgf with respect to x.
  double joint_cgf_dx(double x, double y) const;

  // Open interval of finite cgf evaluation.
  EvalDomain cgf_domain() const;
  // Supremum of admissible y in joint_cgf: +inf for bounded support, 0 when
  // the tails are exponential (only y <= 0 converges), 1/(2 sigma^2) for
  // Gaussian tails.  The supremum itself is excluded unless it is 0 or +inf.
  double joint_y_max() const;
  bool joint_in_domain(double x, double y) const;

  double variance() const;
  // Supremum of the support (+inf when unbounded).
  double support_sup() const;

  // n i.i.d. draws, deterministic for a given seed.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;
  // Same draws written into caller-owned storage (hot Monte Carlo loops).
  void sample_into(std::size_t n, std::uint64_t seed, double* out) const;

  std::string describe() const;

  struct Impl;  // defined in noise.cpp

 private:
  explicit NoiseModel(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace chdet
