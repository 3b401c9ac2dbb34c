// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Chernoff-bound error exponents of the per-sample statistic
//   T = sum_t (w_t Y_t + gamma Y_t^2),  decide H1 when T >= n * theta.
// Under H0 the samples are pure noise N; under H1 they are s_t + V.  The
// false-alarm and missed-detection exponents are suprema over the Chernoff
// parameters alpha and lambda of linear combinations of (joint) CGFs.

#pragma once

#include "core/noise.hpp"
#include "core/types.hpp"

namespace chdet {

// False-alarm exponent at a fixed Chernoff parameter:
//   alpha * theta - E[C~_N(alpha W, alpha gamma)].
// Requires alpha >= 0 and all CGF arguments inside the domain.
double efa_at(const DetectorSpec& spec, const NoiseModel& noise_n,
              double alpha);

// Supremum of efa_at over alpha >= 0.  Returns {value, alpha_star}; the value
// is +infinity when the threshold exceeds the essential supremum of the
// statistic under H0 (no false alarm is possible at any block length).
SupResult efa(const DetectorSpec& spec, const NoiseModel& noise_n);

// Missed-detection exponent at a fixed Chernoff parameter:
//   E[lambda (W S + gamma S^2 - theta) - C~_V(lambda W + 2 lambda gamma S,
//                                             -lambda gamma)].
double emd_at(const DetectorSpec& spec, const NoiseModel& noise_v,
              double lambda);

// Supremum of emd_at over lambda >= 0.  Returns {value, lambda_star}; the
// value is +infinity when the threshold sits below the essential infimum of
// the statistic under H1.
SupResult emd(const DetectorSpec& spec, const NoiseModel& noise_v);

// Smallest threshold guaranteeing a false-alarm exponent of at least e0:
//   inf over alpha > 0 of (1/alpha) * (e0 + E[C~_N(alpha W, alpha gamma)]).
// Returns {theta, alpha_star}.  By convex duality, efa at the returned
// threshold equals e0 (the FA budget is spent exactly, leaving the smallest
// possible threshold and hence the best MD exponent).
SupResult theta_for_e0(const DiscreteJointPMF& weights, double gamma,
                       const NoiseModel& noise_n, double e0);

}  // namespace chdet
