// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Optimal correlator weights for a fixed signal distribution.  At the
// optimum, each signal level s receives the weight w solving the
// stationarity equation g~(w, s) = s, where
//   g~(w, s) = C~_Vx(lambda w + 2 lambda gamma s, -lambda gamma)
//            + (alpha phi / lambda) C~_Nx(alpha w, alpha gamma),
// phi being the multiplier of the false-alarm constraint.  The outer layers
// maximize over the Chernoff parameters and tie the threshold to the FA
// budget e0.

#pragma once

#include "core/noise.hpp"
#include "core/types.hpp"

namespace chdet {

// Parameters of the stationarity map.  lambda must be positive wherever the
// map is evaluated (it divides the FA-side term).
struct StationarityParams {
  double alpha = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;
};

// Correlation-only stationarity map (no energy term):
//   g(w) = C'_V(lambda w) + (phi alpha / lambda) C'_N(alpha w).
// Strictly increasing in w; odd; g(0) = 0.
double g(double w, const StationarityParams& p, const NoiseModel& noise_v,
         const NoiseModel& noise_n);

// Correlation+energy stationarity map; reduces to g when gamma == 0.
double g_tilde(double w, double s, const StationarityParams& p,
               const NoiseModel& noise_v, const NoiseModel& noise_n);

// Solves g_tilde(w, s) = target for w by bisection on the monotone map, to
// |g_tilde - target| <= 1e-10 (1 + |target|).  Throws OutOfRangeError when
// the target lies beyond the map's range on the admissible weight interval.
double g_inverse(double target, double s, const StationarityParams& p,
                 const NoiseModel& noise_v, const NoiseModel& noise_n);

// Multiplier of the FA constraint at fixed (alpha, lambda, gamma): the
// phi >= 0 for which the weights w(s) = g_tilde^{-1}(s) spend the FA budget
// exactly, E[C~_N(alpha W, alpha gamma)] = alpha theta - e0.  Returns 0 when
// the constraint is already slack at phi = 0 or when no nonnegative root
// exists.
double solve_phi(const DiscreteJointPMF& signal, double alpha, double lambda,
                 double gamma, double e0, double theta,
                 const NoiseModel& noise_v, const NoiseModel& noise_n);

struct WeightsResult {
  DetectorSpec design;
  ExponentPoint point;
};

// Best correlation(+energy) detector for the given signal marginal and FA
// budget e0: weights from the stationarity map, threshold from theta_for_e0
// (the budget is spent exactly), Chernoff parameters from nested 1-D
// searches.  gamma is held fixed (0 recovers the pure correlator).
WeightsResult optimal_weights(const DiscreteJointPMF& signal, double e0,
                              double gamma, const NoiseModel& noise_v,
                              const NoiseModel& noise_n);

// Same optimization at an externally fixed threshold: maximizes the MD
// exponent subject to the FA exponent at parameter alpha meeting e0, using
// solve_phi inside.  Throws InfeasibleError when no Chernoff parameter can
// satisfy the FA constraint at this threshold.
WeightsResult optimal_weights_at_theta(const DiscreteJointPMF& signal,
                                       double e0, double theta, double gamma,
                                       const NoiseModel& noise_v,
                                       const NoiseModel& noise_n);

}  // namespace chdet
