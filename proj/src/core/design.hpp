// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Reduced detector/signal design problems for the worked configurations:
// four-level and balanced-ternary signalling against Laplace-plus-binary or
// uniform-plus-binary noise, with or without an energy term, plus trade-off
// curve sweeps.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/noise.hpp"
#include "core/types.hpp"

namespace chdet {

// Scalar constants shared by the worked configurations: signal amplitude a,
// Laplace scale q, binary interferer magnitude z0, uniform half-width B, and
// the signal power budget Ps for the joint problems.
struct DesignConfig {
  double a = 4.0;
  double q = 4.0;
  double z0 = 7.0;
  double B = 5.0;
  double Ps = 80.0;
};

enum class CurveMode {
  kLinearFixedSignal,  // four-level signal, correlator optimized
  kLinearJoint,        // ternary signal and correlator optimized jointly
  kEnergyFixedSignal,  // ternary signal, correlation+energy detector
  kEnergyJoint,        // ternary signal, detector, and energy weight jointly
  kClassical,          // four-level signal, weights proportional to it
};

// A request for one trade-off curve: FA exponent budgets (strictly
// increasing), the power budget for joint modes, and the problem family.
struct CurveRequest {
  std::vector<double> e0_grid;
  double Ps = 0.0;
  CurveMode mode = CurveMode::kLinearFixedSignal;
};

// Result of a joint design: the balanced-ternary description plus the
// achieved trade-off point.
struct JointResult {
  TernaryDesign ternary;
  ExponentPoint point;
};

// One sweep entry; when a point fails, ok is false and message holds the
// error text while the surrounding sweep continues.
struct SweepEntry {
  double e0 = 0.0;
  ExponentPoint point;
  bool ok = true;
  std::string message;
};

// Best miss exponent for the four-level signal {+-a, +-3a} (equiprobable)
// against H0 noise Laplace(q) and H1 noise Laplace(q) + BinarySymmetric(z0),
// at FA budget e0.  Weights keep the signal's symmetric four-level form
// {+-delta, +-beta}; the overall weight scale is immaterial, so delta is
// pinned to 1 and only the level ratio beta is optimized.  `classical` pins
// beta = 3 (weights proportional to the signal) instead.
ExponentPoint solve_example1(double e0, double a, double laplace_q, double z0,
                             bool classical);

// Jointly optimal balanced-ternary signal and correlator under the power
// budget 2 p s^2 <= P_s (met with equality) at FA budget e0.  The weight
// scale is pinned to w = 1; the duty cycle p is searched.
JointResult solve_joint_linear(double e0, double P_s, const NoiseModel& noise_v,
                               const NoiseModel& noise_n);

// Best correlation+energy detector for the balanced-ternary signal +-a (duty
// 1/2) against H0 noise Uniform(B) and H1 noise Uniform(B) +
// BinarySymmetric(z0).  The energy weight's scale folds into the weights, so
// only the slices gamma = 0 and gamma = 1 need solving; the better one wins.
ExponentPoint solve_example3_energy(double e0, double a, double B, double z0);

// Jointly optimal balanced-ternary signal, correlator, and energy weight
// under the power budget, at FA budget e0.  The weight scale is pinned to
// w = 1 and (gamma, p) are searched by multistart direct search, with the
// gamma = 0 boundary handled by the linear joint solver.
JointResult solve_joint_energy(double e0, double P_s, const NoiseModel& noise_v,
                               const NoiseModel& noise_n);

// Threshold against FA budget for the unit-weight ternary (duty 1/2)
// correlator in Uniform(B) noise: theta(e0) pairs, one per grid entry.  As
// e0 grows, theta climbs toward the no-false-alarm point B/2.
std::vector<std::pair<double, double>> threshold_curve(
    const std::vector<double>& e0_grid, double B);

// Evaluates a whole trade-off curve.  Points run independently (possibly
// concurrently); per-point failures are recorded in the entry rather than
// aborting the sweep.
std::vector<SweepEntry> sweep(const CurveRequest& request,
                              const DesignConfig& config);

}  // namespace chdet
