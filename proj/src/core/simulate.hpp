// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Finite-length Monte Carlo validation of detector designs: draw length-n
// observation blocks under either hypothesis, apply the statistic
// sum_t(w_t y_t + gamma y_t^2) against the threshold n*theta, and estimate
// the error probabilities with binomial error bars.

#pragma once

#include <cstdint>
#include <vector>

#include "core/noise.hpp"
#include "core/types.hpp"

namespace chdet {

enum class Hypothesis {
  kNull,    // observations are plain noise N
  kSignal,  // observations are s_t plus the alternative-hypothesis noise V
};

// One hypothesis's share of a simulation: raw trial/hit counts plus the
// derived binomial estimate.  Fewer than 10 observed events flags the
// estimate as unreliable rather than pretending the exponent is known.
struct TrialEstimate {
  std::size_t trials = 0;
  std::size_t hits = 0;  // error events (false alarms or misses)
  double p_hat = 0.0;
  double std_error = 0.0;
  bool insufficient_hits = false;
};

// Deterministic per-atom sample counts realizing the design's frequencies at
// block length n: round(n * prob) for every atom, with the rounding
// remainder absorbed by the silent (w = 0, s = 0) atom.  Throws
// InvalidArrangementError when no silent atom can absorb a nonzero
// remainder, or absorption would drive a count negative.
std::vector<std::size_t> realize_counts(const DiscreteJointPMF& pmf,
                                        std::size_t n);

// Runs `trials` independent length-n blocks under the requested hypothesis
// and counts error events: statistic >= n*theta under the null, statistic <
// n*theta under the alternative.  Each trial draws from a seed derived from
// (seed, trial index), so results are identical across runs and across any
// partitioning of trials over worker threads.
TrialEstimate run_detector_trials(const DetectorSpec& design, std::size_t n,
                                  std::size_t trials, Hypothesis hypothesis,
                                  const NoiseModel& noise_v,
                                  const NoiseModel& noise_n,
                                  std::uint64_t seed);

// Both hypotheses with a shared master seed, folded into a report next to
// the analytical prediction.  Empirical exponents are -ln(p_hat)/n (infinite
// when no events were observed; check the insufficient-hits flags).
SimReport simulate_design(const DetectorSpec& design,
                          const ExponentPoint& predicted, std::size_t n,
                          std::size_t trials, const NoiseModel& noise_v,
                          const NoiseModel& noise_n, std::uint64_t seed);

struct ConvergencePoint {
  std::size_t n = 0;
  TrialEstimate fa;
  TrialEstimate md;
  double empirical_efa = 0.0;
  double empirical_emd = 0.0;
};

// Empirical exponents along a grid of block lengths.  The estimates sit
// above the asymptotic exponent (the bound's polynomial prefactor inflates
// -ln(p)/n by O(log(n)/n)) and drift down toward it as n grows.
std::vector<ConvergencePoint> exponent_convergence(
    const DetectorSpec& design, const NoiseModel& noise_v,
    const NoiseModel& noise_n, const std::vector<std::size_t>& n_grid,
    std::size_t trials_per_n, std::uint64_t seed);

}  // namespace chdet
