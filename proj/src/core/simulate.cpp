// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace chdet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMinHits = 10;
constexpr std::size_t kChunk = 4096;  // trials claimed per worker grab

// One atom's role in a trial: `count` observations sharing the same weight
// and signal level.  Atoms that cannot move the statistic (w = 0 with no
// energy term) are dropped before the hot loop.
struct AtomGroup {
  double w = 0.0;
  double s = 0.0;
  std::size_t count = 0;
};

struct TrialPlan {
  std::vector<AtomGroup> groups;
  std::size_t draws_per_trial = 0;  // total noise samples consumed per block
  double gamma = 0.0;
  double threshold = 0.0;  // n * theta
};

TrialPlan build_plan(const DetectorSpec& design, std::size_t n,
                     Hypothesis hypothesis) {
  const std::vector<std::size_t> counts = realize_counts(design.pmf, n);
  TrialPlan plan;
  plan.gamma = design.gamma;
  plan.threshold = static_cast<double>(n) * design.theta;
  const auto& atoms = design.pmf.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (counts[i] == 0) continue;
    AtomGroup g;
    g.w = atoms[i].w;
    g.s = (hypothesis == Hypothesis::kSignal) ? atoms[i].s : 0.0;
    g.count = counts[i];
    // With gamma = 0 a zero-weight sample contributes exactly 0 regardless
    // of the draw, under the null; under the alternative the signal level
    // is also multiplied by w, so the same skip applies.
    if (design.gamma == 0.0 && g.w == 0.0) continue;
    plan.groups.push_back(g);
    plan.draws_per_trial += counts[i];
  }
  return plan;
}

double trial_statistic(const TrialPlan& plan, const double* draws) {
  double t = 0.0;
  std::size_t k = 0;
  for (const AtomGroup& g : plan.groups) {
    if (plan.gamma == 0.0) {
      double acc = 0.0;
      for (std::size_t c = 0; c < g.count; ++c) acc += g.s + draws[k++];
      t += g.w * acc;
    } else {
      for (std::size_t c = 0; c < g.count; ++c) {
        const double y = g.s + draws[k++];
        t += g.w * y + plan.gamma * y * y;
      }
    }
  }
  return t;
}

TrialEstimate finalize(std::size_t trials, std::size_t hits) {
  TrialEstimate est;
  est.trials = trials;
  est.hits = hits;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error =
      std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  est.insufficient_hits = hits < kMinHits;
  return est;
}

double empirical_exponent(const TrialEstimate& est, std::size_t n) {
  if (est.hits == 0) return kInf;
  return -std::log(est.p_hat) / static_cast<double>(n);
}

}  // namespace

std::vector<std::size_t> realize_counts(const DiscreteJointPMF& pmf,
                                        std::size_t n) {
  if (n == 0) throw InvalidArgumentError("block length must be positive");
  const auto& atoms = pmf.atoms();
  std::vector<std::size_t> counts(atoms.size(), 0);
  long long assigned = 0;
  std::ptrdiff_t silent = -1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const long long c =
        std::llround(static_cast<double>(n) * atoms[i].prob);
    counts[i] = static_cast<std::size_t>(c);
    assigned += c;
    if (atoms[i].w == 0.0 && atoms[i].s == 0.0 && silent < 0)
      silent = static_cast<std::ptrdiff_t>(i);
  }
  const long long remainder = static_cast<long long>(n) - assigned;
  if (remainder != 0) {
    if (silent < 0)
      throw InvalidArrangementError(
          "atom frequencies do not fit the block length and there is no "
          "silent atom to absorb the rounding remainder");
    const long long adjusted =
        static_cast<long long>(counts[static_cast<std::size_t>(silent)]) +
        remainder;
    if (adjusted < 0)
      throw InvalidArrangementError(
          "rounding remainder exceeds the silent atom's share of the block");
    counts[static_cast<std::size_t>(silent)] =
        static_cast<std::size_t>(adjusted);
  }
  return counts;
}

TrialEstimate run_detector_trials(const DetectorSpec& design, std::size_t n,
                                  std::size_t trials, Hypothesis hypothesis,
                                  const NoiseModel& noise_v,
                                  const NoiseModel& noise_n,
                                  std::uint64_t seed) {
  if (trials == 0) throw InvalidArgumentError("trial count must be positive");
  design.pmf.validate();
  const TrialPlan plan = build_plan(design, n, hypothesis);
  const NoiseModel& noise =
      (hypothesis == Hypothesis::kSignal) ? noise_v : noise_n;

  const std::size_t max_workers =
      std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(max_workers, (trials + kChunk - 1) / kChunk);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> total_hits{0};
  auto work = [&] {
    std::vector<double> buf(plan.draws_per_trial);
    std::size_t local_hits = 0;
    for (;;) {
      const std::size_t lo = next.fetch_add(kChunk);
      if (lo >= trials) break;
      const std::size_t hi = std::min(trials, lo + kChunk);
      for (std::size_t t = lo; t < hi; ++t) {
        double stat = 0.0;
        if (plan.draws_per_trial > 0) {
          noise.sample_into(plan.draws_per_trial,
                            derive_stream_seed(seed, t), buf.data());
          stat = trial_statistic(plan, buf.data());
        }
        const bool error_event = (hypothesis == Hypothesis::kNull)
                                     ? (stat >= plan.threshold)
                                     : (stat < plan.threshold);
        if (error_event) ++local_hits;
      }
    }
    total_hits.fetch_add(local_hits);
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return finalize(trials, total_hits.load());
}

SimReport simulate_design(const DetectorSpec& design,
                          const ExponentPoint& predicted, std::size_t n,
                          std::size_t trials, const NoiseModel& noise_v,
                          const NoiseModel& noise_n, std::uint64_t seed) {
  const TrialEstimate fa =
      run_detector_trials(design, n, trials, Hypothesis::kNull, noise_v,
                          noise_n, derive_stream_seed(seed, 1));
  const TrialEstimate md =
      run_detector_trials(design, n, trials, Hypothesis::kSignal, noise_v,
                          noise_n, derive_stream_seed(seed, 2));
  SimReport report;
  report.n = n;
  report.trials = trials;
  report.p_fa_hat = fa.p_hat;
  report.p_fa_stderr = fa.std_error;
  report.p_md_hat = md.p_hat;
  report.p_md_stderr = md.std_error;
  report.empirical_efa = empirical_exponent(fa, n);
  report.empirical_emd = empirical_exponent(md, n);
  report.fa_insufficient_hits = fa.insufficient_hits;
  report.md_insufficient_hits = md.insufficient_hits;
  report.predicted = predicted;
  return report;
}

std::vector<ConvergencePoint> exponent_convergence(
    const DetectorSpec& design, const NoiseModel& noise_v,
    const NoiseModel& noise_n, const std::vector<std::size_t>& n_grid,
    std::size_t trials_per_n, std::uint64_t seed) {
  std::vector<ConvergencePoint> out;
  out.reserve(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const std::uint64_t point_seed = derive_stream_seed(seed, 0x1000 + i);
    ConvergencePoint cp;
    cp.n = n_grid[i];
    cp.fa = run_detector_trials(design, cp.n, trials_per_n, Hypothesis::kNull,
                                noise_v, noise_n,
                                derive_stream_seed(point_seed, 1));
    cp.md = run_detector_trials(design, cp.n, trials_per_n,
                                Hypothesis::kSignal, noise_v, noise_n,
                                derive_stream_seed(point_seed, 2));
    cp.empirical_efa = empirical_exponent(cp.fa, cp.n);
    cp.empirical_emd = empirical_exponent(cp.md, cp.n);
    out.push_back(cp);
  }
  return out;
}

}  // namespace chdet
