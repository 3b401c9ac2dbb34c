// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Small value types shared across the library: discrete (weight, signal)
// distributions, detector descriptions, and result records.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace chdet {

// One support point of a finite joint distribution of (W, S): a correlator
// weight w paired with a signal level s, carried with probability prob.
struct Atom {
  double w = 0.0;
  double s = 0.0;
  double prob = 0.0;
};

// Finite joint probability mass function of (W, S).  Probabilities must be
// nonnegative and sum to one (within 1e-12).
class DiscreteJointPMF {
 public:
  DiscreteJointPMF() = default;
  explicit DiscreteJointPMF(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    validate();
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // Sum of prob * f(w, s) over the support.
  template <typename F>
  double expect(F&& f) const {
    double acc = 0.0;
    for (const Atom& a : atoms_) acc += a.prob * f(a.w, a.s);
    return acc;
  }

  double second_moment_w() const {
    return expect([](double w, double) { return w * w; });
  }
  double second_moment_s() const {
    return expect([](double, double s) { return s * s; });
  }
  double correlation() const {
    return expect([](double w, double s) { return w * s; });
  }

  // True when every atom has w == 0 (the detector statistic would be
  // identically zero for gamma == 0).
  bool weights_all_zero() const {
    for (const Atom& a : atoms_)
      if (a.w != 0.0) return false;
    return true;
  }

  // Marginal over s only: atoms with w dropped (w set to 0).
  DiscreteJointPMF signal_marginal() const {
    std::vector<Atom> out;
    out.reserve(atoms_.size());
    for (const Atom& a : atoms_) out.push_back({0.0, a.s, a.prob});
    return DiscreteJointPMF(std::move(out));
  }

  void validate() const {
    if (atoms_.empty())
      throw InvalidArgumentError("distribution must have at least one atom");
    double total = 0.0;
    for (const Atom& a : atoms_) {
      if (!(a.prob >= 0.0))
        throw InvalidArgumentError("atom probabilities must be nonnegative");
      if (!std::isfinite(a.w) || !std::isfinite(a.s))
        throw InvalidArgumentError("atom levels must be finite");
      total += a.prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw InvalidArgumentError("atom probabilities must sum to one");
  }

 private:
  std::vector<Atom> atoms_;
};

// A detector: the (W, S) distribution of its weight/signal pairs, the energy
// coefficient gamma (>= 0; 0 means plain correlation), and the per-sample
// threshold theta.  The full-block threshold is n * theta.
struct DetectorSpec {
  DiscreteJointPMF pmf;
  double gamma = 0.0;
  double theta = 0.0;
};

// One point of the false-alarm / missed-detection trade-off curve together
// with the optimizing parameters that achieved it.
struct ExponentPoint {
  double e0 = 0.0;           // false-alarm exponent budget
  double e_fa = 0.0;         // achieved FA exponent
  double e_md = 0.0;         // achieved MD exponent
  double alpha_star = 0.0;   // FA Chernoff parameter at the optimum
  double lambda_star = 0.0;  // MD Chernoff parameter at the optimum
  double gamma_star = 0.0;   // energy coefficient at the optimum
  double theta_star = 0.0;   // per-sample threshold at the optimum
  DetectorSpec design;
};

// Balanced ternary design: levels +-w with probability p each, 0 with
// probability 1 - 2p, and signal levels +-s aligned in sign with w.
struct TernaryDesign {
  double p = 0.0;      // duty cycle of each nonzero level, in [0, 1/2]
  double w = 0.0;      // correlator level (> 0)
  double s = 0.0;      // signal level (> 0)
  double gamma = 0.0;  // energy coefficient (>= 0)
  double theta = 0.0;  // per-sample threshold

  DetectorSpec to_detector() const {
    std::vector<Atom> atoms;
    if (p > 0.0) atoms.push_back({-w, -s, p});
    if (1.0 - 2.0 * p > 1e-15) atoms.push_back({0.0, 0.0, 1.0 - 2.0 * p});
    if (p > 0.0) atoms.push_back({w, s, p});
    DetectorSpec spec;
    spec.pmf = DiscreteJointPMF(std::move(atoms));
    spec.gamma = gamma;
    spec.theta = theta;
    return spec;
  }
};

// Result of a 1-D supremum search: the best value and its argument.
struct SupResult {
  double value = 0.0;
  double arg = 0.0;
};

// Monte Carlo estimate of the two error probabilities at block length n,
// with binomial standard errors and the matching empirical exponents.
struct SimReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  double p_fa_hat = 0.0;
  double p_fa_stderr = 0.0;
  double p_md_hat = 0.0;
  double p_md_stderr = 0.0;
  double empirical_efa = 0.0;  // -ln(p_fa_hat) / n
  double empirical_emd = 0.0;
  bool fa_insufficient_hits = false;  // fewer than 10 false alarms observed
  bool md_insufficient_hits = false;
  ExponentPoint predicted;
};

// Standard-form linear program: minimize cost . p subject to
// constraints * p = rhs, p >= 0.  The constraint matrix is stored row-major.
struct LPInstance {
  std::vector<double> cost;
  std::vector<double> constraints;  // rows * cols, row-major
  std::vector<double> rhs;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double at(std::size_t r, std::size_t c) const {
    return constraints[r * cols + c];
  }
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

struct LPSolution {
  std::vector<double> values;
  double objective = 0.0;
  std::vector<std::size_t> basis;
  LPStatus status = LPStatus::kOptimal;
};

inline const char* lp_status_name(LPStatus s) {
  switch (s) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

}  // namespace chdet
