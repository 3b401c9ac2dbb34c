// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Distribution-design linear programs and a small dense solver.  The
// builders assemble the weight-distribution LPs that arise when the
// detector-design problems are restricted to a symmetric grid of levels; the
// solver returns vertex (basic) optima so sparsity claims can be certified.

#pragma once

#include <vector>

#include "core/noise.hpp"
#include "core/types.hpp"

namespace chdet {

// LP over a symmetric weight grid for the plain correlator: choose the
// weight distribution p (one entry per grid level) minimizing the expected
// H1 tilt cost
//   sum_i p_i * C_V(lambda * w_i)
// subject to the FA-side budget row sum_i p_i * C_N(alpha * w_i) =
// alpha*theta - P_target, the second-moment row sum_i p_i * w_i^2 =
// var_target, and normalization.
LPInstance build_lp_linear(const std::vector<double>& grid_w, double alpha,
                           double theta, double P_target, double var_target,
                           const NoiseModel& noise_n, double lambda,
                           const NoiseModel& noise_v);

// LP over the product grid (weights x signal levels) for the
// correlation+energy detector.  Variables are joint atoms laid out
// signal-major: the block for signal level s_j lists all weight levels in
// grid order.  Rows: FA-side tilt cost sum p_ij * C~_N(alpha w_i,
// alpha*gamma) = C_target - alpha*theta, signal power sum p_ij * s_j^2 =
// P_target, and normalization.  The objective reuses the FA tilt cost
// coefficients.
LPInstance build_lp_energy(const std::vector<double>& grid_w,
                           const std::vector<double>& grid_s, double alpha,
                           double gamma, double theta, double C_target,
                           double P_target, const NoiseModel& noise_n);

// Dense two-phase primal simplex with Bland's anti-cycling rule.  Returns a
// vertex optimum (at most `rows` nonzero values) or the infeasible/unbounded
// status.
LPSolution simplex_solve(const LPInstance& lp);

// Exhaustive reference solver for small instances: tries every support of
// size at most `rows` and keeps the best feasible one.  Intended as an
// independent check of simplex_solve on instances with few columns.
LPSolution enumerate_solve(const LPInstance& lp);

// Averages each entry with its mirror under the level map w -> -w (for the
// product grid, (w, s) -> (-w, -s)), which is entry i <-> entry N-1-i for
// the builders' layouts.  For instances built from even functions this
// preserves the objective and every constraint row.
std::vector<double> symmetrize(const std::vector<double>& values);

}  // namespace chdet
