// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#include "core/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "core/errors.hpp"

namespace chdet {

namespace {

constexpr double kFeasTol = 1e-8;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;

void require_symmetric_grid(const std::vector<double>& grid) {
  const std::size_t k = grid.size();
  if (k < 3 || k % 2 == 0)
    throw InvalidArgumentError(
        "level grid must have odd cardinality of at least 3");
  for (std::size_t i = 0; i < k; ++i)
    if (std::abs(grid[i] + grid[k - 1 - i]) > 1e-12)
      throw InvalidArgumentError("level grid must be symmetric about zero");
}

}  // namespace

LPInstance build_lp_linear(const std::vector<double>& grid_w, double alpha,
                           double theta, double P_target, double var_target,
                           const NoiseModel& noise_n, double lambda,
                           const NoiseModel& noise_v) {
  require_symmetric_grid(grid_w);
  const std::size_t k = grid_w.size();
  LPInstance lp;
  lp.rows = 3;
  lp.cols = k;
  lp.cost.resize(k);
  lp.constraints.resize(3 * k);
  for (std::size_t i = 0; i < k; ++i) {
    lp.cost[i] = noise_v.cgf(lambda * grid_w[i]);
    lp.constraints[0 * k + i] = noise_n.cgf(alpha * grid_w[i]);
    lp.constraints[1 * k + i] = grid_w[i] * grid_w[i];
    lp.constraints[2 * k + i] = 1.0;
  }
  lp.rhs = {alpha * theta - P_target, var_target, 1.0};
  return lp;
}

LPInstance build_lp_energy(const std::vector<double>& grid_w,
                           const std::vector<double>& grid_s, double alpha,
                           double gamma, double theta, double C_target,
                           double P_target, const NoiseModel& noise_n) {
  require_symmetric_grid(grid_w);
  require_symmetric_grid(grid_s);
  const std::size_t kw = grid_w.size(), ks = grid_s.size();
  const std::size_t n = kw * ks;
  std::vector<double> tilt(kw);
  for (std::size_t i = 0; i < kw; ++i)
    tilt[i] = noise_n.joint_cgf(alpha * grid_w[i], alpha * gamma);
  LPInstance lp;
  lp.rows = 3;
  lp.cols = n;
  lp.cost.resize(n);
  lp.constraints.resize(3 * n);
  for (std::size_t j = 0; j < ks; ++j) {
    for (std::size_t i = 0; i < kw; ++i) {
      const std::size_t col = j * kw + i;  // signal-major layout
      lp.cost[col] = tilt[i];
      lp.constraints[0 * n + col] = tilt[i];
      lp.constraints[1 * n + col] = grid_s[j] * grid_s[j];
      lp.constraints[2 * n + col] = 1.0;
    }
  }
  lp.rhs = {C_target - alpha * theta, P_target, 1.0};
  return lp;
}

LPSolution simplex_solve(const LPInstance& lp) {
  const std::size_t m = lp.rows, n = lp.cols;
  const std::size_t width = n + m + 1;  // original + artificial + rhs
  const std::size_t rhs_col = n + m;
  std::vector<double> t(m * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return t[r * width + c];
  };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double flip = lp.rhs[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) at(r, c) = flip * lp.at(r, c);
    at(r, n + r) = 1.0;
    at(r, rhs_col) = flip * lp.rhs[r];
    basis[r] = n + r;
  }

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    const double piv = at(pr, pc);
    for (std::size_t c = 0; c < width; ++c) at(pr, c) /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  };

  // One simplex phase under the given per-column cost; columns at index >=
  // bar_from may not enter the basis.  Returns false when unbounded.
  auto run_phase = [&](const std::vector<double>& cost, std::size_t bar_from) {
    for (int iter = 0; iter < 20000; ++iter) {
      // Price out: reduced cost of column j under the current basis.
      std::size_t enter = width;  // sentinel
      for (std::size_t j = 0; j < bar_from; ++j) {
        double red = cost[j];
        for (std::size_t r = 0; r < m; ++r) red -= cost[basis[r]] * at(r, j);
        if (red < -kCostTol) {  // Bland: lowest improving index enters
          enter = j;
          break;
        }
      }
      if (enter == width) return true;  // optimal for this phase
      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        if (at(r, enter) <= kPivotTol) continue;
        const double ratio = at(r, rhs_col) / at(r, enter);
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 &&
             (leave == m || basis[r] < basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave == m) return false;  // improving ray
      pivot(leave, enter);
    }
    return true;  // iteration cap; treat current vertex as final
  };

  LPSolution sol;

  // Phase 1: drive the artificial variables to zero.
  std::vector<double> phase1_cost(n + m, 0.0);
  for (std::size_t j = n; j < n + m; ++j) phase1_cost[j] = 1.0;
  run_phase(phase1_cost, n + m);  // never unbounded: objective >= 0
  double infeas = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] >= n) infeas += at(r, rhs_col);
  if (infeas > kFeasTol) {
    sol.status = LPStatus::kInfeasible;
    return sol;
  }

  // Phase 2 with the true cost; artificial columns are barred from entering
  // (any still basic are stuck at level zero and harmless).
  std::vector<double> phase2_cost(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = lp.cost[j];
  if (!run_phase(phase2_cost, n)) {
    sol.status = LPStatus::kUnbounded;
    return sol;
  }

  sol.status = LPStatus::kOptimal;
  sol.values.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= n) continue;
    sol.values[basis[r]] = std::max(0.0, at(r, rhs_col));
    sol.basis.push_back(basis[r]);
  }
  std::sort(sol.basis.begin(), sol.basis.end());
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.cost[j] * sol.values[j];
  return sol;
}

LPSolution enumerate_solve(const LPInstance& lp) {
  const std::size_t m = lp.rows, n = lp.cols;
  if (m != 3)
    throw InvalidArgumentError(
        "the exhaustive reference solver expects exactly three rows");

  LPSolution best;
  best.status = LPStatus::kInfeasible;
  double best_cost = std::numeric_limits<double>::infinity();

  // Solves the 3 x s system restricted to `support` in the least-squares
  // sense and accepts it when it reproduces the rhs and is nonnegative.
  auto try_support = [&](const std::vector<std::size_t>& support) {
    const std::size_t s = support.size();
    // Normal equations G x = h with G = M^T M, h = M^T d.
    double G[9] = {0}, h[3] = {0};
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        double acc = 0.0;
        for (std::size_t r = 0; r < 3; ++r)
          acc += lp.at(r, support[a]) * lp.at(r, support[b]);
        G[a * s + b] = acc;
      }
      double acc = 0.0;
      for (std::size_t r = 0; r < 3; ++r) acc += lp.at(r, support[a]) * lp.rhs[r];
      h[a] = acc;
    }
    // Gaussian elimination with partial pivoting on the s x s system.
    double x[3] = {0};
    double A[9];
    std::copy(G, G + s * s, A);
    double rhs2[3];
    std::copy(h, h + s, rhs2);
    for (std::size_t col = 0; col < s; ++col) {
      std::size_t pr = col;
      for (std::size_t r = col + 1; r < s; ++r)
        if (std::abs(A[r * s + col]) > std::abs(A[pr * s + col])) pr = r;
      if (std::abs(A[pr * s + col]) < 1e-13) return;  // singular support
      if (pr != col) {
        for (std::size_t c = 0; c < s; ++c)
          std::swap(A[col * s + c], A[pr * s + c]);
        std::swap(rhs2[col], rhs2[pr]);
      }
      for (std::size_t r = col + 1; r < s; ++r) {
        const double f = A[r * s + col] / A[col * s + col];
        for (std::size_t c = col; c < s; ++c) A[r * s + c] -= f * A[col * s + c];
        rhs2[r] -= f * rhs2[col];
      }
    }
    for (std::size_t ri = s; ri-- > 0;) {
      double acc = rhs2[ri];
      for (std::size_t c = ri + 1; c < s; ++c) acc -= A[ri * s + c] * x[c];
      x[ri] = acc / A[ri * s + ri];
    }
    // Verify: nonnegative and the full rhs reproduced.
    for (std::size_t a = 0; a < s; ++a)
      if (x[a] < -1e-9) return;
    for (std::size_t r = 0; r < 3; ++r) {
      double acc = 0.0;
      for (std::size_t a = 0; a < s; ++a) acc += lp.at(r, support[a]) * x[a];
      if (std::abs(acc - lp.rhs[r]) > 1e-8 * (1.0 + std::abs(lp.rhs[r])))
        return;
    }
    double cost = 0.0;
    for (std::size_t a = 0; a < s; ++a)
      cost += lp.cost[support[a]] * std::max(0.0, x[a]);
    if (cost < best_cost) {
      best_cost = cost;
      best.status = LPStatus::kOptimal;
      best.values.assign(n, 0.0);
      best.basis = support;
      for (std::size_t a = 0; a < s; ++a)
        best.values[support[a]] = std::max(0.0, x[a]);
      best.objective = cost;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    try_support({i});
    for (std::size_t j = i + 1; j < n; ++j) {
      try_support({i, j});
      for (std::size_t l = j + 1; l < n; ++l) try_support({i, j, l});
    }
  }
  return best;
}

std::vector<double> symmetrize(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = 0.5 * (values[i] + values[n - 1 - i]);
  return out;
}

}  // namespace chdet
