#pragma once

#include <optional>
#include <vector>

#include "robustggm/linalg.hpp"

namespace robustggm {

struct PenaltySpec {
  double rho = 0.0;
  bool penalize_diagonal = false;
};

struct GlassoOptions {
  /// Sweeps stop once the mean absolute change of the off-diagonal entries of
  /// W falls below tol * mean|S_ij| (i != j).
  double tol = 1e-5;
  int max_sweeps = 200;
  double inner_tol = 1e-10;
  int max_inner_iter = 1000;
  /// When false an exhausted sweep budget returns converged = false instead of
  /// throwing NonConvergence.
  bool throw_on_nonconvergence = true;
};

struct GlassoResult {
  SpdMatrix sigma_hat;  // W
  SpdMatrix theta_hat;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  /// Objective after every sweep.
  std::vector<double> objective_trace;
  /// Column j holds the lasso coefficients of block j; reused for warm starts.
  Matrix betas;
};

double soft_threshold(double x, double t);

/// Coordinate descent for min_b 1/2 b^T V b - s^T b + rho |b|_1, i.e. the
/// fixed point of b_j = T(s_j - sum_{k != j} V_kj b_k, rho) / V_jj.
/// Throws NonConvergence after max_iter full cycles.
Vector inner_lasso(const SpdMatrix& v_block, const Vector& s_col, double rho,
                   const Vector& beta_init, double tol = 1e-10, int max_iter = 1000);

/// Maximizes log det(Theta) - tr(S Theta) - rho * sum_{i != j} |theta_ij| by
/// block coordinate descent over the columns of W = Theta^{-1}. With
/// penalize_diagonal the diagonal is penalized as well.
GlassoResult glasso_fit(const SpdMatrix& s, const PenaltySpec& penalty,
                        const GlassoOptions& options = {},
                        const GlassoResult* warm = nullptr);

/// The objective glasso_fit maximizes, evaluated at theta. Returns -inf when
/// theta is not positive definite.
double glasso_objective(const SpdMatrix& s, const SpdMatrix& theta, const PenaltySpec& penalty);

/// Largest violation of the stationarity conditions W - S = rho * sign(Theta)
/// (with |W_ij - S_ij| <= rho where theta_ij == 0).
double kkt_residual(const SpdMatrix& s, const GlassoResult& result, const PenaltySpec& penalty);

}  // namespace robustggm
