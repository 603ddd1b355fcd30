#pragma once

#include <optional>
#include <vector>

#include "robustggm/glasso.hpp"
#include "robustggm/linalg.hpp"
#include "robustggm/t_model.hpp"

namespace robustggm {

struct TlassoConfig {
  /// Multiplier of sum_{i<j} |theta_ij| in the penalized t log-likelihood.
  double rho = 0.0;
  double nu = 3.0;
  /// EM stops when the penalized log-likelihood changes by at most em_tol.
  double em_tol = 1e-5;
  int max_em_iter = 200;
  /// Convergence tolerance of the glasso M-step.
  double glasso_tol = 1e-7;
  bool throw_on_nonconvergence = true;

  void validate() const;
};

struct TlassoFit {
  Vector mu_hat;
  SpdMatrix theta_hat;
  SpdMatrix psi_hat;
  /// Final E-step weights, one per observation.
  LatentWeights weights;
  /// Per-cell weights E[tau_ij | Y] (alternative model only; empty otherwise).
  Matrix cell_weights;
  /// Per-observation E[sqrt(tau) sqrt(tau)^T | Y] (alternative model only).
  std::vector<Matrix> tau_products;
  std::vector<double> penalized_loglik_trace;
  /// max |theta^(t+1) - theta^(t)| / max |theta^(t)| per iteration (alternative model only).
  std::vector<double> theta_change_trace;
  int em_iterations = 0;
  bool converged = false;
  /// M-step state kept for warm starts.
  GlassoResult glasso_state;
};

/// Glasso penalty (applied per matrix entry) whose fit maximizes
/// (n/2)(log det - tr) - rho * sum_{i<j} |theta_ij|.
double glasso_penalty_for(double rho, Index n);

/// sum_i log f_nu(y_i; mu, theta^{-1}) - rho * sum_{i<j} |theta_ij|
double penalized_obs_loglik(const Dataset& data, const Vector& mu, const SpdMatrix& theta,
                            double nu, double rho);

TlassoFit tlasso_fit(const Dataset& data, const TlassoConfig& config,
                     const TlassoFit* warm = nullptr);

/// Fits an ascending rho grid, warm-starting every fit from the previous one.
std::vector<TlassoFit> tlasso_path(const Dataset& data, const std::vector<double>& rho_grid,
                                   const TlassoConfig& config);

/// Grid value of nu whose tlasso fit has the largest penalized log-likelihood.
double estimate_nu(const Dataset& data, double rho, const std::vector<double>& nu_grid,
                   const TlassoConfig& base = {});

/// Shared EM initialization: coordinatewise median and the empirical
/// covariance with 1e-6 * mean-diagonal loading.
std::pair<Vector, SpdMatrix> robust_start(const Dataset& data);

}  // namespace robustggm
