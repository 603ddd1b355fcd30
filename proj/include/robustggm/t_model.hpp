#pragma once

#include <vector>

#include "robustggm/linalg.hpp"
#include "robustggm/random.hpp"

namespace robustggm {

/// Parameters of the multivariate t distribution t_{p,nu}(mu, psi).
struct TParams {
  Vector mu;
  SpdMatrix psi;
  double nu = 3.0;

  /// Throws InvalidArgument when nu < 3 or the dimensions of mu and psi differ.
  void validate() const;
};

/// One positive latent weight per observation.
struct LatentWeights {
  Vector tau;
};

struct SufficientStats {
  double s_tau = 0.0;
  Vector s_tau_y;
  Matrix s_tau_yy;
};

double t_log_density(const Vector& y, const TParams& params);

/// Sum of t log densities of all rows, given the Cholesky factor of the
/// precision matrix theta = psi^{-1}.
double t_log_likelihood_precision(const Dataset& data, const Vector& mu,
                                  const CholeskyFactor& theta_factor, double nu);

/// Draws Y = mu + X / sqrt(tau) with X ~ N(0, psi) and a single
/// tau ~ Gamma(nu/2, rate nu/2) per observation.
Dataset sample_t(const TParams& params, Index n, Rng& rng);

/// Conditional expectation of tau given y: (nu + p) / (nu + delta).
double e_step_weight(const Vector& y, const TParams& params);
double e_step_weight_from_distance(double delta, double nu, Index p);

/// (1/n) sum_i w_i (y_i - mu)(y_i - mu)^T
Matrix weighted_scatter(const Dataset& data, const Vector& mu, const LatentWeights& weights);

SufficientStats sufficient_stats(const Dataset& data, const LatentWeights& weights);

/// Weighted mean sum w_i y_i / sum w_i.
Vector weighted_mean(const Dataset& data, const LatentWeights& weights);

/// One M-step: weighted mean, then the weighted scatter around it.
TParams m_step(const Dataset& data, const LatentWeights& weights, double nu);

struct EmMleResult {
  TParams params;
  LatentWeights weights;
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;
};

struct EmMleOptions {
  /// Stop when the observed log-likelihood changes by at most tol.
  double tol = 1e-6;
  int max_iter = 500;
  bool throw_on_nonconvergence = true;
};

/// Unpenalized EM for (mu, psi) at fixed nu, started from the sample mean and
/// the empirical covariance.
EmMleResult em_fit_mle(const Dataset& data, double nu, const EmMleOptions& options = {});

/// Coordinatewise median.
Vector coordinate_median(const Dataset& data);

}  // namespace robustggm
