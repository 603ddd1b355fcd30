#pragma once

#include <cstdint>
#include <vector>

#include "robustggm/linalg.hpp"
#include "robustggm/random.hpp"
#include "robustggm/tlasso.hpp"

namespace robustggm {

/// Parameters of the alternative t distribution t*_{p,nu}(mu, psi), where each
/// coordinate has its own Gamma divisor.
struct AltTParams {
  Vector mu;
  SpdMatrix psi;
  double nu = 3.0;

  void validate() const;
};

struct McmcConfig {
  int k_samples = 50;  // retained Gibbs cycles per E-step
  int burn_in = 20;
  std::uint64_t seed = 0;
  /// Stochastic EM stops when max |delta theta| / max |theta| <= theta_tol.
  double theta_tol = 1e-3;

  void validate() const;
};

/// Monte-Carlo estimates of E[sqrt(tau_i) sqrt(tau_i)^T | Y_i].
struct TauStats {
  std::vector<Matrix> products;  // one p x p matrix per observation
  Vector acceptance_rate;        // per coordinate, pooled over observations

  Index n() const { return static_cast<Index>(products.size()); }
  /// n x p matrix of the diagonals, i.e. estimates of E[tau_ij | Y].
  Matrix diagonals() const;
};

/// Y_j = mu_j + X_j / sqrt(tau_j) with X ~ N(0, psi) and independent
/// tau_j ~ Gamma(nu/2, rate nu/2).
Dataset sample_alt_t(const AltTParams& params, Index n, Rng& rng);

/// nu Gamma((nu-1)/2)^2 / (2 Gamma(nu/2)^2): cov(Y_i, Y_j) / psi_ij under t*.
double alt_cov_factor(double nu);

/// Metropolis-within-Gibbs over the per-cell divisors. For cell (i, j) the
/// full conditional is proportional to
///   q(tau) * exp{-sqrt(tau) r_ij sum_{k != j} theta_jk x_ik},
/// with r_ij = y_ij - mu_j, x_ik = sqrt(tau_ik) r_ik and
/// q = Gamma((nu + 1)/2, rate (nu + r_ij^2 theta_jj)/2). q is the proposal, so
/// the acceptance ratio is the exponential factor alone. Each chain starts at
/// the proposal means (nu + 1) / (nu + r_ij^2 theta_jj); observation i uses the
/// stream derive_seed(mcmc.seed, i).
TauStats gibbs_mh_estep(const Dataset& data, const AltTParams& params, const SpdMatrix& theta,
                        const McmcConfig& mcmc);

/// (1/n) sum_i E[sqrt(tau_i) sqrt(tau_i)^T] o (y_i - mu)(y_i - mu)^T
Matrix alt_weighted_scatter(const Dataset& data, const Vector& mu, const TauStats& stats);

/// Per-coordinate weighted mean sum_i E[tau_ij] y_ij / sum_i E[tau_ij].
Vector alt_weighted_mean(const Dataset& data, const TauStats& stats);

/// Stochastic EM for the penalized t* model; the M-step is a glasso call on
/// alt_weighted_scatter with the same penalty scaling as tlasso_fit. EM
/// iteration t samples from the stream derive_seed(mcmc.seed, t). After the
/// first iteration whose theta change is not smaller than the previous one,
/// the tau products entering the M-step are running averages over the E-steps
/// since then, and the reported cell weights are those averages.
TlassoFit alt_tlasso_fit(const Dataset& data, const TlassoConfig& config, const McmcConfig& mcmc,
                         const TlassoFit* warm = nullptr);

}  // namespace robustggm
