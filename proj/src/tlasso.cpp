#include "robustggm/tlasso.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robustggm/errors.hpp"

namespace robustggm {
namespace {

double offdiag_l1(const Matrix& t) {
  return 0.5 * (t.cwiseAbs().sum() - t.diagonal().cwiseAbs().sum());
}

// Expected complete-data objective (n/2)(log det - tr(theta S)) - rho |theta|_1.
double m_step_objective(const SpdMatrix& theta, const Matrix& scatter, double rho, Index n) {
  double ld = 0.0;
  try {
    ld = log_det(theta);
  } catch (const NotPositiveDefinite&) {
    return -std::numeric_limits<double>::infinity();
  }
  const double tr = scatter.cwiseProduct(theta.matrix()).sum();
  return 0.5 * static_cast<double>(n) * (ld - tr) - rho * offdiag_l1(theta.matrix());
}

}  // namespace

void TlassoConfig::validate() const {
  if (!(rho >= 0.0)) throw InvalidArgument("tlasso: rho must be nonnegative");
  if (!(nu >= 3.0)) throw InvalidArgument("tlasso: nu must be at least 3");
  if (max_em_iter < 0) throw InvalidArgument("tlasso: max_em_iter must be nonnegative");
}

double glasso_penalty_for(double rho, Index n) { return rho / static_cast<double>(n); }

double penalized_obs_loglik(const Dataset& data, const Vector& mu, const SpdMatrix& theta,
                            double nu, double rho) {
  const auto factor = cholesky(theta);
  return t_log_likelihood_precision(data, mu, factor, nu) - rho * offdiag_l1(theta.matrix());
}

std::pair<Vector, SpdMatrix> robust_start(const Dataset& data) {
  Vector mu = coordinate_median(data);
  Matrix psi = empirical_covariance(data).matrix();
  psi.diagonal().array() += 1e-6 * psi.diagonal().mean();
  return {std::move(mu), SpdMatrix(psi)};
}

TlassoFit tlasso_fit(const Dataset& data, const TlassoConfig& config, const TlassoFit* warm) {
  config.validate();
  const Index n = data.n();
  const Index p = data.p();
  if (n < 2) throw InvalidArgument("tlasso_fit: needs at least two observations");

  TlassoFit fit;
  const GlassoResult* glasso_warm = nullptr;
  if (warm != nullptr && warm->mu_hat.size() == p) {
    fit.mu_hat = warm->mu_hat;
    fit.theta_hat = warm->theta_hat;
    glasso_warm = &warm->glasso_state;
  } else {
    auto [mu0, psi0] = robust_start(data);
    fit.mu_hat = std::move(mu0);
    fit.theta_hat = spd_inverse(psi0);
  }

  const PenaltySpec penalty{glasso_penalty_for(config.rho, n), false};
  GlassoOptions gopts;
  gopts.tol = config.glasso_tol;

  double current = penalized_obs_loglik(data, fit.mu_hat, fit.theta_hat, config.nu, config.rho);
  fit.penalized_loglik_trace.push_back(current);
  fit.weights.tau = Vector::Ones(n);
  if (glasso_warm != nullptr) fit.glasso_state = *glasso_warm;

  for (int iter = 1; iter <= config.max_em_iter; ++iter) {
    // E-step: delta_i = |L^T (y_i - mu)|^2 with theta = L L^T.
    const auto factor = cholesky(fit.theta_hat);
    const Matrix z = (data.values().rowwise() - fit.mu_hat.transpose()) * factor.lower();
    Vector tau(n);
    for (Index i = 0; i < n; ++i) {
      tau(i) = e_step_weight_from_distance(z.row(i).squaredNorm(), config.nu, p);
    }
    fit.weights.tau = tau;

    // M-step: mu in closed form, then theta from the glasso on the weighted
    // scatter around the new mu.
    const Vector mu = weighted_mean(data, fit.weights);
    const Matrix scatter = weighted_scatter(data, mu, fit.weights);
    GlassoResult g = glasso_fit(SpdMatrix(scatter), penalty, gopts,
                                fit.glasso_state.sigma_hat.dim() == p ? &fit.glasso_state : nullptr);
    // Generalized-EM guard: a glasso solution that is numerically worse than the
    // previous theta on this iteration's objective is not accepted.
    const double q_new = m_step_objective(g.theta_hat, scatter, config.rho, n);
    const double q_old = m_step_objective(fit.theta_hat, scatter, config.rho, n);
    fit.mu_hat = mu;
    if (q_new >= q_old) fit.theta_hat = g.theta_hat;
    fit.glasso_state = std::move(g);

    const double next = penalized_obs_loglik(data, fit.mu_hat, fit.theta_hat, config.nu, config.rho);
    fit.penalized_loglik_trace.push_back(next);
    fit.em_iterations = iter;
    const double change = std::abs(next - current);
    current = next;
    if (change <= config.em_tol) {
      fit.converged = true;
      break;
    }
  }
  if (config.max_em_iter == 0) fit.converged = true;

  fit.psi_hat = spd_inverse(fit.theta_hat);
  if (!fit.converged && config.throw_on_nonconvergence) {
    throw NonConvergence("tlasso_fit: no convergence after " + std::to_string(config.max_em_iter) +
                         " EM iterations");
  }
  return fit;
}

std::vector<TlassoFit> tlasso_path(const Dataset& data, const std::vector<double>& rho_grid,
                                   const TlassoConfig& config) {
  for (std::size_t k = 1; k < rho_grid.size(); ++k) {
    if (!(rho_grid[k] > rho_grid[k - 1])) {
      throw InvalidArgument("tlasso_path: rho grid must be strictly increasing");
    }
  }
  std::vector<TlassoFit> fits;
  fits.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    TlassoConfig cfg = config;
    cfg.rho = rho;
    fits.push_back(tlasso_fit(data, cfg, fits.empty() ? nullptr : &fits.back()));
  }
  return fits;
}

double estimate_nu(const Dataset& data, double rho, const std::vector<double>& nu_grid,
                   const TlassoConfig& base) {
  if (nu_grid.empty()) throw InvalidArgument("estimate_nu: empty grid");
  double best_nu = nu_grid.front();
  double best = -std::numeric_limits<double>::infinity();
  for (double nu : nu_grid) {
    if (!(nu >= 3.0)) throw InvalidArgument("estimate_nu: grid values must be at least 3");
    TlassoConfig cfg = base;
    cfg.rho = rho;
    cfg.nu = nu;
    const TlassoFit fit = tlasso_fit(data, cfg);
    const double value = penalized_obs_loglik(data, fit.mu_hat, fit.theta_hat, nu, rho);
    if (value > best) {
      best = value;
      best_nu = nu;
    }
  }
  return best_nu;
}

}  // namespace robustggm
