#include "robustggm/alt_t_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "robustggm/errors.hpp"

namespace robustggm {

void AltTParams::validate() const {
  if (!(nu >= 3.0)) throw InvalidArgument("degrees of freedom must be at least 3");
  if (mu.size() != psi.dim()) throw DimensionMismatch("mu and psi dimensions differ");
}

void McmcConfig::validate() const {
  if (k_samples < 1) throw InvalidArgument("mcmc: k_samples must be at least 1");
  if (burn_in < 0) throw InvalidArgument("mcmc: burn_in must be nonnegative");
  if (!(theta_tol >= 0.0)) throw InvalidArgument("mcmc: theta_tol must be nonnegative");
}

Matrix TauStats::diagonals() const {
  if (products.empty()) return {};
  const Index p = products.front().rows();
  Matrix d(n(), p);
  for (Index i = 0; i < n(); ++i) d.row(i) = products[static_cast<std::size_t>(i)].diagonal().transpose();
  return d;
}

Dataset sample_alt_t(const AltTParams& params, Index n, Rng& rng) {
  params.validate();
  if (n < 1) throw InvalidArgument("sample_alt_t: n must be positive");
  const Index p = params.psi.dim();
  const Matrix l = cholesky(params.psi).lower();
  Matrix out(n, p);
  Vector z(p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) z(j) = standard_normal(rng);
    const Vector x = l * z;
    for (Index j = 0; j < p; ++j) {
      const double tau = gamma_shape_rate(rng, 0.5 * params.nu, 0.5 * params.nu);
      out(i, j) = params.mu(j) + x(j) / std::sqrt(tau);
    }
  }
  return Dataset(std::move(out));
}

double alt_cov_factor(double nu) {
  if (!(nu >= 3.0)) throw InvalidArgument("alt_cov_factor: nu must be at least 3");
  return std::exp(std::log(nu) + 2.0 * std::lgamma(0.5 * (nu - 1.0)) - std::log(2.0) -
                  2.0 * std::lgamma(0.5 * nu));
}

TauStats gibbs_mh_estep(const Dataset& data, const AltTParams& params, const SpdMatrix& theta,
                        const McmcConfig& mcmc) {
  mcmc.validate();
  const Index n = data.n();
  const Index p = data.p();
  if (params.mu.size() != p || theta.dim() != p) {
    throw DimensionMismatch("gibbs_mh_estep: parameter dimensions do not match the data");
  }
  const Matrix& t = theta.matrix();
  for (Index j = 0; j < p; ++j) {
    if (!(t(j, j) > 0.0)) {
      throw DegenerateProposal("gibbs_mh_estep: theta_" + std::to_string(j) + std::to_string(j) +
                               " is not positive");
    }
  }
  const double nu = params.nu;
  const double shape = 0.5 * (nu + 1.0);
  const int cycles = mcmc.burn_in + mcmc.k_samples;

  TauStats stats;
  stats.products.resize(static_cast<std::size_t>(n));
  Eigen::VectorXd accepted = Vector::Zero(p);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Vector r(p), tau(p), root(p), rate(p);
  for (Index i = 0; i < n; ++i) {
    Rng rng(derive_seed(mcmc.seed, static_cast<std::uint64_t>(i)));
    r = data.values().row(i).transpose() - params.mu;
    for (Index j = 0; j < p; ++j) {
      rate(j) = 0.5 * (nu + r(j) * r(j) * t(j, j));
      tau(j) = shape / rate(j);
      root(j) = std::sqrt(tau(j));
    }
    Matrix acc = Matrix::Zero(p, p);
    for (int c = 0; c < cycles; ++c) {
      for (Index j = 0; j < p; ++j) {
        const double proposal = gamma_shape_rate(rng, shape, rate(j));
        const double proposal_root = std::sqrt(proposal);
        // sum_{k != j} theta_jk x_ik with x_ik = sqrt(tau_ik) r_ik from the current state.
        double cross = 0.0;
        for (Index k = 0; k < p; ++k) {
          if (k != j) cross += t(j, k) * root(k) * r(k);
        }
        const double log_ratio = -(proposal_root - root(j)) * r(j) * cross;
        const double u = unif(rng);
        if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
          tau(j) = proposal;
          root(j) = proposal_root;
          accepted(j) += 1.0;
        }
      }
      if (c >= mcmc.burn_in) acc.noalias() += root * root.transpose();
    }
    acc /= static_cast<double>(mcmc.k_samples);
    stats.products[static_cast<std::size_t>(i)] = 0.5 * (acc + acc.transpose());
  }
  stats.acceptance_rate = accepted / (static_cast<double>(n) * cycles);
  return stats;
}

Matrix alt_weighted_scatter(const Dataset& data, const Vector& mu, const TauStats& stats) {
  if (stats.n() != data.n() || mu.size() != data.p()) {
    throw DimensionMismatch("alt_weighted_scatter: dimensions disagree");
  }
  const Index p = data.p();
  Matrix s = Matrix::Zero(p, p);
  for (Index i = 0; i < data.n(); ++i) {
    const Matrix& prod = stats.products[static_cast<std::size_t>(i)];
    if (prod.rows() != p) throw DimensionMismatch("alt_weighted_scatter: tau matrix size");
    const Vector d = data.values().row(i).transpose() - mu;
    s.noalias() += prod.cwiseProduct(d * d.transpose());
  }
  s /= static_cast<double>(data.n());
  return 0.5 * (s + s.transpose());
}

Vector alt_weighted_mean(const Dataset& data, const TauStats& stats) {
  const Matrix w = stats.diagonals();
  if (w.rows() != data.n() || w.cols() != data.p()) {
    throw DimensionMismatch("alt_weighted_mean: dimensions disagree");
  }
  const Matrix& y = data.values();
  Vector mu(data.p());
  for (Index j = 0; j < data.p(); ++j) mu(j) = w.col(j).dot(y.col(j)) / w.col(j).sum();
  return mu;
}

TlassoFit alt_tlasso_fit(const Dataset& data, const TlassoConfig& config, const McmcConfig& mcmc,
                         const TlassoFit* warm) {
  config.validate();
  mcmc.validate();
  const Index n = data.n();
  const Index p = data.p();
  if (n < 2) throw InvalidArgument("alt_tlasso_fit: needs at least two observations");

  TlassoFit fit;
  if (warm != nullptr && warm->mu_hat.size() == p) {
    fit.mu_hat = warm->mu_hat;
    fit.theta_hat = warm->theta_hat;
    fit.glasso_state = warm->glasso_state;
  } else {
    auto [mu0, psi0] = robust_start(data);
    fit.mu_hat = std::move(mu0);
    fit.theta_hat = spd_inverse(psi0);
  }
  fit.cell_weights = Matrix::Ones(n, p);

  const PenaltySpec penalty{glasso_penalty_for(config.rho, n), false};
  GlassoOptions gopts;
  gopts.tol = config.glasso_tol;

  // Once the change stops shrinking it is dominated by Monte Carlo noise; from
  // then on the E-step statistics are averaged with step 1/k.
  TauStats stats;
  int averaged_steps = 0;
  double last_change = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= config.max_em_iter; ++iter) {
    McmcConfig step = mcmc;
    step.seed = derive_seed(mcmc.seed, static_cast<std::uint64_t>(iter));
    const AltTParams params{fit.mu_hat, spd_inverse(fit.theta_hat), config.nu};
    TauStats fresh = gibbs_mh_estep(data, params, fit.theta_hat, step);
    if (averaged_steps == 0) {
      stats = std::move(fresh);
    } else {
      ++averaged_steps;
      const double gamma = 1.0 / averaged_steps;
      for (std::size_t i = 0; i < stats.products.size(); ++i) {
        stats.products[i] += gamma * (fresh.products[i] - stats.products[i]);
      }
      stats.acceptance_rate += gamma * (fresh.acceptance_rate - stats.acceptance_rate);
    }

    const Vector mu = alt_weighted_mean(data, stats);
    const Matrix scatter = alt_weighted_scatter(data, mu, stats);
    GlassoResult g = glasso_fit(SpdMatrix(scatter), penalty, gopts,
                                fit.glasso_state.sigma_hat.dim() == p ? &fit.glasso_state : nullptr);

    const Matrix& old_theta = fit.theta_hat.matrix();
    const double change =
        (g.theta_hat.matrix() - old_theta).cwiseAbs().maxCoeff() / old_theta.cwiseAbs().maxCoeff();
    fit.theta_change_trace.push_back(change);
    fit.mu_hat = mu;
    fit.theta_hat = g.theta_hat;
    fit.glasso_state = std::move(g);
    fit.cell_weights = stats.diagonals();
    fit.tau_products = stats.products;
    fit.em_iterations = iter;
    if (change <= mcmc.theta_tol) {
      fit.converged = true;
      break;
    }
    if (averaged_steps == 0 && change >= last_change) averaged_steps = 1;
    last_change = change;
  }
  if (config.max_em_iter == 0) fit.converged = true;

  fit.weights.tau = fit.cell_weights.rowwise().mean();
  fit.psi_hat = spd_inverse(fit.theta_hat);
  if (!fit.converged && config.throw_on_nonconvergence) {
    throw NonConvergence("alt_tlasso_fit: theta still moving after " +
                         std::to_string(config.max_em_iter) + " stochastic EM iterations");
  }
  return fit;
}

}  // namespace robustggm
