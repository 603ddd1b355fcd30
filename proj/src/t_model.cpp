#include "robustggm/t_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "robustggm/errors.hpp"

namespace robustggm {
namespace {

double t_normalizer(double nu, Index p) {
  const double pd = static_cast<double>(p);
  return std::lgamma(0.5 * (nu + pd)) - std::lgamma(0.5 * nu) -
         0.5 * pd * std::log(std::numbers::pi * nu);
}

void check_weights(const Dataset& data, const LatentWeights& weights) {
  if (weights.tau.size() != data.n()) {
    throw DimensionMismatch("weights: expected " + std::to_string(data.n()) + " entries, got " +
                            std::to_string(weights.tau.size()));
  }
}

}  // namespace

void TParams::validate() const {
  if (!(nu >= 3.0)) throw InvalidArgument("degrees of freedom must be at least 3");
  if (mu.size() != psi.dim()) throw DimensionMismatch("mu and psi dimensions differ");
}

double t_log_density(const Vector& y, const TParams& params) {
  if (y.size() != params.mu.size() || y.size() != params.psi.dim()) {
    throw DimensionMismatch("t_log_density: dimension mismatch");
  }
  const auto factor = cholesky(params.psi);
  const double delta = mahalanobis(y, params.mu, factor);
  const double nu = params.nu;
  const double p = static_cast<double>(y.size());
  return t_normalizer(nu, y.size()) - 0.5 * factor.log_det() -
         0.5 * (nu + p) * std::log1p(delta / nu);
}

double t_log_likelihood_precision(const Dataset& data, const Vector& mu,
                                  const CholeskyFactor& theta_factor, double nu) {
  if (mu.size() != data.p() || theta_factor.dim() != data.p()) {
    throw DimensionMismatch("t_log_likelihood_precision: dimension mismatch");
  }
  const double p = static_cast<double>(data.p());
  // With theta = L L^T, delta = |L^T (y - mu)|^2 and log det psi = -log det theta.
  const Matrix centred = data.values().rowwise() - mu.transpose();
  const Matrix z = centred * theta_factor.lower();
  double acc = 0.0;
  for (Index i = 0; i < data.n(); ++i) {
    acc += std::log1p(z.row(i).squaredNorm() / nu);
  }
  const double n = static_cast<double>(data.n());
  return n * (t_normalizer(nu, data.p()) + 0.5 * theta_factor.log_det()) - 0.5 * (nu + p) * acc;
}

Dataset sample_t(const TParams& params, Index n, Rng& rng) {
  params.validate();
  if (n < 1) throw InvalidArgument("sample_t: n must be positive");
  const Index p = params.psi.dim();
  const Matrix l = cholesky(params.psi).lower();
  Matrix out(n, p);
  Vector z(p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) z(j) = standard_normal(rng);
    const double tau = gamma_shape_rate(rng, 0.5 * params.nu, 0.5 * params.nu);
    out.row(i) = (params.mu + l * z / std::sqrt(tau)).transpose();
  }
  return Dataset(std::move(out));
}

double e_step_weight_from_distance(double delta, double nu, Index p) {
  return (nu + static_cast<double>(p)) / (nu + delta);
}

double e_step_weight(const Vector& y, const TParams& params) {
  return e_step_weight_from_distance(mahalanobis(y, params.mu, params.psi), params.nu, y.size());
}

Matrix weighted_scatter(const Dataset& data, const Vector& mu, const LatentWeights& weights) {
  check_weights(data, weights);
  if (mu.size() != data.p()) throw DimensionMismatch("weighted_scatter: mu dimension");
  const Matrix centred = data.values().rowwise() - mu.transpose();
  Matrix s = centred.transpose() * weights.tau.asDiagonal() * centred;
  s /= static_cast<double>(data.n());
  return 0.5 * (s + s.transpose());
}

SufficientStats sufficient_stats(const Dataset& data, const LatentWeights& weights) {
  check_weights(data, weights);
  const Matrix& y = data.values();
  SufficientStats st;
  st.s_tau = weights.tau.sum();
  st.s_tau_y = y.transpose() * weights.tau;
  st.s_tau_yy = y.transpose() * weights.tau.asDiagonal() * y;
  return st;
}

Vector weighted_mean(const Dataset& data, const LatentWeights& weights) {
  check_weights(data, weights);
  return data.values().transpose() * weights.tau / weights.tau.sum();
}

TParams m_step(const Dataset& data, const LatentWeights& weights, double nu) {
  Vector mu = weighted_mean(data, weights);
  SpdMatrix psi(weighted_scatter(data, mu, weights));
  return {std::move(mu), std::move(psi), nu};
}

Vector coordinate_median(const Dataset& data) {
  Vector med(data.p());
  std::vector<double> col(static_cast<std::size_t>(data.n()));
  for (Index j = 0; j < data.p(); ++j) {
    for (Index i = 0; i < data.n(); ++i) col[static_cast<std::size_t>(i)] = data.values()(i, j);
    std::sort(col.begin(), col.end());
    const std::size_t m = col.size();
    med(j) = (m % 2 == 1) ? col[m / 2] : 0.5 * (col[m / 2 - 1] + col[m / 2]);
  }
  return med;
}

EmMleResult em_fit_mle(const Dataset& data, double nu, const EmMleOptions& options) {
  if (!(nu >= 3.0)) throw InvalidArgument("em_fit_mle: nu must be at least 3");
  const Index n = data.n();
  const Index p = data.p();
  if (n <= p) throw InvalidArgument("em_fit_mle: needs more observations than variables");

  EmMleResult result;
  result.params = {data.values().colwise().mean().transpose(), empirical_covariance(data), nu};
  result.weights.tau = Vector::Ones(n);

  auto loglik = [&](const TParams& prm) {
    const auto theta_factor = cholesky(spd_inverse(prm.psi));
    return t_log_likelihood_precision(data, prm.mu, theta_factor, nu);
  };
  double current = loglik(result.params);
  result.loglik_trace.push_back(current);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const auto psi_factor = cholesky(result.params.psi);
    Vector tau(n);
    for (Index i = 0; i < n; ++i) {
      tau(i) = e_step_weight_from_distance(mahalanobis(data.row(i), result.params.mu, psi_factor),
                                           nu, p);
    }
    result.weights.tau = tau;
    result.params = m_step(data, result.weights, nu);
    const double next = loglik(result.params);
    result.loglik_trace.push_back(next);
    result.iterations = iter;
    const double change = std::abs(next - current);
    current = next;
    if (change <= options.tol) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged && options.throw_on_nonconvergence) {
    throw NonConvergence("em_fit_mle: no convergence after " + std::to_string(options.max_iter) +
                         " iterations");
  }
  return result;
}

}  // namespace robustggm
