#include "robustggm/glasso.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "robustggm/errors.hpp"

namespace robustggm {
namespace {

// Once the support and signs of beta repeat across a cycle, the lasso optimum
// (if that pattern is right) solves V_AA b_A = s_A - rho sign_A. The candidate
// is accepted only when its signs agree and every inactive coordinate satisfies
// |s_k - V_kA b_A| <= rho.
bool active_set_solve(const Matrix& v, const Vector& s, double rho, Vector& beta) {
  std::vector<Index> active;
  for (Index k = 0; k < beta.size(); ++k) {
    if (beta(k) != 0.0) active.push_back(k);
  }
  const auto a = static_cast<Index>(active.size());
  Vector candidate = Vector::Zero(beta.size());
  if (a > 0) {
    Matrix vaa(a, a);
    Vector rhs(a);
    for (Index x = 0; x < a; ++x) {
      const Index kx = active[static_cast<std::size_t>(x)];
      rhs(x) = s(kx) - rho * (beta(kx) > 0.0 ? 1.0 : -1.0);
      for (Index y = 0; y < a; ++y) vaa(x, y) = v(kx, active[static_cast<std::size_t>(y)]);
    }
    Eigen::LLT<Matrix> llt(vaa);
    if (llt.info() != Eigen::Success) return false;
    const Vector ba = llt.solve(rhs);
    for (Index x = 0; x < a; ++x) {
      const Index kx = active[static_cast<std::size_t>(x)];
      if (ba(x) == 0.0 || (ba(x) > 0.0) != (beta(kx) > 0.0)) return false;
      candidate(kx) = ba(x);
    }
  }
  const Vector grad = s - v * candidate;
  const double slack = 1e-12 * std::max(1.0, s.cwiseAbs().maxCoeff());
  for (Index k = 0; k < beta.size(); ++k) {
    if (candidate(k) == 0.0 && std::abs(grad(k)) > rho + slack) return false;
  }
  beta = candidate;
  return true;
}

// Coordinate descent on the (p-1)-dimensional block. vb caches V * beta.
void coordinate_descent(const Matrix& v, const Vector& s, double rho, Vector& beta,
                        double tol, int max_iter) {
  const Index m = v.rows();
  Vector vb = v * beta;
  Eigen::Array<signed char, Eigen::Dynamic, 1> pattern = beta.array().sign().cast<signed char>();
  for (int iter = 0; iter < max_iter; ++iter) {
    double max_change = 0.0;
    for (Index k = 0; k < m; ++k) {
      const double vkk = v(k, k);
      const double partial = s(k) - vb(k) + vkk * beta(k);
      const double updated = soft_threshold(partial, rho) / vkk;
      const double delta = updated - beta(k);
      if (delta != 0.0) {
        vb.noalias() += delta * v.col(k);
        beta(k) = updated;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (max_change <= tol) return;
    const auto next_pattern = beta.array().sign().cast<signed char>().eval();
    if ((next_pattern == pattern).all() && active_set_solve(v, s, rho, beta)) return;
    pattern = next_pattern;
  }
  throw NonConvergence("inner lasso did not converge within " + std::to_string(max_iter) +
                       " cycles");
}

Matrix drop_index(const Matrix& w, Index j) {
  const Index p = w.rows();
  Matrix out(p - 1, p - 1);
  for (Index a = 0, ra = 0; a < p; ++a) {
    if (a == j) continue;
    for (Index b = 0, rb = 0; b < p; ++b) {
      if (b == j) continue;
      out(ra, rb++) = w(a, b);
    }
    ++ra;
  }
  return out;
}

Vector drop_entry(const Vector& v, Index j) {
  Vector out(v.size() - 1);
  for (Index a = 0, ra = 0; a < v.size(); ++a) {
    if (a != j) out(ra++) = v(a);
  }
  return out;
}

double mean_abs_offdiag(const Matrix& m) {
  const Index p = m.rows();
  if (p < 2) return 0.0;
  return (m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum()) / static_cast<double>(p * (p - 1));
}

// Exact zeros survive: an entry is kept only when both column estimates agree
// that it is nonzero.
Matrix symmetrize_keep_zeros(const Matrix& t) {
  const Index p = t.rows();
  Matrix out = t;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double v = (t(i, j) == 0.0 || t(j, i) == 0.0) ? 0.0 : 0.5 * (t(i, j) + t(j, i));
      out(i, j) = out(j, i) = v;
    }
  }
  return out;
}

}  // namespace

double soft_threshold(double x, double t) {
  const double mag = std::abs(x) - t;
  if (mag <= 0.0) return 0.0;
  return x > 0.0 ? mag : -mag;
}

Vector inner_lasso(const SpdMatrix& v_block, const Vector& s_col, double rho,
                   const Vector& beta_init, double tol, int max_iter) {
  if (s_col.size() != v_block.dim() || beta_init.size() != v_block.dim()) {
    throw DimensionMismatch("inner_lasso: block, column and start vector sizes disagree");
  }
  if (rho < 0.0) throw InvalidArgument("inner_lasso: rho must be nonnegative");
  Vector beta = beta_init;
  coordinate_descent(v_block.matrix(), s_col, rho, beta, tol, max_iter);
  return beta;
}

double glasso_objective(const SpdMatrix& s, const SpdMatrix& theta, const PenaltySpec& penalty) {
  if (s.dim() != theta.dim()) throw DimensionMismatch("glasso_objective: dimension mismatch");
  double ld = 0.0;
  try {
    ld = log_det(theta);
  } catch (const NotPositiveDefinite&) {
    return -std::numeric_limits<double>::infinity();
  }
  const Matrix& t = theta.matrix();
  const double trace = (s.matrix().cwiseProduct(t)).sum();
  double l1 = t.cwiseAbs().sum();
  if (!penalty.penalize_diagonal) l1 -= t.diagonal().cwiseAbs().sum();
  return ld - trace - penalty.rho * l1;
}

GlassoResult glasso_fit(const SpdMatrix& s, const PenaltySpec& penalty,
                        const GlassoOptions& options, const GlassoResult* warm) {
  if (penalty.rho < 0.0) throw InvalidArgument("glasso_fit: rho must be nonnegative");
  const Index p = s.dim();
  const Matrix& sm = s.matrix();
  for (Index i = 0; i < p; ++i) {
    if (!(sm(i, i) > 0.0)) throw InvalidArgument("glasso_fit: S must have a positive diagonal");
  }
  const double diag_shift = penalty.penalize_diagonal ? penalty.rho : 0.0;

  Matrix w = sm;
  w.diagonal().array() += diag_shift;
  Matrix betas = Matrix::Zero(std::max<Index>(p - 1, 0), p);
  if (warm != nullptr && warm->sigma_hat.dim() == p) {
    // A warm W is only usable when it is dual-feasible for this S, i.e.
    // |W_ij - S_ij| <= rho off the diagonal; column updates then keep W
    // positive definite. Warm coefficients are always safe to reuse.
    Matrix ww = warm->sigma_hat.matrix();
    ww.diagonal() = sm.diagonal().array() + diag_shift;
    const double slack = 1e-12 * std::max(1.0, sm.cwiseAbs().maxCoeff());
    bool usable = ((ww - sm).cwiseAbs().array() <= penalty.rho + diag_shift + slack).all();
    if (usable) {
      try {
        cholesky(ww);
      } catch (const NotPositiveDefinite&) {
        usable = false;
      }
    }
    if (usable) w = ww;
    if (warm->betas.rows() == p - 1 && warm->betas.cols() == p) betas = warm->betas;
  }

  GlassoResult result;
  if (p == 1) {
    result.sigma_hat = SpdMatrix(w);
    result.theta_hat = SpdMatrix(Matrix::Constant(1, 1, 1.0 / w(0, 0)));
    result.converged = true;
    result.objective = glasso_objective(s, result.theta_hat, penalty);
    result.objective_trace.push_back(result.objective);
    result.betas = betas;
    return result;
  }

  double scale = mean_abs_offdiag(sm);
  if (scale == 0.0) scale = sm.diagonal().mean();
  const double threshold = options.tol * scale;

  Matrix theta = Matrix::Zero(p, p);
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    const Matrix w_before = w;
    for (Index j = 0; j < p; ++j) {
      const Matrix v = drop_index(w, j);
      const Vector s12 = drop_entry(sm.col(j), j);
      Vector beta = betas.col(j);
      coordinate_descent(v, s12, penalty.rho, beta, options.inner_tol, options.max_inner_iter);
      betas.col(j) = beta;
      const Vector w12 = v * beta;
      for (Index a = 0, ra = 0; a < p; ++a) {
        if (a == j) continue;
        w(a, j) = w(j, a) = w12(ra++);
      }
      const double schur = w(j, j) - w12.dot(beta);
      if (!(schur > 0.0)) {
        throw NotPositiveDefinite("glasso_fit: W lost definiteness at column " + std::to_string(j));
      }
      const double theta_jj = 1.0 / schur;
      theta(j, j) = theta_jj;
      for (Index a = 0, ra = 0; a < p; ++a) {
        if (a == j) continue;
        theta(a, j) = -beta(ra++) * theta_jj;
      }
    }
    result.iterations = sweep;
    const double change = mean_abs_offdiag(w - w_before);
    result.objective_trace.push_back(
        glasso_objective(s, SpdMatrix(symmetrize_keep_zeros(theta)), penalty));
    if (change <= threshold) {
      result.converged = true;
      break;
    }
  }

  result.sigma_hat = SpdMatrix(0.5 * (w + w.transpose()));
  result.theta_hat = SpdMatrix(symmetrize_keep_zeros(theta));
  result.objective = result.objective_trace.back();
  result.betas = std::move(betas);
  if (!result.converged && options.throw_on_nonconvergence) {
    throw NonConvergence("glasso_fit: no convergence after " +
                         std::to_string(options.max_sweeps) + " sweeps");
  }
  return result;
}

double kkt_residual(const SpdMatrix& s, const GlassoResult& result, const PenaltySpec& penalty) {
  const Index p = s.dim();
  if (result.sigma_hat.dim() != p || result.theta_hat.dim() != p) {
    throw DimensionMismatch("kkt_residual: result dimensions do not match S");
  }
  const Matrix& w = result.sigma_hat.matrix();
  const Matrix& t = result.theta_hat.matrix();
  const Matrix& sm = s.matrix();
  const double rho = penalty.rho;
  double worst = 0.0;
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      const double g = w(i, j) - sm(i, j);
      double v = 0.0;
      if (i == j && !penalty.penalize_diagonal) {
        v = std::abs(g);
      } else if (t(i, j) != 0.0) {
        v = std::abs(g - rho * (t(i, j) > 0.0 ? 1.0 : -1.0));
      } else {
        v = std::max(std::abs(g) - rho, 0.0);
      }
      worst = std::max(worst, v);
    }
  }
  return worst;
}

}  // namespace robustggm
