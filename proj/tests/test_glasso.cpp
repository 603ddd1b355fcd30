#include <gtest/gtest.h>

#include <cmath>
#include <iostream>
#include <limits>

#include "robustggm/errors.hpp"
#include "robustggm/glasso.hpp"
#include "robustggm/sim_bench.hpp"
#include "test_support.hpp"

using namespace robustggm;
using testing_support::random_spd;
using testing_support::sample_covariance;

namespace {

double lasso_objective(const Matrix& v, const Vector& s, double rho, const Vector& b) {
  return 0.5 * b.dot(v * b) - s.dot(b) + rho * b.cwiseAbs().sum();
}

// Multi-resolution grid scan of the lasso objective over coordinates (a, b),
// all other coordinates held at zero.
std::pair<double, Vector> grid_scan_pair(const Matrix& v, const Vector& s, double rho, Index a,
                                         Index b) {
  double ca = 0.0, cb = 0.0, half = 4.0;
  double best = std::numeric_limits<double>::infinity();
  Vector arg = Vector::Zero(s.size());
  for (int level = 0; level < 12; ++level) {
    const int steps = 40;
    double na = ca, nb = cb;
    for (int i = -steps; i <= steps; ++i) {
      for (int j = -steps; j <= steps; ++j) {
        Vector x = Vector::Zero(s.size());
        x(a) = ca + half * i / steps;
        x(b) = cb + half * j / steps;
        const double f = lasso_objective(v, s, rho, x);
        if (f < best) {
          best = f;
          na = x(a);
          nb = x(b);
          arg = x;
        }
      }
    }
    ca = na;
    cb = nb;
    half /= 8.0;
  }
  return {best, arg};
}

// Reference objective computed from eigenvalues, independent of the solver.
double reference_objective(const Matrix& s, const Matrix& theta, double rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(theta);
  double off = 0.0;
  for (Index i = 0; i < s.rows(); ++i)
    for (Index j = 0; j < s.rows(); ++j)
      if (i != j) off += std::abs(theta(i, j));
  return es.eigenvalues().array().log().sum() - (s * theta).trace() - rho * off;
}

}  // namespace

TEST(SoftThreshold, Examples) {
  EXPECT_DOUBLE_EQ(soft_threshold(2.0, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(soft_threshold(-0.3, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-2.0, 0.5), -1.5);
  for (double t : {0.0, 0.1, 3.0}) EXPECT_DOUBLE_EQ(soft_threshold(0.0, t), 0.0);
}

TEST(InnerLasso, IdentityDesign) {
  Vector s(3);
  s << 0.4, -0.9, 0.2;
  const SpdMatrix id = SpdMatrix::identity(3);
  EXPECT_TRUE(inner_lasso(id, s, 0.9, Vector::Zero(3)).isZero());
  EXPECT_TRUE(inner_lasso(id, s, 0.0, Vector::Zero(3)).isApprox(s));
  EXPECT_THROW(inner_lasso(id, s, -0.1, Vector::Zero(3)), InvalidArgument);
  EXPECT_THROW(inner_lasso(id, s, 0.1, Vector::Zero(2)), DimensionMismatch);
}

TEST(InnerLasso, ExhaustedBudgetThrows) {
  Vector s(2);
  s << 1.0, 0.5;
  Matrix v(2, 2);
  v << 1.0, 0.5, 0.5, 1.0;
  EXPECT_THROW(inner_lasso(SpdMatrix(v), s, 0.1, Vector::Zero(2), 1e-10, 0), NonConvergence);
}

TEST(InnerLasso, MatchesGridSearchOnTwoActiveCoordinates) {
  auto rng = make_rng(21);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 6; ++trial) {
    const SpdMatrix v = random_spd(rng, 4);
    const Vector s = testing_support::gaussian_vector(rng, 4);
    // Largest rho on a coarse ladder whose solution has exactly two nonzeros.
    for (double rho = s.cwiseAbs().maxCoeff(); rho > 1e-3; rho *= 0.8) {
      const Vector beta = inner_lasso(v, s, rho, Vector::Zero(4));
      std::vector<Index> support;
      for (Index k = 0; k < 4; ++k)
        if (beta(k) != 0.0) support.push_back(k);
      if (support.size() < 2) continue;
      if (support.size() > 2) break;
      double best = std::numeric_limits<double>::infinity();
      Vector arg;
      for (Index a = 0; a < 4; ++a) {
        for (Index b = a + 1; b < 4; ++b) {
          auto [f, x] = grid_scan_pair(v.matrix(), s, rho, a, b);
          if (f < best) {
            best = f;
            arg = x;
          }
        }
      }
      EXPECT_NEAR(lasso_objective(v.matrix(), s, rho, beta), best, 1e-9);
      EXPECT_LE((beta - arg).cwiseAbs().maxCoeff(), 1e-6);
      ++checked;
      break;
    }
  }
  EXPECT_GE(checked, 3);
}

TEST(InnerLasso, WarmStartReachesSameFixedPoint) {
  auto rng = make_rng(22);
  const SpdMatrix v = random_spd(rng, 6);
  const Vector s = testing_support::gaussian_vector(rng, 6);
  const Vector cold = inner_lasso(v, s, 0.2, Vector::Zero(6));
  const Vector warm = inner_lasso(v, s, 0.2, testing_support::gaussian_vector(rng, 6));
  EXPECT_LE((cold - warm).cwiseAbs().maxCoeff(), 1e-8);
  // Coordinatewise fixed point of the soft-threshold update.
  for (Index k = 0; k < 6; ++k) {
    const double partial = s(k) - v.matrix().row(k).dot(cold) + v(k, k) * cold(k);
    EXPECT_NEAR(cold(k), soft_threshold(partial, 0.2) / v(k, k), 1e-9);
  }
}

TEST(GlassoFit, UnpenalizedRecoversInverse) {
  auto rng = make_rng(23);
  const SpdMatrix s = random_spd(rng, 5, 1.0);
  const GlassoResult r = glasso_fit(s, PenaltySpec{0.0, false});
  EXPECT_TRUE(r.converged);
  EXPECT_LE((r.theta_hat.matrix() - s.matrix().inverse()).norm(), 1e-4);
  EXPECT_LE(kkt_residual(s, r, PenaltySpec{0.0, false}), 1e-5);
}

TEST(GlassoFit, FullShrinkageGivesDiagonal) {
  auto rng = make_rng(24);
  const SpdMatrix s = sample_covariance(rng, random_spd(rng, 6), 40);
  double rho = 0.0;
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (i != j) rho = std::max(rho, std::abs(s(i, j)));
  const GlassoResult r = glasso_fit(s, PenaltySpec{rho, false});
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 6; ++j) {
      if (i == j) {
        EXPECT_NEAR(r.theta_hat(i, i), 1.0 / s(i, i), 1e-8);
      } else {
        EXPECT_EQ(r.theta_hat(i, j), 0.0);
      }
    }
  }
  EXPECT_EQ(edges_from_theta(r.theta_hat).size(), 0u);
}

TEST(GlassoFit, TwoByTwoClosedForm) {
  Matrix m(2, 2);
  m << 1.0, 0.6, 0.6, 1.0;
  const SpdMatrix s(m);
  const PenaltySpec pen{0.2, false};
  const GlassoResult r = glasso_fit(s, pen);
  EXPECT_NEAR(r.sigma_hat(0, 1), soft_threshold(0.6, 0.2), 1e-8);
  EXPECT_NEAR(r.sigma_hat(0, 1), 0.4, 1e-8);
  EXPECT_NEAR(r.sigma_hat(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.sigma_hat(1, 1), 1.0, 1e-12);
  // Theta is the inverse of [[1, 0.4], [0.4, 1]].
  EXPECT_NEAR(r.theta_hat(0, 1), -0.4 / 0.84, 1e-8);
  EXPECT_NEAR(r.theta_hat(0, 0), 1.0 / 0.84, 1e-8);
  EXPECT_LE(kkt_residual(s, r, pen), 1e-8);
}

TEST(GlassoFit, PenalizedDiagonal) {
  auto rng = make_rng(25);
  const SpdMatrix s = sample_covariance(rng, random_spd(rng, 5), 30);
  const PenaltySpec pen{0.1, true};
  const GlassoResult r = glasso_fit(s, pen);
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(r.sigma_hat(i, i), s(i, i) + 0.1, 1e-8);
  EXPECT_LE(kkt_residual(s, r, pen), 1e-4);
}

TEST(GlassoFit, OneVariable) {
  Matrix m(1, 1);
  m << 2.5;
  const GlassoResult r = glasso_fit(SpdMatrix(m), PenaltySpec{0.3, false});
  EXPECT_DOUBLE_EQ(r.theta_hat(0, 0), 0.4);
}

TEST(GlassoFit, Errors) {
  Matrix m = Matrix::Identity(3, 3);
  EXPECT_THROW(glasso_fit(SpdMatrix(m), PenaltySpec{-1.0, false}), InvalidArgument);
  m(1, 1) = 0.0;
  EXPECT_THROW(glasso_fit(SpdMatrix(m), PenaltySpec{0.1, false}), InvalidArgument);

  auto rng = make_rng(26);
  const SpdMatrix s = sample_covariance(rng, random_spd(rng, 8), 20);
  GlassoOptions opts;
  opts.tol = 1e-14;
  opts.max_sweeps = 1;
  EXPECT_THROW(glasso_fit(s, PenaltySpec{0.01, false}, opts), NonConvergence);
  opts.throw_on_nonconvergence = false;
  const GlassoResult r = glasso_fit(s, PenaltySpec{0.01, false}, opts);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_THROW(kkt_residual(SpdMatrix::identity(3), r, PenaltySpec{0.01, false}), DimensionMismatch);
}

TEST(GlassoObjective, MatchesEigenvalueFormula) {
  auto rng = make_rng(27);
  const SpdMatrix s = sample_covariance(rng, random_spd(rng, 6), 25);
  const GlassoResult r = glasso_fit(s, PenaltySpec{0.05, false});
  EXPECT_NEAR(r.objective, reference_objective(s.matrix(), r.theta_hat.matrix(), 0.05), 1e-9);
  EXPECT_NEAR(glasso_objective(s, r.theta_hat, PenaltySpec{0.05, false}), r.objective, 1e-12);
  Matrix bad = Matrix::Identity(6, 6);
  bad(0, 0) = -1.0;
  EXPECT_EQ(glasso_objective(s, SpdMatrix(bad), PenaltySpec{0.05, false}),
            -std::numeric_limits<double>::infinity());
}

TEST(GlassoFit, KktAndMonotoneSweepsOnRandomInputs) {
  auto rng = make_rng(28);
  for (Index p : {5, 10, 25}) {
    for (double rho : {0.01, 0.1, 0.5}) {
      for (int rep = 0; rep < 3; ++rep) {
        const SpdMatrix s = sample_covariance(rng, random_spd(rng, p), p + 5 + 20 * rep);
        const PenaltySpec pen{rho, false};
        const GlassoResult r = glasso_fit(s, pen);
        EXPECT_TRUE(r.converged);
        EXPECT_LE(kkt_residual(s, r, pen), 1e-4) << "p=" << p << " rho=" << rho;
        for (std::size_t k = 1; k < r.objective_trace.size(); ++k) {
          EXPECT_GE(r.objective_trace[k], r.objective_trace[k - 1] - 1e-9);
        }
        for (Index i = 0; i < p; ++i) EXPECT_NEAR(r.sigma_hat(i, i), s(i, i), 1e-8);
        // An optimum: random feasible perturbations never improve the objective.
        for (int k = 0; k < 5; ++k) {
          Matrix d = 1e-3 * testing_support::gaussian_matrix(rng, p, p);
          d = (0.5 * (d + d.transpose())).eval();
          const SpdMatrix moved(r.theta_hat.matrix() + d);
          EXPECT_LE(glasso_objective(s, moved, pen), r.objective + 1e-10);
        }
      }
    }
  }
}

TEST(GlassoFit, SigmaTimesThetaIsIdentity) {
  auto rng = make_rng(29);
  for (Index p : {5, 10, 25}) {
    for (double rho : {0.01, 0.1, 0.5}) {
      const SpdMatrix s = sample_covariance(rng, random_spd(rng, p), 3 * p);
      const GlassoResult r = glasso_fit(s, PenaltySpec{rho, false});
      const Matrix prod = r.sigma_hat.matrix() * r.theta_hat.matrix();
      EXPECT_LE((prod - Matrix::Identity(p, p)).cwiseAbs().maxCoeff(), 1e-5)
          << "p=" << p << " rho=" << rho;
    }
  }
}

TEST(GlassoFit, PermutationEquivariance) {
  auto rng = make_rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    const Index p = 4 + trial;
    const SpdMatrix s = sample_covariance(rng, random_spd(rng, p), 3 * p);
    const auto perm = testing_support::random_permutation(rng, p);
    const PenaltySpec pen{0.1, false};
    GlassoOptions opts;
    opts.tol = 1e-9;
    const Matrix theta = glasso_fit(s, pen, opts).theta_hat.matrix();
    const Matrix theta_perm =
        glasso_fit(SpdMatrix(testing_support::permute(s.matrix(), perm)), pen, opts).theta_hat.matrix();
    EXPECT_LE((theta_perm - testing_support::permute(theta, perm)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(GlassoFit, WarmStartMatchesColdStart) {
  auto rng = make_rng(31);
  const SpdMatrix s = sample_covariance(rng, random_spd(rng, 12), 40);
  GlassoOptions opts;
  opts.tol = 1e-9;
  const GlassoResult first = glasso_fit(s, PenaltySpec{0.05, false}, opts);
  const GlassoResult cold = glasso_fit(s, PenaltySpec{0.08, false}, opts);
  const GlassoResult warm = glasso_fit(s, PenaltySpec{0.08, false}, opts, &first);
  EXPECT_LE((cold.theta_hat.matrix() - warm.theta_hat.matrix()).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_EQ(edges_from_theta(cold.theta_hat), edges_from_theta(warm.theta_hat));
}

TEST(GlassoFit, SparsityAlongPathIsUsuallyMonotone) {
  // Not a theorem; violations are reported, not failed.
  auto rng = make_rng(32);
  int ok = 0, total = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SpdMatrix s = sample_covariance(rng, random_spd(rng, 10), 30);
    const auto e1 = edges_from_theta(glasso_fit(s, PenaltySpec{0.05, false}).theta_hat).size();
    const auto e2 = edges_from_theta(glasso_fit(s, PenaltySpec{0.15, false}).theta_hat).size();
    ok += e2 <= e1;
    ++total;
  }
  std::cout << "path sparsity monotone in " << ok << " of " << total << " trials\n";
  RecordProperty("monotone_fraction", std::to_string(static_cast<double>(ok) / total));
}
