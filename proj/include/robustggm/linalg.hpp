#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace robustggm {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense symmetric p x p matrix. Storage is exactly symmetric; positive
/// definiteness is verified when the matrix is factorized.
class SpdMatrix {
 public:
  SpdMatrix() = default;

  /// Accepts a square matrix that is symmetric up to 1e-10 relative error and
  /// stores its exact symmetric part. Throws DimensionMismatch otherwise.
  explicit SpdMatrix(const Matrix& m);

  static SpdMatrix identity(Index p);
  static SpdMatrix diagonal(const Vector& d);

  Index dim() const { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

  /// True when Cholesky factorization succeeds.
  bool is_spd() const;

 private:
  Matrix m_;
};

/// n observations (rows) by p variables (columns), all finite.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Matrix rows);

  Index n() const { return y_.rows(); }
  Index p() const { return y_.cols(); }
  const Matrix& values() const { return y_; }
  Vector row(Index i) const { return y_.row(i).transpose(); }

 private:
  Matrix y_;
};

/// Lower-triangular Cholesky factor L with L * L^T equal to the factorized
/// matrix.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(Matrix lower) : l_(std::move(lower)) {}

  Index dim() const { return l_.rows(); }
  const Matrix& lower() const { return l_; }

  /// Solves (L L^T) x = b.
  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;
  /// Solves L z = b.
  Vector solve_lower(const Vector& b) const;
  double log_det() const;
  Matrix reconstruct() const { return l_ * l_.transpose(); }

 private:
  Matrix l_;
};

/// Pivot acceptance threshold: 1e-12 times the largest diagonal entry.
double spd_tolerance(const Matrix& m);

CholeskyFactor cholesky(const SpdMatrix& m);
CholeskyFactor cholesky(const Matrix& m);

double log_det(const SpdMatrix& m);

SpdMatrix spd_inverse(const SpdMatrix& m);

/// (y - mu)^T psi^{-1} (y - mu) via a triangular solve.
double mahalanobis(const Vector& y, const Vector& mu, const SpdMatrix& psi);
double mahalanobis(const Vector& y, const Vector& mu, const CholeskyFactor& psi_factor);

/// Entry (i, j) of the Schur complement psi_AA - psi_AC psi_CC^{-1} psi_CA with
/// A = {i, j}: the conditional covariance of coordinates i and j given C.
double schur_conditional(const SpdMatrix& psi, Index i, Index j,
                         const std::vector<Index>& given);

struct Partition {
  SpdMatrix block;  // row and column j removed
  Vector column;    // column j without its diagonal entry
  double corner = 0.0;
};

Partition partition_drop(const SpdMatrix& m, Index j);
/// Inverse of partition_drop.
SpdMatrix partition_assemble(const Partition& part, Index j);

/// Sample covariance with divisor n, centred at the column means.
SpdMatrix empirical_covariance(const Dataset& data);

}  // namespace robustggm
