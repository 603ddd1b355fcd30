#include "robustggm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robustggm/errors.hpp"

namespace robustggm {

SpdMatrix::SpdMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("SpdMatrix requires a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DimensionMismatch("SpdMatrix input is not symmetric");
  }
  // (a + b) / 2 is commutative in floating point, so the result is exactly
  // symmetric.
  m_ = 0.5 * (m + m.transpose());
}

SpdMatrix SpdMatrix::identity(Index p) { return SpdMatrix(Matrix::Identity(p, p)); }

SpdMatrix SpdMatrix::diagonal(const Vector& d) { return SpdMatrix(Matrix(d.asDiagonal())); }

bool SpdMatrix::is_spd() const {
  try {
    cholesky(*this);
    return true;
  } catch (const NotPositiveDefinite&) {
    return false;
  }
}

Dataset::Dataset(Matrix rows) : y_(std::move(rows)) {
  if (y_.rows() < 1 || y_.cols() < 1) {
    throw InvalidArgument("Dataset needs at least one row and one column");
  }
  if (!y_.allFinite()) {
    throw InvalidArgument("Dataset contains non-finite values");
  }
}

Vector CholeskyFactor::solve(const Vector& b) const {
  if (b.size() != dim()) throw DimensionMismatch("CholeskyFactor::solve: size mismatch");
  Vector z = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.transpose().triangularView<Eigen::Upper>().solve(z);
}

Matrix CholeskyFactor::solve(const Matrix& b) const {
  if (b.rows() != dim()) throw DimensionMismatch("CholeskyFactor::solve: size mismatch");
  Matrix z = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.transpose().triangularView<Eigen::Upper>().solve(z);
}

Vector CholeskyFactor::solve_lower(const Vector& b) const {
  if (b.size() != dim()) throw DimensionMismatch("CholeskyFactor::solve_lower: size mismatch");
  return l_.triangularView<Eigen::Lower>().solve(b);
}

double CholeskyFactor::log_det() const {
  double acc = 0.0;
  for (Index i = 0; i < dim(); ++i) acc += std::log(l_(i, i));
  return 2.0 * acc;
}

double spd_tolerance(const Matrix& m) { return 1e-12 * m.diagonal().maxCoeff(); }

CholeskyFactor cholesky(const Matrix& m) {
  const Index p = m.rows();
  if (p != m.cols() || p == 0) throw DimensionMismatch("cholesky: matrix must be square");
  const double tol = spd_tolerance(m);
  Matrix l = Matrix::Zero(p, p);
  for (Index j = 0; j < p; ++j) {
    double pivot = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > tol) || !(pivot > 0.0)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " is " +
                                std::to_string(pivot));
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (Index i = j + 1; i < p; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / d;
    }
  }
  return CholeskyFactor(std::move(l));
}

CholeskyFactor cholesky(const SpdMatrix& m) { return cholesky(m.matrix()); }

double log_det(const SpdMatrix& m) { return cholesky(m).log_det(); }

SpdMatrix spd_inverse(const SpdMatrix& m) {
  const auto factor = cholesky(m);
  Matrix inv = factor.solve(Matrix(Matrix::Identity(m.dim(), m.dim())));
  return SpdMatrix(0.5 * (inv + inv.transpose()));
}

double mahalanobis(const Vector& y, const Vector& mu, const CholeskyFactor& psi_factor) {
  if (y.size() != mu.size() || y.size() != psi_factor.dim()) {
    throw DimensionMismatch("mahalanobis: dimensions of y, mu and psi disagree");
  }
  return psi_factor.solve_lower(y - mu).squaredNorm();
}

double mahalanobis(const Vector& y, const Vector& mu, const SpdMatrix& psi) {
  if (y.size() != mu.size() || y.size() != psi.dim()) {
    throw DimensionMismatch("mahalanobis: dimensions of y, mu and psi disagree");
  }
  return mahalanobis(y, mu, cholesky(psi));
}

double schur_conditional(const SpdMatrix& psi, Index i, Index j,
                         const std::vector<Index>& given) {
  const Index p = psi.dim();
  auto in_range = [p](Index k) { return k >= 0 && k < p; };
  if (!in_range(i) || !in_range(j)) throw IndexOutOfRange("schur_conditional: target index");
  if (i == j) throw InvalidArgument("schur_conditional: targets must differ");
  for (Index c : given) {
    if (!in_range(c)) throw IndexOutOfRange("schur_conditional: conditioning index");
    if (c == i || c == j) throw InvalidArgument("schur_conditional: target inside conditioning set");
  }
  if (given.empty()) return psi(i, j);

  const auto c = static_cast<Index>(given.size());
  Matrix cc(c, c);
  Vector ic(c), jc(c);
  for (Index a = 0; a < c; ++a) {
    ic(a) = psi(i, given[a]);
    jc(a) = psi(given[a], j);
    for (Index b = 0; b < c; ++b) cc(a, b) = psi(given[a], given[b]);
  }
  const auto factor = cholesky(cc);
  return psi(i, j) - ic.dot(factor.solve(jc));
}

Partition partition_drop(const SpdMatrix& m, Index j) {
  const Index p = m.dim();
  if (j < 0 || j >= p) throw IndexOutOfRange("partition_drop: index " + std::to_string(j));
  if (p == 1) throw InvalidArgument("partition_drop: cannot partition a 1x1 matrix");
  Matrix block(p - 1, p - 1);
  Vector column(p - 1);
  for (Index a = 0, ra = 0; a < p; ++a) {
    if (a == j) continue;
    column(ra) = m(a, j);
    for (Index b = 0, rb = 0; b < p; ++b) {
      if (b == j) continue;
      block(ra, rb++) = m(a, b);
    }
    ++ra;
  }
  return {SpdMatrix(block), std::move(column), m(j, j)};
}

SpdMatrix partition_assemble(const Partition& part, Index j) {
  const Index p = part.block.dim() + 1;
  if (j < 0 || j >= p) throw IndexOutOfRange("partition_assemble: index " + std::to_string(j));
  if (part.column.size() != p - 1) throw DimensionMismatch("partition_assemble: column size");
  Matrix m(p, p);
  m(j, j) = part.corner;
  for (Index a = 0, ra = 0; a < p; ++a) {
    if (a == j) continue;
    m(a, j) = m(j, a) = part.column(ra);
    for (Index b = 0, rb = 0; b < p; ++b) {
      if (b == j) continue;
      m(a, b) = part.block(ra, rb++);
    }
    ++ra;
  }
  return SpdMatrix(m);
}

SpdMatrix empirical_covariance(const Dataset& data) {
  const Matrix& y = data.values();
  const Vector mean = y.colwise().mean().transpose();
  const Matrix centred = y.rowwise() - mean.transpose();
  Matrix s = centred.transpose() * centred / static_cast<double>(data.n());
  return SpdMatrix(0.5 * (s + s.transpose()));
}

}  // namespace robustggm
