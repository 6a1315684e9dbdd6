#include "mswarp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mswarp {

SymmetricEigen symmetric_eigen(const Matrix& a) {
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix pseudo_inverse(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && a.isApprox(a.transpose(), 0.0)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix psd_factor(const Matrix& b, double rel_tol) {
  const SymmetricEigen eig = symmetric_eigen(b);
  const double top = eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Index> keep;
  for (Index i = eig.values.size() - 1; i >= 0; --i) {
    if (eig.values(i) > rel_tol * top && eig.values(i) > 0.0) keep.push_back(i);
  }
  Matrix f(b.rows(), static_cast<Index>(keep.size()));
  for (Index c = 0; c < f.cols(); ++c) {
    f.col(c) = eig.vectors.col(keep[c]) * std::sqrt(eig.values(keep[c]));
  }
  return f;
}

Matrix inverse_sqrt_spd(const Matrix& a) {
  const SymmetricEigen eig = symmetric_eigen(a);
  Vector inv = eig.values.array().max(0.0).sqrt().inverse();
  return eig.vectors * inv.asDiagonal() * eig.vectors.transpose();
}

void canonicalize_signs(Matrix& columns) {
  for (Index c = 0; c < columns.cols(); ++c) {
    const double scale = columns.col(c).cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (Index r = 0; r < columns.rows(); ++r) {
      if (std::abs(columns(r, c)) > 1e-10 * scale) {
        if (columns(r, c) < 0.0) columns.col(c) *= -1.0;
        break;
      }
    }
  }
}

std::vector<Index> smallest_nonzero(const Vector& ascending_values, Index count,
                                    double rel_tol) {
  std::vector<Index> out;
  if (ascending_values.size() == 0) return out;
  const double top = ascending_values.cwiseAbs().maxCoeff();
  const double cutoff = rel_tol * top;
  for (Index i = 0; i < ascending_values.size() && static_cast<Index>(out.size()) < count; ++i) {
    if (ascending_values(i) > cutoff) out.push_back(i);
  }
  return out;
}

Matrix select_columns(const Matrix& m, const std::vector<Index>& idx) {
  Matrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Index>(c)) = m.col(idx[c]);
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace mswarp
