#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mswarp {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Singular values below this fraction of the largest are zero wherever a
// Moore-Penrose pseudoinverse or a PSD factor is formed.
inline constexpr double kPinvRelTol = 1e-10;

// Eigenvalues below this fraction of the largest are "zero" when selecting
// the smallest non-zero eigenpairs.
inline constexpr double kZeroEigenRelTol = 1e-9;

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // columns, orthonormal
};

/// Eigen-decomposition of the symmetric part of `a`.
SymmetricEigen symmetric_eigen(const Matrix& a);

Matrix pseudo_inverse(const Matrix& a, double rel_tol = kPinvRelTol);

double spectral_norm(const Matrix& a);

/// Returns F (rows(b) x r, r = numerical rank) with F F^T = b for a symmetric
/// PSD matrix b.
Matrix psd_factor(const Matrix& b, double rel_tol = kPinvRelTol);

/// Symmetric inverse square root of an SPD matrix.
Matrix inverse_sqrt_spd(const Matrix& a);

/// Flips column signs so the first entry with magnitude above 1e-10 of the
/// column's max is positive.
void canonicalize_signs(Matrix& columns);

/// Indices (ascending eigenvalue order) of the first `count` eigenvalues that
/// are not classified as zero relative to the largest magnitude.
std::vector<Index> smallest_nonzero(const Vector& ascending_values, Index count,
                                    double rel_tol = kZeroEigenRelTol);

/// Columns `idx` of `m`, in order.
Matrix select_columns(const Matrix& m, const std::vector<Index>& idx);

Matrix block_diagonal(const Matrix& a, const Matrix& b);

bool is_symmetric(const Matrix& a, double tol);

}  // namespace mswarp
