#pragma once

#include <vector>

#include "mswarp/linalg.hpp"

namespace mswarp {

struct QrResult {
  Matrix q;  // column-orthonormal, one column per retained direction
  Matrix r;  // q^T a
};

/// Column-pivoted Gram-Schmidt that stops once ||A - QR||_2 <= epsilon ||A||_2.
QrResult rank_revealing_qr(const Matrix& a, double epsilon);

/// One level of a diffusion-wavelet tree.
struct WaveletLevel {
  Matrix basis_local;  // [phi_j]_{phi_{j-1}}; for j = 0 the initial basis
  Matrix op;           // T_j = [T^{2^j}]_{phi_j}^{phi_j}
};

class WaveletTree {
 public:
  WaveletTree(std::vector<WaveletLevel> levels, double epsilon, Index max_levels);

  Index num_levels() const noexcept { return static_cast<Index>(levels_.size()); }
  const WaveletLevel& level(Index j) const;
  /// p_j for every level.
  std::vector<Index> dims() const;
  /// Rows of the finest representation.
  Index finest_size() const noexcept { return levels_.front().basis_local.rows(); }
  double epsilon() const noexcept { return epsilon_; }
  Index max_levels() const noexcept { return max_levels_; }

 private:
  std::vector<WaveletLevel> levels_;
  double epsilon_;
  Index max_levels_;
};

/// Builds levels 0..J. Level 0 compresses T onto phi0; each further level
/// takes an epsilon-rank-revealing QR of the previous compressed operator
/// and squares it in the new basis. Stops early when p_j <= 1.
///
/// Throws Error(kOperatorNorm) if ||T||_2 > 1 + 1e-8 and
/// Error(kInvalidArgument) for a non-orthonormal phi0.
WaveletTree build_dwt(const Matrix& t, const Matrix& phi0, double epsilon, Index max_levels);
WaveletTree build_dwt(const Matrix& t, double epsilon, Index max_levels);

/// [phi_j]_{phi_0}: n x p_j. Throws Error(kOutOfRange) for a bad level.
Matrix extended_basis(const WaveletTree& tree, Index j);

enum class Transport { kToFinest, kToLevel };

/// kToFinest maps level-j coefficients to finest coordinates; kToLevel
/// projects finest coordinates onto level j.
Vector transport_vector(const WaveletTree& tree, const Vector& v, Index j, Transport direction);

}  // namespace mswarp
