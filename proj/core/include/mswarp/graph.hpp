#pragma once

#include <optional>

#include "mswarp/data.hpp"
#include "mswarp/dtw.hpp"

namespace mswarp {

/// Symmetric nonnegative similarity matrix.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  /// Throws Error(kInvalidArgument) unless square, symmetric within 1e-12
  /// (relative to the largest entry) and nonnegative.
  explicit WeightMatrix(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  Index size() const noexcept { return entries_.rows(); }

 private:
  Matrix entries_;
};

struct GraphMatrices {
  Vector degree;        // D_ii = sum_j W_ij
  Matrix combinatorial; // D - W
  Matrix normalized;    // I - D^{-1/2} W D^{-1/2}
  Matrix diffusion;     // I - normalized
};

/// Heat-kernel weights exp(-|xi - xj|^2 / (2 sigma^2)) on the k-nearest-
/// neighbour graph, symmetrized by the mutual-or rule. Without `sigma` the
/// bandwidth is the median kNN edge length.
WeightMatrix heat_kernel_knn(const Matrix& points, Index k, std::optional<double> sigma = {});
WeightMatrix heat_kernel_knn(const TimeSeries& x, Index k, std::optional<double> sigma = {});

/// Throws Error(kIsolatedVertex) naming the first zero-degree vertex.
GraphMatrices laplacians(const WeightMatrix& w);

/// diag(W 1) - W for any square matrix.
Matrix combinatorial_laplacian(const Matrix& w);

enum class ChainKernel { kUnit, kHeat };

/// Banded graph linking each sample to its next k0 successors. The heat
/// variant uses the median lag-1 distance as bandwidth unless given.
WeightMatrix chain_weights(const Matrix& points, Index k0, ChainKernel kernel,
                           std::optional<double> sigma = {});

/// Adds edges (i, i+1) carrying the graph's largest weight (1 for an empty
/// graph). Keeps time-series graphs connected across gaps.
WeightMatrix with_temporal_links(const WeightMatrix& w);

/// Two data sets coupled through a correspondence matrix C.
///
///   weight    = [(1-mu) WX, mu C; mu C^T, (1-mu) WY]
///   laplacian = diag(weight 1) - weight
///             = [(1-mu) LX + Omega1, -Omega2; -Omega3, (1-mu) LY + Omega4]
///   degree    = blockdiag(DX, DY)   (unscaled; the generalized-eigen metric)
///
/// with Omega1 = mu diag(C 1), Omega4 = mu diag(C^T 1), Omega2 = mu C,
/// Omega3 = mu C^T.
struct JointGraph {
  Matrix weight;
  Matrix laplacian;
  Vector degree;
  Index n_x = 0;
  Index n_y = 0;
  double mu = 0.0;
};

JointGraph joint_weight(const WeightMatrix& wx, const WeightMatrix& wy,
                        const CorrespondenceMatrix& c, double mu);

/// R minimizing (tau/2) ||A - A R||_F^2 + ||R||_* for A = samples^T
/// (features x samples).
struct LowRankReconstruction {
  Matrix r;
  double tau = 1.0;
};

LowRankReconstruction low_rank_reconstruct(const Matrix& samples, double tau);
LowRankReconstruction low_rank_reconstruct(const TimeSeries& x, double tau);

/// (I - R)^T (I - R) for R = blockdiag(RX, RY).
Matrix block_M(const LowRankReconstruction& rx, const LowRankReconstruction& ry);

/// Sparse graph from reconstruction coefficients: |R| symmetrized, each row
/// keeping its k largest off-diagonal magnitudes (mutual-or).
WeightMatrix low_rank_weights(const LowRankReconstruction& rec, Index k);

/// Pairwise squared Euclidean distances between rows.
Matrix squared_distances(const Matrix& a, const Matrix& b);

}  // namespace mswarp
