#pragma once

#include <functional>

#include "mswarp/data.hpp"

namespace mswarp {

using RowRef = Eigen::Ref<const Eigen::RowVectorXd>;

/// Nonnegative dissimilarity between one sample of X and one sample of Y.
using SampleDistance = std::function<double(RowRef, RowRef)>;

double squared_euclidean(RowRef a, RowRef b);

struct DtwResult {
  AlignmentPath path;
  double cost = 0.0;
};

/// Optimal monotone alignment over a precomputed n x m cost matrix.
/// Ties prefer the diagonal step, then (1,0), then (0,1).
DtwResult dtw_from_cost(const Matrix& cost);

/// Throws Error(kShapeMismatch) when `dist` is the default squared Euclidean
/// distance and the feature counts differ.
DtwResult dtw_align(const Matrix& x, const Matrix& y, const SampleDistance& dist = squared_euclidean);
DtwResult dtw_align(const TimeSeries& x, const TimeSeries& y,
                    const SampleDistance& dist = squared_euclidean);

/// 0/1 matrix (n x m) or weighted inter-set correspondence weights.
class CorrespondenceMatrix {
 public:
  CorrespondenceMatrix() = default;
  explicit CorrespondenceMatrix(Matrix entries);

  /// Endpoint-only matrix: ones at (1,1) and (n,m).
  static CorrespondenceMatrix endpoints(Index n, Index m);

  const Matrix& entries() const noexcept { return entries_; }
  Index rows() const noexcept { return entries_.rows(); }
  Index cols() const noexcept { return entries_.cols(); }

  friend bool operator==(const CorrespondenceMatrix& a, const CorrespondenceMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_.cols() == b.entries_.cols() &&
           a.entries_ == b.entries_;
  }

 private:
  Matrix entries_;
};

/// Throws Error(kOutOfRange) if the path leaves the n x m grid.
CorrespondenceMatrix path_to_matrix(const AlignmentPath& p, Index n, Index m);

/// True iff W is the 0/1 matrix of some valid alignment path.
bool validate_dtw_matrix(const CorrespondenceMatrix& w);

/// Inverse of path_to_matrix. Throws Error(kInvalidPath) if W is not a DTW matrix.
AlignmentPath matrix_to_path(const CorrespondenceMatrix& w);

}  // namespace mswarp
