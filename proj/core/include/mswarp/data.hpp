#pragma once

#include <string>
#include <vector>

#include "mswarp/linalg.hpp"

namespace mswarp {

/// Time-ordered samples: one row per time step, one column per feature.
/// Rows are never reordered.
class TimeSeries {
 public:
  /// Throws Error(kInvalidArgument) unless rows >= 2, cols >= 1 and every
  /// entry is finite.
  explicit TimeSeries(Matrix samples, std::string name = {});

  const Matrix& samples() const noexcept { return samples_; }
  Index length() const noexcept { return samples_.rows(); }
  Index dims() const noexcept { return samples_.cols(); }
  const std::string& name() const noexcept { return name_; }

 private:
  Matrix samples_;
  std::string name_;
};

/// Zero-based index pair (i into X, j into Y). Serialized 1-based.
struct IndexPair {
  Index i = 0;
  Index j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Monotone warping path from (0,0) to (n-1,m-1) whose steps are (1,0),
/// (0,1) or (1,1).
class AlignmentPath {
 public:
  /// Throws Error(kInvalidPath) when the pairs violate the step constraints.
  explicit AlignmentPath(std::vector<IndexPair> pairs);

  /// 1-based convenience, e.g. {{1,1},{1,2},{2,2}}.
  static AlignmentPath from_one_based(const std::vector<std::pair<Index, Index>>& pairs);
  static AlignmentPath diagonal(Index n);

  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  Index rows() const noexcept { return pairs_.back().i + 1; }
  Index cols() const noexcept { return pairs_.back().j + 1; }

  friend bool operator==(const AlignmentPath&, const AlignmentPath&) = default;

 private:
  std::vector<IndexPair> pairs_;
};

bool is_valid_path(const std::vector<IndexPair>& pairs);

/// Area between the two piecewise-linear path curves after mapping (i, j) to
/// ((i+1)/n, (j+1)/m). Symmetric, in [0, 1], zero iff the paths are equal.
double alignment_error(const AlignmentPath& p, const AlignmentPath& p_star);

}  // namespace mswarp
