#include "mswarp/dtw.hpp"

#include <cstdint>
#include <vector>

#include "mswarp/error.hpp"

namespace mswarp {

double squared_euclidean(RowRef a, RowRef b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "squared_euclidean: feature counts differ");
  }
  return (a - b).squaredNorm();
}

namespace {

enum Step : std::uint8_t { kStart = 0, kDiagonal = 1, kDown = 2, kRight = 3 };

}  // namespace

DtwResult dtw_from_cost(const Matrix& cost) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  if (n == 0 || m == 0) throw Error(ErrorCode::kInvalidArgument, "dtw: empty sequence");
  Matrix acc(n, m);
  std::vector<std::uint8_t> step(static_cast<std::size_t>(n * m), kStart);
  auto at = [m](Index i, Index j) { return static_cast<std::size_t>(i * m + j); };

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (i == 0 && j == 0) {
        acc(0, 0) = cost(0, 0);
        continue;
      }
      double best = 0.0;
      std::uint8_t dir = kStart;
      if (i > 0 && j > 0) {
        best = acc(i - 1, j - 1);
        dir = kDiagonal;
      }
      if (i > 0 && (dir == kStart || acc(i - 1, j) < best)) {
        best = acc(i - 1, j);
        dir = kDown;
      }
      if (j > 0 && (dir == kStart || acc(i, j - 1) < best)) {
        best = acc(i, j - 1);
        dir = kRight;
      }
      acc(i, j) = best + cost(i, j);
      step[at(i, j)] = dir;
    }
  }

  std::vector<IndexPair> reversed;
  reversed.reserve(static_cast<std::size_t>(n + m));
  Index i = n - 1;
  Index j = m - 1;
  while (true) {
    reversed.push_back({i, j});
    const std::uint8_t dir = step[at(i, j)];
    if (dir == kStart) break;
    if (dir == kDiagonal) {
      --i;
      --j;
    } else if (dir == kDown) {
      --i;
    } else {
      --j;
    }
  }
  return {AlignmentPath({reversed.rbegin(), reversed.rend()}), acc(n - 1, m - 1)};
}

DtwResult dtw_align(const Matrix& x, const Matrix& y, const SampleDistance& dist) {
  if (x.rows() == 0 || y.rows() == 0) throw Error(ErrorCode::kInvalidArgument, "dtw: empty sequence");
  Matrix cost(x.rows(), y.rows());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < y.rows(); ++j) cost(i, j) = dist(x.row(i), y.row(j));
  }
  return dtw_from_cost(cost);
}

DtwResult dtw_align(const TimeSeries& x, const TimeSeries& y, const SampleDistance& dist) {
  return dtw_align(x.samples(), y.samples(), dist);
}

CorrespondenceMatrix::CorrespondenceMatrix(Matrix entries) : entries_(std::move(entries)) {
  if ((entries_.array() < 0.0).any() || !entries_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "correspondence weights must be finite and >= 0");
  }
}

CorrespondenceMatrix CorrespondenceMatrix::endpoints(Index n, Index m) {
  Matrix w = Matrix::Zero(n, m);
  w(0, 0) = 1.0;
  w(n - 1, m - 1) = 1.0;
  return CorrespondenceMatrix(std::move(w));
}

CorrespondenceMatrix path_to_matrix(const AlignmentPath& p, Index n, Index m) {
  Matrix w = Matrix::Zero(n, m);
  for (const IndexPair& q : p.pairs()) {
    if (q.i < 0 || q.j < 0 || q.i >= n || q.j >= m) {
      throw Error(ErrorCode::kOutOfRange, "path index (" + std::to_string(q.i + 1) + "," +
                                              std::to_string(q.j + 1) + ") outside " +
                                              std::to_string(n) + "x" + std::to_string(m));
    }
    w(q.i, q.j) = 1.0;
  }
  return CorrespondenceMatrix(std::move(w));
}

namespace {

// Per-row [first, last] column of the ones; false when the row layout cannot
// come from a path.
bool row_ranges(const Matrix& w, std::vector<Index>& first, std::vector<Index>& last) {
  const Index n = w.rows();
  const Index m = w.cols();
  first.assign(static_cast<std::size_t>(n), -1);
  last.assign(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double v = w(i, j);
      if (v != 0.0 && v != 1.0) return false;
      if (v == 1.0) {
        auto& f = first[static_cast<std::size_t>(i)];
        auto& l = last[static_cast<std::size_t>(i)];
        if (f < 0) {
          f = j;
        } else if (l != j - 1) {
          return false;  // gap between ones
        }
        l = j;
      }
    }
    if (first[static_cast<std::size_t>(i)] < 0) return false;  // zero row
  }
  if (first.front() != 0 || last.back() != m - 1) return false;
  for (Index i = 0; i + 1 < n; ++i) {
    const Index next = first[static_cast<std::size_t>(i + 1)];
    const Index prev_end = last[static_cast<std::size_t>(i)];
    if (next != prev_end && next != prev_end + 1) return false;
  }
  return true;
}

}  // namespace

bool validate_dtw_matrix(const CorrespondenceMatrix& w) {
  if (w.rows() == 0 || w.cols() == 0) return false;
  std::vector<Index> first, last;
  return row_ranges(w.entries(), first, last);
}

AlignmentPath matrix_to_path(const CorrespondenceMatrix& w) {
  std::vector<Index> first, last;
  if (w.rows() == 0 || w.cols() == 0 || !row_ranges(w.entries(), first, last)) {
    throw Error(ErrorCode::kInvalidPath, "matrix is not a DTW matrix");
  }
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = first[static_cast<std::size_t>(i)]; j <= last[static_cast<std::size_t>(i)]; ++j) {
      pairs.push_back({i, j});
    }
  }
  return AlignmentPath(std::move(pairs));
}

}  // namespace mswarp
