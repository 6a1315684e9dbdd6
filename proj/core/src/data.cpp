#include "mswarp/data.hpp"

#include <cmath>

#include "mswarp/error.hpp"

namespace mswarp {

TimeSeries::TimeSeries(Matrix samples, std::string name)
    : samples_(std::move(samples)), name_(std::move(name)) {
  if (samples_.rows() < 2 || samples_.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "time series needs at least 2 rows and 1 column, got " +
                    std::to_string(samples_.rows()) + "x" + std::to_string(samples_.cols()));
  }
  if (!samples_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "time series contains non-finite entries");
  }
}

bool is_valid_path(const std::vector<IndexPair>& pairs) {
  if (pairs.empty()) return false;
  if (pairs.front().i != 0 || pairs.front().j != 0) return false;
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    const Index di = pairs[k].i - pairs[k - 1].i;
    const Index dj = pairs[k].j - pairs[k - 1].j;
    const bool ok = (di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1);
    if (!ok) return false;
  }
  return true;
}

AlignmentPath::AlignmentPath(std::vector<IndexPair> pairs) : pairs_(std::move(pairs)) {
  if (!is_valid_path(pairs_)) {
    throw Error(ErrorCode::kInvalidPath,
                "alignment path must start at (1,1) and advance by (1,0), (0,1) or (1,1)");
  }
}

AlignmentPath AlignmentPath::from_one_based(const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<IndexPair> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) out.push_back({i - 1, j - 1});
  return AlignmentPath(std::move(out));
}

AlignmentPath AlignmentPath::diagonal(Index n) {
  std::vector<IndexPair> out;
  for (Index k = 0; k < n; ++k) out.push_back({k, k});
  return AlignmentPath(std::move(out));
}

namespace {

// Height of the curve just after column i (top of any vertical run) and just
// before it (bottom of the run), in grid units.
struct ColumnSpan {
  std::vector<Index> low;
  std::vector<Index> high;
};

ColumnSpan column_spans(const AlignmentPath& p) {
  const auto n = static_cast<std::size_t>(p.rows());
  ColumnSpan span{std::vector<Index>(n, -1), std::vector<Index>(n, -1)};
  for (const IndexPair& q : p.pairs()) {
    const auto i = static_cast<std::size_t>(q.i);
    if (span.low[i] < 0 || q.j < span.low[i]) span.low[i] = q.j;
    if (q.j > span.high[i]) span.high[i] = q.j;
  }
  return span;
}

// Integral over [0, h] of |u0 + (u1 - u0) t / h|.
double abs_linear_integral(double u0, double u1, double h) {
  if (u0 * u1 >= 0.0) return 0.5 * h * std::abs(u0 + u1);
  return 0.5 * h * (u0 * u0 + u1 * u1) / (std::abs(u0) + std::abs(u1));
}

}  // namespace

double alignment_error(const AlignmentPath& p, const AlignmentPath& p_star) {
  if (p.rows() != p_star.rows() || p.cols() != p_star.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "alignment_error: paths cover different (n, m)");
  }
  const Index n = p.rows();
  const double m = static_cast<double>(p.cols());
  const double h = 1.0 / static_cast<double>(n);
  const ColumnSpan a = column_spans(p);
  const ColumnSpan b = column_spans(p_star);
  double area = 0.0;
  for (Index i = 0; i + 1 < n; ++i) {
    const auto c = static_cast<std::size_t>(i);
    const double u0 = static_cast<double>(a.high[c] - b.high[c]) / m;
    const double u1 = static_cast<double>(a.low[c + 1] - b.low[c + 1]) / m;
    area += abs_linear_integral(u0, u1, h);
  }
  return area;
}

}  // namespace mswarp
