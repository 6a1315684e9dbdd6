#include "mswarp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mswarp/error.hpp"

namespace mswarp {

WeightMatrix::WeightMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "weight matrix must be square");
  }
  if (!entries_.allFinite() || (entries_.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument, "weights must be finite and nonnegative");
  }
  const double scale = std::max(1.0, entries_.size() ? entries_.maxCoeff() : 0.0);
  if (!is_symmetric(entries_, 1e-12 * scale)) {
    throw Error(ErrorCode::kInvalidArgument, "weight matrix must be symmetric");
  }
}

Matrix squared_distances(const Matrix& a, const Matrix& b) {
  Matrix d(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.rows(); ++j) d(i, j) = (a.row(i) - b.row(j)).squaredNorm();
  }
  return d;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

// Neighbour lists by (distance, index), self excluded.
std::vector<std::vector<Index>> knn_lists(const Matrix& sq, Index k) {
  const Index n = sq.rows();
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(n));
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return sq(i, a) < sq(i, b); });
    auto& list = out[static_cast<std::size_t>(i)];
    for (Index c : order) {
      if (c == i) continue;
      list.push_back(c);
      if (static_cast<Index>(list.size()) == k) break;
    }
  }
  return out;
}

}  // namespace

WeightMatrix heat_kernel_knn(const Matrix& points, Index k, std::optional<double> sigma) {
  const Index n = points.rows();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kOutOfRange, "heat_kernel_knn: need 1 <= k < n, got k=" +
                                            std::to_string(k) + ", n=" + std::to_string(n));
  }
  if (sigma && !(*sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be > 0");
  const Matrix sq = squared_distances(points, points);
  const auto lists = knn_lists(sq, k);

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> edge =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  std::vector<double> lengths;
  for (Index i = 0; i < n; ++i) {
    for (Index j : lists[static_cast<std::size_t>(i)]) {
      edge(i, j) = true;
      edge(j, i) = true;
      lengths.push_back(std::sqrt(sq(i, j)));
    }
  }
  double s = sigma.value_or(median(lengths));
  if (!(s > 0.0)) s = 1.0;
  const double denom = 2.0 * s * s;

  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (edge(i, j)) w(i, j) = std::exp(-sq(i, j) / denom);
    }
  }
  return WeightMatrix(std::move(w));
}

WeightMatrix heat_kernel_knn(const TimeSeries& x, Index k, std::optional<double> sigma) {
  return heat_kernel_knn(x.samples(), k, sigma);
}

Matrix combinatorial_laplacian(const Matrix& w) {
  Matrix l = -w;
  l.diagonal() += w.rowwise().sum();
  return l;
}

GraphMatrices laplacians(const WeightMatrix& w) {
  const Matrix& a = w.entries();
  const Index n = a.rows();
  GraphMatrices g;
  g.degree = a.rowwise().sum();
  for (Index i = 0; i < n; ++i) {
    if (!(g.degree(i) > 0.0)) {
      throw Error(ErrorCode::kIsolatedVertex,
                  "vertex " + std::to_string(i + 1) + " has zero degree");
    }
  }
  g.combinatorial = combinatorial_laplacian(a);
  const Vector inv_sqrt = g.degree.array().rsqrt();
  g.diffusion = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
  g.diffusion = 0.5 * (g.diffusion + g.diffusion.transpose());
  g.normalized = Matrix::Identity(n, n) - g.diffusion;
  return g;
}

WeightMatrix chain_weights(const Matrix& points, Index k0, ChainKernel kernel,
                           std::optional<double> sigma) {
  const Index n = points.rows();
  if (k0 < 1 || k0 >= n) {
    throw Error(ErrorCode::kOutOfRange, "chain_weights: need 1 <= k0 < n");
  }
  double denom = 1.0;
  if (kernel == ChainKernel::kHeat) {
    double s = 0.0;
    if (sigma) {
      if (!(*sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be > 0");
      s = *sigma;
    } else {
      std::vector<double> lag1;
      for (Index i = 0; i + 1 < n; ++i) lag1.push_back((points.row(i) - points.row(i + 1)).norm());
      s = median(lag1);
      if (!(s > 0.0)) s = 1.0;
    }
    denom = 2.0 * s * s;
  }
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index lag = 1; lag <= k0 && i + lag < n; ++lag) {
      const double v = kernel == ChainKernel::kUnit
                           ? 1.0
                           : std::exp(-(points.row(i) - points.row(i + lag)).squaredNorm() / denom);
      w(i, i + lag) = v;
      w(i + lag, i) = v;
    }
  }
  return WeightMatrix(std::move(w));
}

WeightMatrix with_temporal_links(const WeightMatrix& w) {
  Matrix a = w.entries();
  const double top = a.size() > 0 && a.maxCoeff() > 0.0 ? a.maxCoeff() : 1.0;
  for (Index i = 0; i + 1 < a.rows(); ++i) {
    a(i, i + 1) = std::max(a(i, i + 1), top);
    a(i + 1, i) = a(i, i + 1);
  }
  return WeightMatrix(std::move(a));
}

JointGraph joint_weight(const WeightMatrix& wx, const WeightMatrix& wy,
                        const CorrespondenceMatrix& c, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "mu must lie in [0,1]");
  const Index nx = wx.size();
  const Index ny = wy.size();
  if (c.rows() != nx || c.cols() != ny) {
    throw Error(ErrorCode::kShapeMismatch, "joint_weight: correspondence is " +
                                               std::to_string(c.rows()) + "x" +
                                               std::to_string(c.cols()) + ", expected " +
                                               std::to_string(nx) + "x" + std::to_string(ny));
  }
  JointGraph g;
  g.n_x = nx;
  g.n_y = ny;
  g.mu = mu;
  g.weight = Matrix::Zero(nx + ny, nx + ny);
  g.weight.topLeftCorner(nx, nx) = (1.0 - mu) * wx.entries();
  g.weight.bottomRightCorner(ny, ny) = (1.0 - mu) * wy.entries();
  g.weight.topRightCorner(nx, ny) = mu * c.entries();
  g.weight.bottomLeftCorner(ny, nx) = mu * c.entries().transpose();
  g.laplacian = combinatorial_laplacian(g.weight);
  g.degree.resize(nx + ny);
  g.degree.head(nx) = wx.entries().rowwise().sum();
  g.degree.tail(ny) = wy.entries().rowwise().sum();
  return g;
}

LowRankReconstruction low_rank_reconstruct(const Matrix& samples, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tau must be > 0");
  const Index n = samples.rows();
  const Matrix a = samples.transpose();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double threshold = 1.0 / std::sqrt(tau);
  Matrix r = Matrix::Zero(n, n);
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) {
      const double shrink = 1.0 - 1.0 / (tau * s(i) * s(i));
      r.noalias() += shrink * svd.matrixV().col(i) * svd.matrixV().col(i).transpose();
    }
  }
  return {0.5 * (r + r.transpose()), tau};
}

LowRankReconstruction low_rank_reconstruct(const TimeSeries& x, double tau) {
  return low_rank_reconstruct(x.samples(), tau);
}

Matrix block_M(const LowRankReconstruction& rx, const LowRankReconstruction& ry) {
  const Matrix r = block_diagonal(rx.r, ry.r);
  const Matrix i_minus_r = Matrix::Identity(r.rows(), r.cols()) - r;
  Matrix m = i_minus_r.transpose() * i_minus_r;
  return 0.5 * (m + m.transpose());
}

WeightMatrix low_rank_weights(const LowRankReconstruction& rec, Index k) {
  const Index n = rec.r.rows();
  if (k < 1 || k >= n) throw Error(ErrorCode::kOutOfRange, "low_rank_weights: need 1 <= k < n");
  Matrix mag = 0.5 * (rec.r.cwiseAbs() + rec.r.cwiseAbs().transpose());
  mag.diagonal().setZero();
  // Rank by descending magnitude through a negated "distance".
  const auto lists = knn_lists(-mag, k);
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j : lists[static_cast<std::size_t>(i)]) {
      w(i, j) = mag(i, j);
      w(j, i) = mag(i, j);
    }
  }
  return WeightMatrix(std::move(w));
}

}  // namespace mswarp
