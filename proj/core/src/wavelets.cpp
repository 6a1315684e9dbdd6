#include "mswarp/wavelets.hpp"

#include <cmath>
#include <string>

#include "mswarp/error.hpp"

namespace mswarp {

QrResult rank_revealing_qr(const Matrix& a, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  if (!a.allFinite()) throw Error(ErrorCode::kInvalidArgument, "rank_revealing_qr: non-finite input");
  const Index rows = a.rows();
  const Index cols = a.cols();
  const double threshold = epsilon * spectral_norm(a);

  Matrix res = a;
  Matrix q(rows, std::min(rows, cols));
  Index rank = 0;
  while (rank < std::min(rows, cols)) {
    const Vector norms = res.colwise().norm();
    if (norms.norm() <= threshold) break;
    Index pivot = 0;
    const double top = norms.maxCoeff(&pivot);
    if (top <= threshold && spectral_norm(res) <= threshold) break;
    if (top == 0.0) break;

    Vector v = res.col(pivot) / top;
    for (int pass = 0; pass < 2; ++pass) {
      v -= q.leftCols(rank) * (q.leftCols(rank).transpose() * v);
    }
    const double len = v.norm();
    if (len < 1e-14) {
      res.col(pivot).setZero();
      continue;
    }
    v /= len;
    q.col(rank++) = v;
    res -= v * (v.transpose() * res);
  }
  QrResult out;
  out.q = q.leftCols(rank);
  out.r = out.q.transpose() * a;
  return out;
}

WaveletTree::WaveletTree(std::vector<WaveletLevel> levels, double epsilon, Index max_levels)
    : levels_(std::move(levels)), epsilon_(epsilon), max_levels_(max_levels) {
  if (levels_.empty()) throw Error(ErrorCode::kInvalidArgument, "wavelet tree needs a level");
}

const WaveletLevel& WaveletTree::level(Index j) const {
  if (j < 0 || j >= num_levels()) {
    throw Error(ErrorCode::kOutOfRange, "level " + std::to_string(j) + " outside [0, " +
                                            std::to_string(num_levels()) + ")");
  }
  return levels_[static_cast<std::size_t>(j)];
}

std::vector<Index> WaveletTree::dims() const {
  std::vector<Index> out;
  out.reserve(levels_.size());
  for (const auto& l : levels_) out.push_back(l.op.rows());
  return out;
}

WaveletTree build_dwt(const Matrix& t, const Matrix& phi0, double epsilon, Index max_levels) {
  if (t.rows() != t.cols()) throw Error(ErrorCode::kShapeMismatch, "operator must be square");
  if (!t.allFinite()) throw Error(ErrorCode::kInvalidArgument, "operator has non-finite entries");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  if (max_levels < 0) throw Error(ErrorCode::kInvalidArgument, "max_levels must be >= 0");
  if (phi0.rows() != t.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "initial basis rows must match the operator");
  }
  const Matrix gram = phi0.transpose() * phi0;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument, "initial basis must have orthonormal columns");
  }
  const double norm = spectral_norm(t);
  if (norm > 1.0 + 1e-8) {
    throw Error(ErrorCode::kOperatorNorm,
                "operator norm " + std::to_string(norm) + " exceeds 1; powers diverge");
  }
  const bool symmetric = is_symmetric(t, 1e-12 * std::max(1.0, norm));
  auto tidy = [symmetric](Matrix m) {
    if (symmetric) m = 0.5 * (m + m.transpose());
    return m;
  };

  std::vector<WaveletLevel> levels;
  levels.push_back({phi0, tidy(phi0.transpose() * t * phi0)});
  for (Index j = 1; j <= max_levels; ++j) {
    const Matrix& prev = levels.back().op;
    if (prev.rows() <= 1) break;
    QrResult qr = rank_revealing_qr(prev, epsilon);
    if (qr.q.cols() == 0) break;
    const Matrix rq = qr.r * qr.q;
    levels.push_back({std::move(qr.q), tidy(rq * rq)});
  }
  return WaveletTree(std::move(levels), epsilon, max_levels);
}

WaveletTree build_dwt(const Matrix& t, double epsilon, Index max_levels) {
  return build_dwt(t, Matrix::Identity(t.rows(), t.cols()), epsilon, max_levels);
}

Matrix extended_basis(const WaveletTree& tree, Index j) {
  tree.level(j);
  Matrix out = tree.level(0).basis_local;
  for (Index l = 1; l <= j; ++l) out = out * tree.level(l).basis_local;
  return out;
}

Vector transport_vector(const WaveletTree& tree, const Vector& v, Index j, Transport direction) {
  const Matrix phi = extended_basis(tree, j);
  if (direction == Transport::kToFinest) {
    if (v.size() != phi.cols()) {
      throw Error(ErrorCode::kShapeMismatch, "vector length " + std::to_string(v.size()) +
                                                 " does not match level dimension " +
                                                 std::to_string(phi.cols()));
    }
    return phi * v;
  }
  if (v.size() != phi.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "vector length " + std::to_string(v.size()) +
                                               " does not match finest dimension " +
                                               std::to_string(phi.rows()));
  }
  return phi.transpose() * v;
}

}  // namespace mswarp
