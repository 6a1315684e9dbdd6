#include "mswarp/align.hpp"

#include <future>
#include <string>

#include "mswarp/error.hpp"

namespace mswarp {

GeneralizedEigen generalized_eig_pinv(const Matrix& z, const Matrix& l, const Matrix& d) {
  if (l.rows() != l.cols() || d.rows() != d.cols() || l.rows() != z.cols() ||
      d.rows() != z.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "generalized_eig_pinv: Z is " +
                                               std::to_string(z.rows()) + "x" +
                                               std::to_string(z.cols()) + ", L is " +
                                               std::to_string(l.rows()) + "x" +
                                               std::to_string(l.cols()));
  }
  const Matrix b = z * d * z.transpose();
  GeneralizedEigen out;
  out.factor = psd_factor(0.5 * (b + b.transpose()));
  const Matrix f_pinv = pseudo_inverse(out.factor);
  const Matrix reduced = f_pinv * (z * l * z.transpose()) * f_pinv.transpose();
  const SymmetricEigen eig = symmetric_eigen(reduced);
  out.values = eig.values;
  out.vectors = f_pinv.transpose() * eig.vectors;
  canonicalize_signs(out.vectors);
  return out;
}

Matrix block_data_matrix(const Matrix& x, const Matrix& y) {
  return block_diagonal(x.transpose(), y.transpose());
}

Matrix bipartite_laplacian(const CorrespondenceMatrix& c) {
  const Index nx = c.rows();
  const Index ny = c.cols();
  Matrix w = Matrix::Zero(nx + ny, nx + ny);
  w.topRightCorner(nx, ny) = c.entries();
  w.bottomLeftCorner(ny, nx) = c.entries().transpose();
  return combinatorial_laplacian(w);
}

MmaResult mma(const Matrix& x, const Matrix& y, const JointGraph& graph, double epsilon,
              Index levels) {
  if (x.rows() != graph.n_x || y.rows() != graph.n_y) {
    throw Error(ErrorCode::kShapeMismatch, "mma: data rows do not match the joint graph");
  }
  const Matrix z = block_data_matrix(x, y);
  const Matrix zd = z * graph.degree.asDiagonal();
  Matrix b = zd * z.transpose();
  b = 0.5 * (b + b.transpose());
  Matrix factor = psd_factor(b);
  const Matrix f_pinv = pseudo_inverse(factor);
  Matrix reduced = f_pinv * (z * graph.laplacian * z.transpose()) * f_pinv.transpose();
  reduced = 0.5 * (reduced + reduced.transpose());

  Matrix inv = pseudo_inverse(reduced);
  inv = 0.5 * (inv + inv.transpose());
  const double norm = spectral_norm(inv);
  if (norm > 0.0) inv /= norm;
  WaveletTree tree = build_dwt(inv, epsilon, levels);

  MmaResult out{{}, {}, {}, std::move(factor), std::move(reduced), std::move(tree)};
  const Index p = x.cols();
  for (Index k = 0; k < out.tree.num_levels(); ++k) {
    Matrix joint = f_pinv.transpose() * extended_basis(out.tree, k);
    out.alpha.push_back(joint.topRows(p));
    out.beta.push_back(joint.bottomRows(joint.rows() - p));
    out.dims.push_back(joint.cols());
  }
  return out;
}

MmaResult mma(const TimeSeries& x, const TimeSeries& y, const CorrespondenceMatrix& c, double mu,
              double epsilon, Index levels, Index k) {
  const JointGraph g =
      joint_weight(heat_kernel_knn(x, k), heat_kernel_knn(y, k), c, mu);
  return mma(x.samples(), y.samples(), g, epsilon, levels);
}

Matrix mma_level_map(const MmaResult& result, Index level, Index d) {
  const Matrix phi = extended_basis(result.tree, level);
  const SymmetricEigen ritz = symmetric_eigen(phi.transpose() * result.reduced * phi);
  const std::vector<Index> keep = smallest_nonzero(ritz.values, d);
  Matrix dir = phi * select_columns(ritz.vectors, keep);
  Matrix map = pseudo_inverse(result.factor).transpose() * dir;
  canonicalize_signs(map);
  return map;
}

Matrix lra_operator(const Matrix& m, const CorrespondenceMatrix& c, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "mu must lie in [0,1]");
  if (m.rows() != c.rows() + c.cols() || m.cols() != m.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "lra: M does not match the correspondence shape");
  }
  Matrix a = (1.0 - mu) * m + 2.0 * mu * bipartite_laplacian(c);
  return 0.5 * (a + a.transpose());
}

JointEmbedding lra_from_blocks(const Matrix& m, const CorrespondenceMatrix& c, double mu, Index d) {
  const Matrix a = lra_operator(m, c, mu);
  if (d < 1 || d >= a.rows()) {
    throw Error(ErrorCode::kOutOfRange, "lra: need 1 <= d < N_X + N_Y");
  }
  const SymmetricEigen eig = symmetric_eigen(a);
  const std::vector<Index> keep = smallest_nonzero(eig.values, d);
  if (static_cast<Index>(keep.size()) < d) {
    throw Error(ErrorCode::kOutOfRange, "lra: fewer than d non-zero eigenvalues");
  }
  Matrix f = select_columns(eig.vectors, keep);
  canonicalize_signs(f);
  JointEmbedding out;
  out.fx = f.topRows(c.rows());
  out.fy = f.bottomRows(c.cols());
  out.mu = mu;
  out.eigenvalues.resize(d);
  for (Index i = 0; i < d; ++i) out.eigenvalues(i) = eig.values(keep[static_cast<std::size_t>(i)]);
  return out;
}

JointEmbedding lra(const TimeSeries& x, const TimeSeries& y, const CorrespondenceMatrix& c,
                   double mu, Index d, double tau) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "mu must lie in [0,1]");
  auto rx = std::async(std::launch::async, [&] { return low_rank_reconstruct(x, tau); });
  const LowRankReconstruction ry = low_rank_reconstruct(y, tau);
  return lra_from_blocks(block_M(rx.get(), ry), c, mu, d);
}

double loss_lra(const Matrix& fx, const Matrix& fy, const Matrix& m,
                const CorrespondenceMatrix& c, double mu) {
  if (fx.rows() != c.rows() || fy.rows() != c.cols() || fx.cols() != fy.cols() ||
      m.rows() != fx.rows() + fy.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "loss_lra: inconsistent shapes");
  }
  Matrix f(fx.rows() + fy.rows(), fx.cols());
  f << fx, fy;
  return (1.0 - mu) * (f.transpose() * m * f).trace() +
         2.0 * mu * (f.transpose() * bipartite_laplacian(c) * f).trace();
}

double loss_ma(const Matrix& fx, const Matrix& fy, const CorrespondenceMatrix& c,
               const WeightMatrix& wx, const WeightMatrix& wy, double mu) {
  if (fx.cols() != fy.cols() || fx.rows() != wx.size() || fy.rows() != wy.size() ||
      c.rows() != fx.rows() || c.cols() != fy.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "loss_ma: inconsistent shapes");
  }
  double coupling = 0.0;
  for (Index i = 0; i < fx.rows(); ++i) {
    for (Index j = 0; j < fy.rows(); ++j) {
      const double w = c.entries()(i, j);
      if (w != 0.0) coupling += (fx.row(i) - fy.row(j)).squaredNorm() * w;
    }
  }
  auto intra = [](const Matrix& f, const Matrix& w) {
    double s = 0.0;
    for (Index i = 0; i < f.rows(); ++i) {
      for (Index j = 0; j < f.rows(); ++j) {
        if (w(i, j) != 0.0) s += (f.row(i) - f.row(j)).squaredNorm() * w(i, j);
      }
    }
    return s;
  };
  return 0.5 * mu * coupling + 0.5 * (1.0 - mu) * intra(fx, wx.entries()) +
         0.5 * (1.0 - mu) * intra(fy, wy.entries());
}

}  // namespace mswarp
