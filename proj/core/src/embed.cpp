#include "mswarp/embed.hpp"

#include <queue>
#include <string>

#include "mswarp/align.hpp"
#include "mswarp/error.hpp"
#include "mswarp/wavelets.hpp"

namespace mswarp {

bool is_connected(const WeightMatrix& w) {
  const Matrix& a = w.entries();
  const Index n = a.rows();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Index> todo;
  todo.push(0);
  seen[0] = 1;
  Index count = 1;
  while (!todo.empty()) {
    const Index v = todo.front();
    todo.pop();
    for (Index u = 0; u < n; ++u) {
      if (a(v, u) > 0.0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        todo.push(u);
      }
    }
  }
  return count == n;
}

namespace {

void require_connected(const WeightMatrix& w) {
  if (!is_connected(w)) throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
}

Matrix pick_smallest_nonzero(const Vector& values, const Matrix& vectors, Index d,
                             const char* what) {
  const std::vector<Index> keep = smallest_nonzero(values, d);
  if (static_cast<Index>(keep.size()) < d) {
    throw Error(ErrorCode::kOutOfRange, std::string(what) + ": only " +
                                            std::to_string(keep.size()) +
                                            " non-zero eigenvalues, d=" + std::to_string(d));
  }
  Matrix out = select_columns(vectors, keep);
  canonicalize_signs(out);
  return out;
}

}  // namespace

Embedding laplacian_eigenmaps(const WeightMatrix& w, Index d) {
  if (d < 1 || d >= w.size()) throw Error(ErrorCode::kOutOfRange, "eigenmaps: need 1 <= d < n");
  require_connected(w);
  const GraphMatrices g = laplacians(w);
  const SymmetricEigen eig = symmetric_eigen(g.normalized);
  return {pick_smallest_nonzero(eig.values, eig.vectors, d, "laplacian_eigenmaps"), std::nullopt};
}

LinearMap lpp(const TimeSeries& x, const WeightMatrix& w, Index d) {
  if (w.size() != x.length()) {
    throw Error(ErrorCode::kShapeMismatch, "lpp: graph size differs from series length");
  }
  if (d < 1 || d > x.dims()) throw Error(ErrorCode::kOutOfRange, "lpp: need 1 <= d <= features");
  require_connected(w);
  const GraphMatrices g = laplacians(w);
  const Matrix z = x.samples().transpose();
  const GeneralizedEigen ge =
      generalized_eig_pinv(z, g.normalized, Matrix::Identity(x.length(), x.length()));
  LinearMap out;
  out.map = pick_smallest_nonzero(ge.values, ge.vectors, d, "lpp");
  out.factor = ge.factor;
  return out;
}

std::vector<Embedding> multiscale_eigenmaps(const WeightMatrix& w, double epsilon, Index levels) {
  require_connected(w);
  const GraphMatrices g = laplacians(w);
  const WaveletTree tree = build_dwt(g.diffusion, epsilon, levels);
  std::vector<Embedding> out;
  for (Index j = 0; j < tree.num_levels(); ++j) out.push_back({extended_basis(tree, j), j});
  return out;
}

std::vector<LinearMap> multiscale_lpp(const TimeSeries& x, const WeightMatrix& w, double epsilon,
                                      Index levels) {
  if (w.size() != x.length()) {
    throw Error(ErrorCode::kShapeMismatch, "multiscale_lpp: graph size differs from series length");
  }
  require_connected(w);
  const GraphMatrices g = laplacians(w);
  const Matrix z = x.samples().transpose();
  Matrix b = z * z.transpose();
  const Matrix factor = psd_factor(0.5 * (b + b.transpose()));
  const Matrix f_pinv = pseudo_inverse(factor);
  Matrix t = pseudo_inverse(f_pinv * (z * g.normalized * z.transpose()) * f_pinv.transpose());
  t = 0.5 * (t + t.transpose());
  const double norm = spectral_norm(t);
  if (norm > 0.0) t /= norm;
  const WaveletTree tree = build_dwt(t, epsilon, levels);
  std::vector<LinearMap> out;
  for (Index j = 0; j < tree.num_levels(); ++j) {
    out.push_back({f_pinv.transpose() * extended_basis(tree, j), factor, j});
  }
  return out;
}

Index select_level(const std::vector<Index>& dims, Index d) {
  for (Index j = static_cast<Index>(dims.size()) - 1; j > 0; --j) {
    if (dims[static_cast<std::size_t>(j)] >= d) return j;
  }
  return 0;
}

Matrix rayleigh_ritz(const Matrix& basis, const Matrix& op, Index d) {
  if (op.rows() != basis.rows() || op.cols() != basis.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "rayleigh_ritz: operator does not match basis");
  }
  const SymmetricEigen ritz = symmetric_eigen(basis.transpose() * op * basis);
  Matrix out = basis * pick_smallest_nonzero(ritz.values, ritz.vectors, d, "rayleigh_ritz");
  canonicalize_signs(out);
  return out;
}

}  // namespace mswarp
