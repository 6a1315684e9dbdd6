#pragma once

#include <vector>

#include "mswarp/dtw.hpp"
#include "mswarp/graph.hpp"
#include "mswarp/wavelets.hpp"

namespace mswarp {

/// Solutions of Z L Z^T g = lambda Z D Z^T g, eigenvalues ascending.
struct GeneralizedEigen {
  Vector values;
  Matrix vectors;  // one gamma per column
  Matrix factor;   // F with F F^T = Z D Z^T
};

/// Factors Z D Z^T = F F^T and solves F^+ Z L Z^T (F^T)^+ x = lambda x,
/// returning gamma = (F^T)^+ x. A rank-deficient Z D Z^T restricts the
/// solutions to its range.
GeneralizedEigen generalized_eig_pinv(const Matrix& z, const Matrix& l, const Matrix& d);

/// blockdiag(X^T, Y^T) for sample-per-row inputs: (p+q) x (N_X+N_Y).
Matrix block_data_matrix(const Matrix& x, const Matrix& y);

/// Laplacian of the bipartite graph [0, C; C^T, 0].
Matrix bipartite_laplacian(const CorrespondenceMatrix& c);

struct MmaResult {
  std::vector<Matrix> alpha;  // p x d_k per level
  std::vector<Matrix> beta;   // q x d_k per level
  std::vector<Index> dims;
  Matrix factor;              // F with F F^T = Z D Z^T
  Matrix reduced;             // F^+ Z L Z^T (F^T)^+
  WaveletTree tree;           // built on the normalized reduced^+
};

/// Multiscale manifold alignment of sample-per-row data over a joint graph.
MmaResult mma(const Matrix& x, const Matrix& y, const JointGraph& graph, double epsilon,
              Index levels);

/// Convenience form building heat-kernel kNN graphs with k neighbours.
MmaResult mma(const TimeSeries& x, const TimeSeries& y, const CorrespondenceMatrix& c, double mu,
              double epsilon, Index levels, Index k = 10);

/// [alpha; beta] at `level` reduced to d columns: the Ritz vectors of the
/// reduced operator within the level's span, smallest non-zero values first.
/// Fewer than d columns come back when the span is too small.
Matrix mma_level_map(const MmaResult& result, Index level, Index d);

struct JointEmbedding {
  Matrix fx;
  Matrix fy;
  double mu = 0.0;
  Vector eigenvalues;
};

/// (1 - mu) M + 2 mu L_C.
Matrix lra_operator(const Matrix& m, const CorrespondenceMatrix& c, double mu);

/// d smallest non-zero eigenvectors of lra_operator, split at nx rows.
JointEmbedding lra_from_blocks(const Matrix& m, const CorrespondenceMatrix& c, double mu, Index d);

/// Low-rank alignment. R^(X) and R^(Y) are computed concurrently.
JointEmbedding lra(const TimeSeries& x, const TimeSeries& y, const CorrespondenceMatrix& c,
                   double mu, Index d, double tau);

/// (1 - mu) tr(F^T M F) + 2 mu tr(F^T L_C F) for F = [FX; FY].
double loss_lra(const Matrix& fx, const Matrix& fy, const Matrix& m,
                const CorrespondenceMatrix& c, double mu);

/// mu/2 sum C_ij |FX_i - FY_j|^2 + (1-mu)/2 sum WX_ij |FX_i - FX_j|^2
/// + (1-mu)/2 sum WY_ij |FY_i - FY_j|^2, summed literally.
double loss_ma(const Matrix& fx, const Matrix& fy, const CorrespondenceMatrix& c,
               const WeightMatrix& wx, const WeightMatrix& wy, double mu);

}  // namespace mswarp
