#pragma once

#include <optional>
#include <vector>

#include "mswarp/data.hpp"
#include "mswarp/graph.hpp"

namespace mswarp {

/// Row i is the embedded sample y_i.
struct Embedding {
  Matrix coords;
  std::optional<Index> level;
};

/// Linear projection x -> map^T x for samples stored as rows.
struct LinearMap {
  Matrix map;     // input dim x output dim
  Matrix factor;  // F with F F^T = X X^T
  std::optional<Index> level;

  Matrix apply(const Matrix& samples) const { return samples * map; }
};

bool is_connected(const WeightMatrix& w);

/// Eigenvectors of the normalized Laplacian for the d smallest non-zero
/// eigenvalues. Throws Error(kDisconnectedGraph) or Error(kOutOfRange).
Embedding laplacian_eigenmaps(const WeightMatrix& w, Index d);

/// Solves X L X^T v = lambda X X^T v (L normalized, X features x samples)
/// and keeps the d smallest non-zero eigenvalues.
LinearMap lpp(const TimeSeries& x, const WeightMatrix& w, Index d);

/// Scaling functions of T = I - L at every tree level.
std::vector<Embedding> multiscale_eigenmaps(const WeightMatrix& w, double epsilon, Index levels);

/// Per-level maps (F^T)^+ [phi_j]_{phi_0} from the tree of
/// (F^+ X L X^T (F^T)^+)^+, normalized to unit spectral norm.
std::vector<LinearMap> multiscale_lpp(const TimeSeries& x, const WeightMatrix& w, double epsilon,
                                      Index levels);

/// Deepest level j with dims[j] >= d, else 0.
Index select_level(const std::vector<Index>& dims, Index d);

/// basis * U where U holds the Ritz vectors of basis^T op basis for its d
/// smallest non-zero Ritz values. `basis` must have orthonormal columns.
Matrix rayleigh_ritz(const Matrix& basis, const Matrix& op, Index d);

}  // namespace mswarp
