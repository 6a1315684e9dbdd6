#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mswarp/dtw.hpp"
#include "mswarp/graph.hpp"

namespace mswarp {

enum class GraphKind { kKnnHeat, kLowRank, kChain };

/// "knn-heat", "low-rank" or "chain"; throws Error(kUnknownKind).
GraphKind parse_graph_kind(std::string_view name);
std::string_view graph_kind_name(GraphKind kind);

struct WarpConfig {
  Index d = 2;
  double mu = 0.5;
  double tau = 1.0;
  double epsilon = 1e-8;
  Index k = 10;
  GraphKind graph_kind = GraphKind::kKnnHeat;
  Index max_iters = 50;
  double tol = 1e-6;
  std::optional<Index> level_override;
  Index levels = 10;
  Index chain_lag = 1;
  ChainKernel chain_kernel = ChainKernel::kUnit;
  bool temporal_links = true;

  /// Throws Error(kInvalidArgument) naming the first bad field.
  void validate() const;
};

struct WarpResult {
  Matrix fx;
  Matrix fy;
  AlignmentPath path;
  CorrespondenceMatrix w_xy;
  std::vector<double> loss_trace;
  Index iterations = 0;
  bool converged = false;
};

/// Intra-set graph for one series under cfg.graph_kind.
WeightMatrix series_graph(const TimeSeries& x, const WarpConfig& cfg);

/// Warping on wavelets: multiscale eigenmaps, then alternating multiscale
/// manifold alignment and DTW.
WarpResult wow(const TimeSeries& x, const TimeSeries& y, const WarpConfig& cfg);

/// Warping on mixed manifolds: alternating low-rank alignment and DTW.
WarpResult wamm(const TimeSeries& x, const TimeSeries& y, const WarpConfig& cfg);

/// Curve wrapping over chain graphs. `two_step` embeds each series once and
/// runs DTW a single time.
WarpResult curve_warp(const TimeSeries& x, const TimeSeries& y, const WarpConfig& cfg,
                      bool two_step);

enum class BaselineVariant { kLinear, kNonlinear, kTwoStep };

/// Single-scale manifold warping.
WarpResult manifold_warp_baseline(const TimeSeries& x, const TimeSeries& y, const WarpConfig& cfg,
                                  BaselineVariant variant);

/// (1-mu) sum WX_ij |GX_i - GX_j|^2 + (1-mu) sum WY_ij |GY_i - GY_j|^2
/// + mu sum Wxy_ij |GX_i - GY_j|^2 with GX = FX phiX, GY = FY phiY,
/// all sums over ordered pairs.
double loss_wow(const Matrix& fx, const Matrix& fy, const Matrix& phi_x, const Matrix& phi_y,
                const CorrespondenceMatrix& w_xy, const WeightMatrix& wx, const WeightMatrix& wy,
                double mu);

/// Curve-wrapping loss: (1-mu) times every chain edge i < j counted once,
/// plus the mu-weighted coupling.
double loss_cw(const Matrix& fx, const Matrix& fy, const CorrespondenceMatrix& w_xy,
               const WeightMatrix& wx, const WeightMatrix& wy, double mu);

/// key=value lines, one per WarpConfig field.
std::string format_config(const WarpConfig& cfg);

/// Writes path.csv, FX.csv, FY.csv, loss_trace.csv and config.txt.
void write_warp_result(const std::filesystem::path& dir, const WarpResult& result,
                       const WarpConfig& cfg);

}  // namespace mswarp
