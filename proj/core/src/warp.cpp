#include "mswarp/warp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include "mswarp/align.hpp"
#include "mswarp/csv.hpp"
#include "mswarp/embed.hpp"
#include "mswarp/error.hpp"

namespace mswarp {

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "knn-heat") return GraphKind::kKnnHeat;
  if (name == "low-rank") return GraphKind::kLowRank;
  if (name == "chain") return GraphKind::kChain;
  throw Error(ErrorCode::kUnknownKind, "unknown graph kind '" + std::string(name) + "'");
}

std::string_view graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kKnnHeat: return "knn-heat";
    case GraphKind::kLowRank: return "low-rank";
    case GraphKind::kChain: return "chain";
  }
  return "knn-heat";
}

void WarpConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (d < 1) bad("d must be >= 1");
  if (!(mu >= 0.0 && mu <= 1.0)) bad("mu must lie in [0,1]");
  if (!(tau > 0.0)) bad("tau must be > 0");
  if (!(epsilon > 0.0)) bad("epsilon must be > 0");
  if (k < 1) bad("k must be >= 1");
  if (max_iters < 1) bad("max_iters must be >= 1");
  if (!(tol > 0.0)) bad("tol must be > 0");
  if (levels < 0) bad("levels must be >= 0");
  if (level_override && *level_override < 0) bad("level must be >= 0");
  if (chain_lag < 1) bad("chain_lag must be >= 1");
}

WeightMatrix series_graph(const TimeSeries& x, const WarpConfig& cfg) {
  const Index n = x.length();
  switch (cfg.graph_kind) {
    case GraphKind::kChain:
      return chain_weights(x.samples(), std::min(cfg.chain_lag, n - 1), cfg.chain_kernel);
    case GraphKind::kLowRank: {
      const WeightMatrix w =
          low_rank_weights(low_rank_reconstruct(x, cfg.tau), std::min(cfg.k, n - 1));
      return cfg.temporal_links ? with_temporal_links(w) : w;
    }
    case GraphKind::kKnnHeat:
    default: {
      const WeightMatrix w = heat_kernel_knn(x, std::min(cfg.k, n - 1));
      return cfg.temporal_links ? with_temporal_links(w) : w;
    }
  }
}

namespace {

struct Pair {
  Matrix fx;
  Matrix fy;
};

using Step = std::function<std::optional<Pair>(const Pair* current, const CorrespondenceMatrix&)>;
using Loss = std::function<double(const Pair&, const CorrespondenceMatrix&)>;

// Alternates an embedding step with DTW. A candidate embedding replaces the
// current one only if it does not raise the loss under the current
// correspondence.
WarpResult run_loop(Index n, Index m, const WarpConfig& cfg, std::optional<Pair> start,
                    const Step& step, const Loss& loss) {
  CorrespondenceMatrix c = CorrespondenceMatrix::endpoints(n, m);
  std::optional<Pair> current = std::move(start);
  std::optional<AlignmentPath> previous;
  std::vector<double> trace;
  bool converged = false;
  Index iterations = 0;

  for (Index it = 0; it < cfg.max_iters; ++it) {
    ++iterations;
    std::optional<Pair> candidate = step(current ? &*current : nullptr, c);
    if (candidate) {
      if (!current || loss(*candidate, c) <= loss(*current, c)) current = std::move(candidate);
    }
    if (!current) throw Error(ErrorCode::kNumerical, "warp: no embedding could be formed");

    AlignmentPath path = dtw_align(current->fx, current->fy).path;
    c = path_to_matrix(path, n, m);
    const double value = loss(*current, c);
    const bool same_path = previous && *previous == path;
    const bool small_drop =
        !trace.empty() &&
        trace.back() - value <= cfg.tol * std::max(std::abs(trace.back()), 1e-300);
    trace.push_back(value);
    previous = std::move(path);
    if (same_path || small_drop) {
      converged = true;
      break;
    }
  }
  return WarpResult{current->fx, current->fy, *previous, c, std::move(trace), iterations,
                    converged};
}

Matrix unit_rms(Matrix f) {
  const double scale = std::sqrt(static_cast<double>(f.rows()));
  for (Index c = 0; c < f.cols(); ++c) {
    const double len = f.col(c).norm();
    if (len > 0.0) f.col(c) *= scale / len;
  }
  return f;
}

// Embeds each series once and aligns the embeddings with a single DTW.
WarpResult two_step(Matrix fx, Matrix fy, const std::function<double(const Pair&,
                                                                        const CorrespondenceMatrix&)>&
                                              loss) {
  fx = unit_rms(std::move(fx));
  fy = unit_rms(std::move(fy));
  AlignmentPath path = dtw_align(fx, fy).path;
  CorrespondenceMatrix c = path_to_matrix(path, fx.rows(), fy.rows());
  const double value = loss(Pair{fx, fy}, c);
  return WarpResult{std::move(fx), std::move(fy), std::move(path), std::move(c), {value}, 1, true};
}

Pair split(const Matrix& f, Index nx) {
  return {f.topRows(nx), f.bottomRows(f.rows() - nx)};
}

Matrix stack(const Pair& p) {
  Matrix f(p.fx.rows() + p.fy.rows(), p.fx.cols());
  f << p.fx, p.fy;
  return f;
}

// Symmetric eigenvectors of `a` for the d smallest non-zero eigenvalues.
std::optional<Matrix> smallest_eigvecs(const Matrix& a, Index d) {
  const SymmetricEigen eig = symmetric_eigen(a);
  const std::vector<Index> keep = smallest_nonzero(eig.values, d);
  if (static_cast<Index>(keep.size()) < d) return std::nullopt;
  Matrix f = select_columns(eig.vectors, keep);
  canonicalize_signs(f);
  return f;
}

// Per-series multiscale eigenmap reduced to d columns at the deepest level
// that still holds d non-trivial directions.
Matrix multiscale_init(const WeightMatrix& w, const WarpConfig& cfg) {
  const std::vector<Embedding> levels = multiscale_eigenmaps(w, cfg.epsilon, cfg.levels);
  std::vector<Index> dims;
  for (const auto& e : levels) dims.push_back(e.coords.cols());
  const Index level = select_level(dims, cfg.d + 1);
  return rayleigh_ritz(levels[static_cast<std::size_t>(level)].coords, laplacians(w).normalized,
                       cfg.d);
}

WarpConfig checked(const WarpConfig& cfg, const TimeSeries& x, const TimeSeries& y) {
  cfg.validate();
  if (cfg.d >= x.length() || cfg.d >= y.length()) {
    throw Error(ErrorCode::kOutOfRange, "d must be below both series lengths");
  }
  return cfg;
}

}  // namespace

double loss_wow(const Matrix& fx, const Matrix& fy, const Matrix& phi_x, const Matrix& phi_y,
                const CorrespondenceMatrix& w_xy, const WeightMatrix& wx, const WeightMatrix& wy,
                double mu) {
  if (fx.cols() != phi_x.rows() || fy.cols() != phi_y.rows() || phi_x.cols() != phi_y.cols() ||
      fx.rows() != wx.size() || fy.rows() != wy.size() || w_xy.rows() != fx.rows() ||
      w_xy.cols() != fy.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "loss_wow: inconsistent shapes");
  }
  const Matrix gx = fx * phi_x;
  const Matrix gy = fy * phi_y;
  auto intra = [](const Matrix& g, const Matrix& w) {
    double s = 0.0;
    for (Index i = 0; i < g.rows(); ++i) {
      for (Index j = 0; j < g.rows(); ++j) {
        if (w(i, j) != 0.0) s += (g.row(i) - g.row(j)).squaredNorm() * w(i, j);
      }
    }
    return s;
  };
  double coupling = 0.0;
  for (Index i = 0; i < gx.rows(); ++i) {
    for (Index j = 0; j < gy.rows(); ++j) {
      const double w = w_xy.entries()(i, j);
      if (w != 0.0) coupling += (gx.row(i) - gy.row(j)).squaredNorm() * w;
    }
  }
  return (1.0 - mu) * intra(gx, wx.entries()) + (1.0 - mu) * intra(gy, wy.entries()) +
         mu * coupling;
}

double loss_cw(const Matrix& fx, const Matrix& fy, const CorrespondenceMatrix& w_xy,
               const WeightMatrix& wx, const WeightMatrix& wy, double mu) {
  if (fx.cols() != fy.cols() || fx.rows() != wx.size() || fy.rows() != wy.size() ||
      w_xy.rows() != fx.rows() || w_xy.cols() != fy.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "loss_cw: inconsistent shapes");
  }
  auto chain = [](const Matrix& f, const Matrix& w) {
    double s = 0.0;
    for (Index i = 0; i < f.rows(); ++i) {
      for (Index j = i + 1; j < f.rows(); ++j) {
        if (w(i, j) != 0.0) s += (f.row(i) - f.row(j)).squaredNorm() * w(i, j);
      }
    }
    return s;
  };
  double coupling = 0.0;
  for (Index i = 0; i < fx.rows(); ++i) {
    for (Index j = 0; j < fy.rows(); ++j) {
      const double w = w_xy.entries()(i, j);
      if (w != 0.0) coupling += (fx.row(i) - fy.row(j)).squaredNorm() * w;
    }
  }
  return (1.0 - mu) * chain(fx, wx.entries()) + (1.0 - mu) * chain(fy, wy.entries()) +
         mu * coupling;
}

WarpResult wow(const TimeSeries& x, const TimeSeries& y, const WarpConfig& config) {
  const WarpConfig cfg = checked(config, x, y);
  const Index n = x.length();
  const Index m = y.length();
  const WeightMatrix wx = series_graph(x, cfg);
  const WeightMatrix wy = series_graph(y, cfg);

  Pair start{multiscale_init(wx, cfg), multiscale_init(wy, cfg)};
  const Vector dx = wx.entries().rowwise().sum();
  const Vector dy = wy.entries().rowwise().sum();
  const Matrix gram = start.fx.transpose() * dx.asDiagonal() * start.fx +
                      start.fy.transpose() * dy.asDiagonal() * start.fy;
  const Matrix whiten = inverse_sqrt_spd(gram);
  start.fx *= whiten;
  start.fy *= whiten;

  const Matrix eye = Matrix::Identity(cfg.d, cfg.d);
  const Loss loss = [&](const Pair& p, const CorrespondenceMatrix& c) {
    return loss_wow(p.fx, p.fy, eye, eye, c, wx, wy, cfg.mu);
  };
  const Step step = [&](const Pair* current, const CorrespondenceMatrix& c) -> std::optional<Pair> {
    const JointGraph g = joint_weight(wx, wy, c, cfg.mu);
    const MmaResult res = mma(current->fx, current->fy, g, cfg.epsilon, cfg.levels);
    const Index level = cfg.level_override
                            ? std::min(*cfg.level_override, res.tree.num_levels() - 1)
                            : select_level(res.dims, cfg.d);
    const Matrix map = mma_level_map(res, level, cfg.d);
    if (map.cols() < cfg.d) return std::nullopt;
    return Pair{current->fx * map.topRows(cfg.d), current->fy * map.bottomRows(cfg.d)};
  };
  return run_loop(n, m, cfg, std::move(start), step, loss);
}

WarpResult wamm(const TimeSeries& x, const TimeSeries& y, const WarpConfig& config) {
  const WarpConfig cfg = checked(config, x, y);
  auto rx = std::async(std::launch::async, [&] { return low_rank_reconstruct(x, cfg.tau); });
  const LowRankReconstruction ry = low_rank_reconstruct(y, cfg.tau);
  const Matrix m = block_M(rx.get(), ry);

  const Loss loss = [&](const Pair& p, const CorrespondenceMatrix& c) {
    return loss_lra(p.fx, p.fy, m, c, cfg.mu);
  };
  const Step step = [&](const Pair*, const CorrespondenceMatrix& c) -> std::optional<Pair> {
    JointEmbedding e = lra_from_blocks(m, c, cfg.mu, cfg.d);
    return Pair{std::move(e.fx), std::move(e.fy)};
  };
  return run_loop(x.length(), y.length(), cfg, std::nullopt, step, loss);
}

WarpResult curve_warp(const TimeSeries& x, const TimeSeries& y, const WarpConfig& config,
                      bool two_step_mode) {
  WarpConfig cfg = checked(config, x, y);
  cfg.graph_kind = GraphKind::kChain;
  const WeightMatrix wx = series_graph(x, cfg);
  const WeightMatrix wy = series_graph(y, cfg);
  const Index n = x.length();

  const Loss loss = [&](const Pair& p, const CorrespondenceMatrix& c) {
    const double sum_form = loss_cw(p.fx, p.fy, c, wx, wy, cfg.mu);
    const Matrix f = stack(p);
    const JointGraph g = joint_weight(wx, wy, c, cfg.mu);
    const double trace_form = (f.transpose() * g.laplacian * f).trace();
    if (std::abs(sum_form - trace_form) > 1e-10 * std::max(1.0, std::abs(sum_form))) {
      throw Error(ErrorCode::kNumerical, "curve-wrapping loss disagrees with its quadratic form");
    }
    return sum_form;
  };

  if (two_step_mode) {
    const auto fx = smallest_eigvecs(laplacians(wx).combinatorial, cfg.d);
    const auto fy = smallest_eigvecs(laplacians(wy).combinatorial, cfg.d);
    if (!fx || !fy) throw Error(ErrorCode::kOutOfRange, "curve_warp: d too large for the chain");
    return two_step(*fx, *fy, loss);
  }

  const Step step = [&](const Pair*, const CorrespondenceMatrix& c) -> std::optional<Pair> {
    const JointGraph g = joint_weight(wx, wy, c, cfg.mu);
    const auto f = smallest_eigvecs(g.laplacian, cfg.d);
    if (!f) return std::nullopt;
    return split(*f, n);
  };
  return run_loop(n, y.length(), cfg, std::nullopt, step, loss);
}

WarpResult manifold_warp_baseline(const TimeSeries& x, const TimeSeries& y, const WarpConfig& config,
                                  BaselineVariant variant) {
  const WarpConfig cfg = checked(config, x, y);
  const WeightMatrix wx = series_graph(x, cfg);
  const WeightMatrix wy = series_graph(y, cfg);
  const Index n = x.length();
  const Matrix eye = Matrix::Identity(cfg.d, cfg.d);
  const Loss loss = [&](const Pair& p, const CorrespondenceMatrix& c) {
    return loss_wow(p.fx, p.fy, eye, eye, c, wx, wy, cfg.mu);
  };

  if (variant == BaselineVariant::kTwoStep) {
    return two_step(laplacian_eigenmaps(wx, cfg.d).coords, laplacian_eigenmaps(wy, cfg.d).coords,
                    loss);
  }

  Step step;
  if (variant == BaselineVariant::kNonlinear) {
    step = [&](const Pair*, const CorrespondenceMatrix& c) -> std::optional<Pair> {
      const JointGraph g = joint_weight(wx, wy, c, cfg.mu);
      const Vector inv_sqrt = g.degree.array().rsqrt();
      const Matrix a = inv_sqrt.asDiagonal() * g.laplacian * inv_sqrt.asDiagonal();
      const auto v = smallest_eigvecs(a, cfg.d);
      if (!v) return std::nullopt;
      Matrix f = inv_sqrt.asDiagonal() * *v;
      return split(f, n);
    };
  } else {
    if (x.dims() + y.dims() < cfg.d) {
      throw Error(ErrorCode::kOutOfRange, "linear warping needs d <= p + q");
    }
    step = [&](const Pair*, const CorrespondenceMatrix& c) -> std::optional<Pair> {
      const JointGraph g = joint_weight(wx, wy, c, cfg.mu);
      const Matrix z = block_data_matrix(x.samples(), y.samples());
      const GeneralizedEigen ge = generalized_eig_pinv(z, g.laplacian, g.degree.asDiagonal());
      const std::vector<Index> keep = smallest_nonzero(ge.values, cfg.d);
      if (static_cast<Index>(keep.size()) < cfg.d) return std::nullopt;
      const Matrix map = select_columns(ge.vectors, keep);
      return Pair{x.samples() * map.topRows(x.dims()), y.samples() * map.bottomRows(y.dims())};
    };
  }
  return run_loop(n, y.length(), cfg, std::nullopt, step, loss);
}

std::string format_config(const WarpConfig& cfg) {
  std::ostringstream out;
  out << "d=" << cfg.d << '\n'
      << "mu=" << format_double(cfg.mu) << '\n'
      << "tau=" << format_double(cfg.tau) << '\n'
      << "epsilon=" << format_double(cfg.epsilon) << '\n'
      << "k=" << cfg.k << '\n'
      << "graph=" << graph_kind_name(cfg.graph_kind) << '\n'
      << "max_iters=" << cfg.max_iters << '\n'
      << "tol=" << format_double(cfg.tol) << '\n'
      << "level=" << (cfg.level_override ? std::to_string(*cfg.level_override) : "auto") << '\n'
      << "levels=" << cfg.levels << '\n'
      << "chain_lag=" << cfg.chain_lag << '\n'
      << "chain_kernel=" << (cfg.chain_kernel == ChainKernel::kUnit ? "unit" : "heat") << '\n'
      << "temporal_links=" << (cfg.temporal_links ? "true" : "false") << '\n';
  return out.str();
}

void write_warp_result(const std::filesystem::path& dir, const WarpResult& result,
                       const WarpConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  write_path_csv(dir / "path.csv", result.path);
  write_matrix_csv(dir / "FX.csv", result.fx);
  write_matrix_csv(dir / "FY.csv", result.fy);
  Matrix trace(static_cast<Index>(result.loss_trace.size()), 2);
  for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
    trace(static_cast<Index>(i), 0) = static_cast<double>(i + 1);
    trace(static_cast<Index>(i), 1) = result.loss_trace[i];
  }
  write_matrix_csv(dir / "loss_trace.csv", trace, {"iteration", "loss"});
  std::ofstream cfg_out(dir / "config.txt");
  if (!cfg_out) throw Error(ErrorCode::kIo, "cannot write " + (dir / "config.txt").string());
  cfg_out << format_config(cfg) << "iterations=" << result.iterations << '\n'
          << "converged=" << (result.converged ? "true" : "false") << '\n';
}

}  // namespace mswarp
