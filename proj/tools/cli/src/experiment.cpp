#include "mswarp_cli/experiment.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>
#include <random>

#include <mswarp/dtw.hpp>
#include <mswarp/error.hpp>

namespace mswarp::cli {

namespace {

struct MethodName {
  Method method;
  std::string_view name;
};

constexpr MethodName kMethodNames[] = {
    {Method::kDtw, "dtw"},
    {Method::kWow, "wow"},
    {Method::kWamm, "wamm"},
    {Method::kCw, "cw"},
    {Method::kCw2, "cw2"},
    {Method::kMwLinear, "mw-linear"},
    {Method::kMwNonlinear, "mw-nonlinear"},
    {Method::kMwTwoStep, "mw-two-step"},
};

}  // namespace

Method parse_method(std::string_view name) {
  for (const auto& entry : kMethodNames) {
    if (entry.name == name) return entry.method;
  }
  throw Error(ErrorCode::kUnknownKind, "unknown method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  for (const auto& entry : kMethodNames) {
    if (entry.method == method) return entry.name;
  }
  return "dtw";
}

WarpResult run_method(Method method, const TimeSeries& x, const TimeSeries& y,
                      const WarpConfig& cfg) {
  switch (method) {
    case Method::kDtw: {
      DtwResult r = dtw_align(x, y);
      CorrespondenceMatrix c = path_to_matrix(r.path, x.length(), y.length());
      return WarpResult{x.samples(), y.samples(), std::move(r.path), std::move(c), {r.cost}, 1,
                        true};
    }
    case Method::kWow: return wow(x, y, cfg);
    case Method::kWamm: {
      WarpConfig c = cfg;
      c.graph_kind = GraphKind::kLowRank;
      return wamm(x, y, c);
    }
    case Method::kCw: return curve_warp(x, y, cfg, false);
    case Method::kCw2: return curve_warp(x, y, cfg, true);
    case Method::kMwLinear:
      return manifold_warp_baseline(x, y, cfg, BaselineVariant::kLinear);
    case Method::kMwNonlinear:
      return manifold_warp_baseline(x, y, cfg, BaselineVariant::kNonlinear);
    case Method::kMwTwoStep:
      return manifold_warp_baseline(x, y, cfg, BaselineVariant::kTwoStep);
  }
  throw Error(ErrorCode::kUnknownKind, "unhandled method");
}

PairedData make_synthetic_pair(const SyntheticPairSpec& spec, std::uint64_t seed) {
  std::seed_seq seq{seed, std::uint64_t{0x5eed}};
  std::mt19937_64 rng(seq);
  const std::uint64_t seed_x = rng();
  const std::uint64_t seed_y = rng();
  SyntheticSeries sx = generate_synthetic(spec.kind_x, spec.n, spec.noise, seed_x);
  SyntheticSeries sy = generate_synthetic(spec.kind_y, spec.m, spec.noise, seed_y);

  Matrix y = sy.series.samples();
  if (spec.rotate_y) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
    Matrix g(y.cols(), y.cols());
    for (Index i = 0; i < g.size(); ++i) g.data()[i] = gauss(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix rotation = qr.householderQ();
    y = scale_dist(rng) * y * rotation;
  }
  const AlignmentPath truth = dtw_align(Matrix(sx.latent.col(0)), Matrix(sy.latent.col(0))).path;
  return {sx.series, TimeSeries(std::move(y), sy.series.name()), truth};
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

PairedTTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "paired t-test needs equal-length samples");
  }
  if (a.size() < 2) throw Error(ErrorCode::kInvalidArgument, "paired t-test needs two pairs");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  PairedTTest out;
  out.df = static_cast<Index>(diff.size()) - 1;
  out.mean_diff = mean(diff);
  const double se = stddev(diff) / std::sqrt(static_cast<double>(diff.size()));
  if (se == 0.0) {
    if (out.mean_diff == 0.0) return out;
    out.t = std::copysign(std::numeric_limits<double>::infinity(), out.mean_diff);
    out.p = 0.0;
    return out;
  }
  out.t = out.mean_diff / se;
  const boost::math::students_t dist(static_cast<double>(out.df));
  out.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.t)));
  return out;
}

BenchReport run_bench(const std::vector<Method>& methods, const SyntheticPairSpec& data,
                      const WarpConfig& cfg, Index trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (methods.empty()) throw Error(ErrorCode::kInvalidArgument, "bench needs a method");
  BenchReport report;
  for (Method m : methods) report.methods.push_back({m, {}});
  for (Index t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    report.seeds.push_back(s);
    const PairedData pair = make_synthetic_pair(data, s);
    for (auto& entry : report.methods) {
      const WarpResult r = run_method(entry.method, pair.x, pair.y, cfg);
      entry.errors.push_back(alignment_error(r.path, pair.truth));
    }
  }
  return report;
}

}  // namespace mswarp::cli
