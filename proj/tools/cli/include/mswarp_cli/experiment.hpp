#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <mswarp/synthetic.hpp>
#include <mswarp/warp.hpp>

namespace mswarp::cli {

enum class Method { kDtw, kWow, kWamm, kCw, kCw2, kMwLinear, kMwNonlinear, kMwTwoStep };

/// "dtw", "wow", "wamm", "cw", "cw2", "mw-linear", "mw-nonlinear", "mw-two-step".
Method parse_method(std::string_view name);
std::string_view method_name(Method method);

/// Runs one alignment method. kDtw aligns the raw samples and reports the
/// DTW cost as its only loss value.
WarpResult run_method(Method method, const TimeSeries& x, const TimeSeries& y,
                      const WarpConfig& cfg);

/// Two series with a known alignment.
struct PairedData {
  TimeSeries x;
  TimeSeries y;
  AlignmentPath truth;
};

struct SyntheticPairSpec {
  SyntheticKind kind_x = SyntheticKind::kSwissRoll;
  SyntheticKind kind_y = SyntheticKind::kBrokenSwissRoll;
  Index n = 100;
  Index m = 100;
  double noise = 0.0;
  bool rotate_y = true;
};

/// Y gets a random rotation and scale when spec.rotate_y is set; the ground
/// truth is DTW over the first latent column of each series.
PairedData make_synthetic_pair(const SyntheticPairSpec& spec, std::uint64_t seed);

struct PairedTTest {
  double mean_diff = 0.0;
  double t = 0.0;
  double p = 1.0;
  Index df = 0;
};

/// Two-sided paired t-test of a - b. Needs at least two pairs; identical
/// samples give t = 0, p = 1.
PairedTTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

double mean(const std::vector<double>& v);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(const std::vector<double>& v);

struct MethodErrors {
  Method method;
  std::vector<double> errors;  // one per trial
};

struct BenchReport {
  std::vector<std::uint64_t> seeds;
  std::vector<MethodErrors> methods;
};

/// Paired trials: every method sees the same pair in a trial. Trial t uses
/// seed + t.
BenchReport run_bench(const std::vector<Method>& methods, const SyntheticPairSpec& data,
                      const WarpConfig& cfg, Index trials, std::uint64_t seed);

}  // namespace mswarp::cli
