#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <mswarp/wavelets.hpp>

#include "mswarp_cli/experiment.hpp"

namespace mswarp::cli {

/// Flat key=value settings. Keys use underscores (max_iters); flags with
/// dashes map onto the same keys.
using Settings = std::map<std::string, std::string>;

/// Parses key=value lines; '#' starts a comment, blank lines are skipped.
/// Throws Error(kFileNotFound) or Error(kInvalidArgument) with the line.
Settings read_settings_file(const std::filesystem::path& path);

/// Applies every warp-related key; unrelated keys are left alone.
WarpConfig warp_config_from(const Settings& s, WarpConfig base = {});

/// Throws Error(kInvalidArgument) for any key outside `allowed`.
void require_known_keys(const Settings& s, const std::vector<std::string>& allowed);

struct GenOptions {
  std::string kind;
  Index n = 100;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

/// Writes the series to `out` and the latent parameters to
/// <stem>.latent.csv beside it. Returns the sidecar path.
std::filesystem::path cmd_gen(const GenOptions& opt);

struct AlignOptions {
  Method method = Method::kWow;
  std::filesystem::path x;
  std::filesystem::path y;
  std::optional<std::filesystem::path> truth;
  bool header = false;
  WarpConfig cfg;
  std::filesystem::path out;
};

AlignOptions align_options_from(const Settings& s);

/// Writes the result directory; returns the alignment error when a truth
/// path was supplied (also written to error.txt).
std::optional<double> cmd_align(const AlignOptions& opt);

struct BenchOptions {
  std::vector<Method> methods;
  SyntheticPairSpec data;
  WarpConfig cfg;
  Index trials = 10;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

BenchOptions bench_options_from(const Settings& s);

/// Writes report.csv (per-trial errors), stats.csv, ttests.csv (when at
/// least two trials and two methods) and summary.txt.
BenchReport cmd_bench(const BenchOptions& opt);

struct TreeOptions {
  std::filesystem::path x;
  bool header = false;
  WarpConfig cfg;
  std::filesystem::path out;
};

TreeOptions tree_options_from(const Settings& s);

/// Builds the diffusion-wavelet tree of the series graph and writes
/// manifest.txt plus level_<j>_op.csv and level_<j>_log10.csv per level.
WaveletTree cmd_tree(const TreeOptions& opt);

}  // namespace mswarp::cli
