#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <mswarp/csv.hpp>
#include <mswarp/error.hpp>

#include "mswarp_cli/commands.hpp"

namespace {

using mswarp::cli::Settings;

// String-valued flags land here; only flags given on the command line
// override the config file.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* config = nullptr;
  std::string config_path;

  void add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    options[key] = app->add_option(flag, values[key], help);
  }

  Settings resolve() const {
    Settings s;
    if (config && config->count() > 0) s = mswarp::cli::read_settings_file(config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) s[key] = values.at(key);
    }
    return s;
  }
};

void add_warp_flags(CLI::App* app, FlagSet& f) {
  f.add(app, "--d", "d", "latent dimension (default 2)");
  f.add(app, "--mu", "mu", "correspondence weight in [0,1] (default 0.5)");
  f.add(app, "--tau", "tau", "low-rank reconstruction weight (default 1)");
  f.add(app, "--k", "k", "nearest neighbours (default 10)");
  f.add(app, "--epsilon", "epsilon", "diffusion-wavelet precision (default 1e-8)");
  f.add(app, "--max-iters", "max_iters", "iteration cap (default 50)");
  f.add(app, "--tol", "tol", "relative loss-decrease threshold (default 1e-6)");
  f.add(app, "--level", "level", "wavelet level fed to alignment, or 'auto'");
  f.add(app, "--levels", "levels", "maximum tree depth (default 10)");
  f.add(app, "--graph", "graph", "knn-heat | low-rank | chain");
  f.add(app, "--chain-lag", "chain_lag", "chain graph lookahead k0 (default 1)");
  f.add(app, "--chain-kernel", "chain_kernel", "unit | heat");
  f.add(app, "--temporal-links", "temporal_links", "link consecutive samples (true|false)");
  f.config = app->add_option("--config", f.config_path, "key=value settings file");
}

int fail(const mswarp::Error& e) {
  std::cerr << "error: " << mswarp::error_code_name(e.code()) << ": " << e.what() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mswarp: multiscale time-series alignment"};
  app.require_subcommand(1);

  mswarp::cli::GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic series");
  gen_cmd->add_option("--kind", gen.kind,
                      "swiss-roll | broken-swiss-roll | twin-peaks | rotated-digit | dollar-sign")
      ->required();
  gen_cmd->add_option("--n", gen.n, "number of samples (>= 8)");
  gen_cmd->add_option("--noise", gen.noise, "Gaussian noise standard deviation");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out, "output CSV")->required();

  FlagSet align_flags;
  CLI::App* align_cmd = app.add_subcommand("align", "align two CSV series");
  align_flags.add(align_cmd, "--method", "method",
                  "dtw | wow | wamm | cw | cw2 | mw-linear | mw-nonlinear | mw-two-step");
  align_flags.add(align_cmd, "--x", "x", "first series CSV");
  align_flags.add(align_cmd, "--y", "y", "second series CSV");
  align_flags.add(align_cmd, "--truth", "truth", "ground-truth path CSV (i,j, 1-based)");
  align_flags.add(align_cmd, "--header", "header", "inputs carry a header line (true|false)");
  align_flags.add(align_cmd, "--out", "out", "output directory");
  add_warp_flags(align_cmd, align_flags);

  FlagSet bench_flags;
  CLI::App* bench_cmd = app.add_subcommand("bench", "paired benchmark on synthetic pairs");
  bench_flags.add(bench_cmd, "--method", "methods", "comma-separated methods");
  bench_flags.add(bench_cmd, "--kind-x", "kind_x", "generator for X (default swiss-roll)");
  bench_flags.add(bench_cmd, "--kind-y", "kind_y", "generator for Y (default broken-swiss-roll)");
  bench_flags.add(bench_cmd, "--n", "n", "length of X (default 100)");
  bench_flags.add(bench_cmd, "--m", "m", "length of Y (default n)");
  bench_flags.add(bench_cmd, "--noise", "noise", "generator noise (default 0)");
  bench_flags.add(bench_cmd, "--rotate-y", "rotate_y", "rotate and scale Y (default true)");
  bench_flags.add(bench_cmd, "--trials", "trials", "paired trials (default 10)");
  bench_flags.add(bench_cmd, "--seed", "seed", "base seed (default 0)");
  bench_flags.add(bench_cmd, "--out", "out", "output directory");
  add_warp_flags(bench_cmd, bench_flags);

  FlagSet tree_flags;
  CLI::App* tree_cmd = app.add_subcommand("tree", "dump the diffusion-wavelet tree of a series");
  tree_flags.add(tree_cmd, "--x", "x", "series CSV");
  tree_flags.add(tree_cmd, "--header", "header", "input carries a header line (true|false)");
  tree_flags.add(tree_cmd, "--out", "out", "output directory");
  add_warp_flags(tree_cmd, tree_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen_cmd->parsed()) {
      try {
        mswarp::cli::cmd_gen(gen);
      } catch (const mswarp::Error& e) {
        if (e.code() == mswarp::ErrorCode::kUnknownKind) std::cerr << gen_cmd->help();
        throw;
      }
    } else if (align_cmd->parsed()) {
      const auto opt = mswarp::cli::align_options_from(align_flags.resolve());
      if (const auto err = mswarp::cli::cmd_align(opt)) {
        std::cout << "alignment_error=" << mswarp::format_double(*err) << '\n';
      }
    } else if (bench_cmd->parsed()) {
      const auto opt = mswarp::cli::bench_options_from(bench_flags.resolve());
      mswarp::cli::cmd_bench(opt);
      std::ifstream summary(opt.out / "summary.txt");
      std::cout << summary.rdbuf();
    } else if (tree_cmd->parsed()) {
      const auto tree = mswarp::cli::cmd_tree(mswarp::cli::tree_options_from(tree_flags.resolve()));
      std::cout << "levels: " << tree.num_levels() << '\n';
    }
  } catch (const mswarp::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "error: E_INTERNAL: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
