#include "mswarp_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <mswarp/csv.hpp>
#include <mswarp/error.hpp>
#include <mswarp/graph.hpp>

namespace mswarp::cli {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::kInvalidArgument, "invalid value '" + value + "' for " + key);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

long long to_integer(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

std::uint64_t to_seed(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

const std::string* find(const Settings& s, const std::string& key) {
  const auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

std::filesystem::path required_path(const Settings& s, const std::string& key) {
  const std::string* v = find(s, key);
  if (!v || v->empty()) throw Error(ErrorCode::kInvalidArgument, "missing required setting " + key);
  return *v;
}

const std::vector<std::string> kWarpKeys = {
    "d",   "mu",        "tau",          "epsilon",       "k",     "graph", "max_iters",
    "tol", "level",     "levels",       "chain_lag",     "chain_kernel", "temporal_links"};

std::vector<std::string> with_warp_keys(std::vector<std::string> keys) {
  keys.insert(keys.end(), kWarpKeys.begin(), kWarpKeys.end());
  return keys;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

Settings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open config " + path.string());
  Settings out;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void require_known_keys(const Settings& s, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : s) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown setting '" + key + "'");
    }
  }
}

WarpConfig warp_config_from(const Settings& s, WarpConfig cfg) {
  for (const auto& [key, value] : s) {
    if (key == "d") cfg.d = to_integer(key, value);
    else if (key == "mu") cfg.mu = to_double(key, value);
    else if (key == "tau") cfg.tau = to_double(key, value);
    else if (key == "epsilon") cfg.epsilon = to_double(key, value);
    else if (key == "k") cfg.k = to_integer(key, value);
    else if (key == "graph") cfg.graph_kind = parse_graph_kind(value);
    else if (key == "max_iters") cfg.max_iters = to_integer(key, value);
    else if (key == "tol") cfg.tol = to_double(key, value);
    else if (key == "level") {
      if (value == "auto") cfg.level_override.reset();
      else cfg.level_override = to_integer(key, value);
    } else if (key == "levels") cfg.levels = to_integer(key, value);
    else if (key == "chain_lag") cfg.chain_lag = to_integer(key, value);
    else if (key == "chain_kernel") {
      if (value == "unit") cfg.chain_kernel = ChainKernel::kUnit;
      else if (value == "heat") cfg.chain_kernel = ChainKernel::kHeat;
      else bad_value(key, value);
    } else if (key == "temporal_links") cfg.temporal_links = to_bool(key, value);
  }
  cfg.validate();
  return cfg;
}

std::filesystem::path cmd_gen(const GenOptions& opt) {
  if (opt.out.empty()) throw Error(ErrorCode::kInvalidArgument, "missing --out");
  const SyntheticSeries s =
      generate_synthetic(parse_synthetic_kind(opt.kind), opt.n, opt.noise, opt.seed);
  if (opt.out.has_parent_path()) make_dir(opt.out.parent_path());
  write_matrix_csv(opt.out, s.series.samples());
  std::filesystem::path sidecar = opt.out;
  sidecar.replace_filename(opt.out.stem().string() + ".latent.csv");
  write_matrix_csv(sidecar, s.latent, s.latent_columns);
  return sidecar;
}

AlignOptions align_options_from(const Settings& s) {
  require_known_keys(s, with_warp_keys({"method", "x", "y", "truth", "header", "out"}));
  AlignOptions opt;
  if (const auto* v = find(s, "method")) opt.method = parse_method(*v);
  opt.x = required_path(s, "x");
  opt.y = required_path(s, "y");
  opt.out = required_path(s, "out");
  if (const auto* v = find(s, "truth"); v && !v->empty()) opt.truth = *v;
  if (const auto* v = find(s, "header")) opt.header = to_bool("header", *v);
  opt.cfg = warp_config_from(s);
  return opt;
}

std::optional<double> cmd_align(const AlignOptions& opt) {
  const TimeSeries x = load_timeseries_csv(opt.x, opt.header);
  const TimeSeries y = load_timeseries_csv(opt.y, opt.header);
  std::optional<AlignmentPath> truth;
  if (opt.truth) truth = load_path_csv(*opt.truth);
  const WarpResult result = run_method(opt.method, x, y, opt.cfg);
  write_warp_result(opt.out, result, opt.cfg);
  {
    std::ofstream out(opt.out / "config.txt", std::ios::app);
    out << "method=" << method_name(opt.method) << '\n';
  }
  if (!truth) return std::nullopt;
  const double err = alignment_error(result.path, *truth);
  auto out = open_out(opt.out / "error.txt");
  out << "alignment_error=" << format_double(err) << '\n';
  return err;
}

BenchOptions bench_options_from(const Settings& s) {
  require_known_keys(s, with_warp_keys({"methods", "method", "kind_x", "kind_y", "n", "m",
                                        "noise", "rotate_y", "trials", "seed", "out"}));
  BenchOptions opt;
  std::string methods = "dtw,wow";
  if (const auto* v = find(s, "methods")) methods = *v;
  if (const auto* v = find(s, "method")) methods = *v;
  std::stringstream list(methods);
  for (std::string item; std::getline(list, item, ',');) {
    item = trim(item);
    if (!item.empty()) opt.methods.push_back(parse_method(item));
  }
  if (opt.methods.empty()) throw Error(ErrorCode::kInvalidArgument, "methods list is empty");
  if (const auto* v = find(s, "kind_x")) opt.data.kind_x = parse_synthetic_kind(*v);
  if (const auto* v = find(s, "kind_y")) opt.data.kind_y = parse_synthetic_kind(*v);
  if (const auto* v = find(s, "n")) opt.data.n = to_integer("n", *v);
  opt.data.m = opt.data.n;
  if (const auto* v = find(s, "m")) opt.data.m = to_integer("m", *v);
  if (const auto* v = find(s, "noise")) opt.data.noise = to_double("noise", *v);
  if (const auto* v = find(s, "rotate_y")) opt.data.rotate_y = to_bool("rotate_y", *v);
  if (const auto* v = find(s, "trials")) opt.trials = to_integer("trials", *v);
  if (const auto* v = find(s, "seed")) opt.seed = to_seed("seed", *v);
  if (opt.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  opt.out = required_path(s, "out");
  opt.cfg = warp_config_from(s);
  return opt;
}

BenchReport cmd_bench(const BenchOptions& opt) {
  const BenchReport report = run_bench(opt.methods, opt.data, opt.cfg, opt.trials, opt.seed);
  make_dir(opt.out);

  {
    auto out = open_out(opt.out / "report.csv");
    out << "trial,seed";
    for (const auto& m : report.methods) out << ',' << method_name(m.method);
    out << '\n';
    for (std::size_t t = 0; t < report.seeds.size(); ++t) {
      out << t + 1 << ',' << report.seeds[t];
      for (const auto& m : report.methods) out << ',' << format_double(m.errors[t]);
      out << '\n';
    }
  }
  std::ostringstream summary;
  summary << "trials: " << report.seeds.size() << '\n'
          << "data: " << synthetic_kind_name(opt.data.kind_x) << " (n=" << opt.data.n << ") vs "
          << synthetic_kind_name(opt.data.kind_y) << " (m=" << opt.data.m
          << "), noise=" << format_double(opt.data.noise) << '\n'
          << "\nmethod          mean error   sd\n";
  {
    auto out = open_out(opt.out / "stats.csv");
    out << "method,mean,sd\n";
    for (const auto& m : report.methods) {
      const double mu = mean(m.errors);
      const double sd = stddev(m.errors);
      out << method_name(m.method) << ',' << format_double(mu) << ',' << format_double(sd) << '\n';
      std::string name(method_name(m.method));
      name.resize(std::max<std::size_t>(name.size(), 16), ' ');
      summary << name << format_double(mu) << "   " << format_double(sd) << '\n';
    }
  }
  if (report.seeds.size() >= 2 && report.methods.size() >= 2) {
    auto out = open_out(opt.out / "ttests.csv");
    out << "method_a,method_b,mean_diff,t,p,df\n";
    summary << "\npaired t-tests (two-sided, a - b):\n";
    for (std::size_t a = 0; a < report.methods.size(); ++a) {
      for (std::size_t b = a + 1; b < report.methods.size(); ++b) {
        const PairedTTest t = paired_t_test(report.methods[a].errors, report.methods[b].errors);
        const std::string_view na = method_name(report.methods[a].method);
        const std::string_view nb = method_name(report.methods[b].method);
        out << na << ',' << nb << ',' << format_double(t.mean_diff) << ',' << format_double(t.t)
            << ',' << format_double(t.p) << ',' << t.df << '\n';
        summary << "  " << na << " vs " << nb << ": mean diff " << format_double(t.mean_diff)
                << ", t = " << format_double(t.t) << ", p = " << format_double(t.p)
                << " (df " << t.df << ")\n";
      }
    }
  }
  auto out = open_out(opt.out / "summary.txt");
  out << summary.str();
  return report;
}

TreeOptions tree_options_from(const Settings& s) {
  require_known_keys(s, with_warp_keys({"x", "header", "out"}));
  TreeOptions opt;
  opt.x = required_path(s, "x");
  opt.out = required_path(s, "out");
  if (const auto* v = find(s, "header")) opt.header = to_bool("header", *v);
  opt.cfg = warp_config_from(s);
  return opt;
}

WaveletTree cmd_tree(const TreeOptions& opt) {
  const TimeSeries x = load_timeseries_csv(opt.x, opt.header);
  const GraphMatrices g = laplacians(series_graph(x, opt.cfg));
  WaveletTree tree = build_dwt(g.diffusion, opt.cfg.epsilon, opt.cfg.levels);
  make_dir(opt.out);
  {
    auto out = open_out(opt.out / "manifest.txt");
    out << "graph=" << graph_kind_name(opt.cfg.graph_kind) << '\n'
        << "epsilon=" << format_double(opt.cfg.epsilon) << '\n'
        << "max_levels=" << opt.cfg.levels << '\n'
        << "num_levels=" << tree.num_levels() << '\n'
        << "dims=";
    const std::vector<Index> dims = tree.dims();
    for (std::size_t j = 0; j < dims.size(); ++j) out << (j ? "," : "") << dims[j];
    out << '\n';
  }
  for (Index j = 0; j < tree.num_levels(); ++j) {
    const Matrix& op = tree.level(j).op;
    const Matrix mag = op.cwiseAbs().cwiseMax(1e-16).array().log10().matrix();
    const std::string stem = "level_" + std::to_string(j);
    write_matrix_csv(opt.out / (stem + "_op.csv"), op);
    write_matrix_csv(opt.out / (stem + "_log10.csv"), mag);
  }
  return tree;
}

}  // namespace mswarp::cli
