// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: mswarp_acceptance <path-to-mswarp-executable>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <mswarp/align.hpp>
#include <mswarp/dtw.hpp>
#include <mswarp/error.hpp>
#include <mswarp/graph.hpp>
#include <mswarp/synthetic.hpp>
#include <mswarp/wavelets.hpp>
#include <mswarp_cli/experiment.hpp>

#include "oracles.hpp"
#include "temp_dir.hpp"

namespace {

using namespace mswarp;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;  // 0 means unbounded
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Outcome dtw_oracle() {
  std::mt19937_64 rng(20240601);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = 1 + t % 6;
    const Index m = 1 + (t / 6) % 6;
    const Matrix x = oracle::random_matrix(n, 2, rng);
    const Matrix y = oracle::random_matrix(m, 2, rng);
    Matrix cost(n, m);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < m; ++j) cost(i, j) = squared_euclidean(x.row(i), y.row(j));
    }
    if (dtw_align(x, y).cost != oracle::brute_force_dtw_cost(cost)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in 200 instances"};
}

Outcome wavelet_reconstruction() {
  double worst_rec = 0.0;
  double worst_orth = 0.0;
  for (Index n : {16, 32, 64}) {
    const Matrix t = oracle::chain_diffusion(n);
    const WaveletTree tree = build_dwt(t, 1e-8, 4);
    for (Index j = 0; j < tree.num_levels(); ++j) {
      const Matrix phi = extended_basis(tree, j);
      const Matrix approx = phi * tree.level(j).op * phi.transpose();
      worst_rec = std::max(worst_rec, oracle::svd_norm2(approx - oracle::dense_dyadic_power(t, j)));
      const Matrix gram = phi.transpose() * phi - Matrix::Identity(phi.cols(), phi.cols());
      worst_orth = std::max(worst_orth, gram.cwiseAbs().maxCoeff());
    }
  }
  return {worst_rec <= 1e-3 && worst_orth <= 1e-8,
          "max reconstruction " + fmt(worst_rec) + ", max orthonormality defect " + fmt(worst_orth)};
}

Outcome generalized_residuals() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(5, 10);
  double worst = 0.0;
  int pairs = 0;
  int deficient = 0;
  for (int s = 0; s < 50; ++s) {
    const Index nx = len(rng);
    const Index ny = len(rng);
    const Index p = std::min<Index>(nx - 1, 2 + s % 4);
    const Index q = std::min<Index>(ny - 1, 2 + (s / 4) % 3);
    Matrix x = oracle::random_matrix(nx, p, rng);
    const Matrix y = oracle::random_matrix(ny, q, rng);
    if (s % 2 == 1) x.col(p - 1) = x.col(0) - 0.5 * x.col(1);  // rank-deficient Z D Z^T
    const auto c = path_to_matrix(dtw_align(x.leftCols(1), y.leftCols(1)).path, nx, ny);
    const auto g = joint_weight(heat_kernel_knn(x, 2), heat_kernel_knn(y, 2), c, 0.5);
    const Matrix z = block_data_matrix(x, y);
    const Matrix d = g.degree.asDiagonal();
    const auto ge = generalized_eig_pinv(z, g.laplacian, d);
    if (ge.values.size() < p + q) ++deficient;
    const Matrix a = z * g.laplacian * z.transpose();
    const Matrix b = z * d * z.transpose();
    for (Index k = 0; k < ge.values.size(); ++k) {
      const Vector gamma = ge.vectors.col(k).normalized();
      worst = std::max(worst, (a * gamma - ge.values(k) * b * gamma).norm());
      ++pairs;
    }
  }
  return {worst <= 1e-8 && deficient == 25,
          std::to_string(pairs) + " pairs (" + std::to_string(deficient) +
              " rank-deficient systems), max residual " + fmt(worst)};
}

Outcome subspace_equivalence() {
  int qualifying = 0;
  int cuts = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 400 && qualifying < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const Matrix x = oracle::random_matrix(12, 4, rng);
    const Matrix y = oracle::random_matrix(10, 3, rng);
    Matrix c = Matrix::Zero(12, 10);
    for (Index i = 0; i < 5; ++i) c(i, i) = 1.0;
    const auto g = joint_weight(heat_kernel_knn(x, 3), heat_kernel_knn(y, 3), CorrespondenceMatrix(c), 0.5);
    const MmaResult r = mma(x, y, g, 1e-10, 6);
    const auto ge = generalized_eig_pinv(block_data_matrix(x, y), g.laplacian, g.degree.asDiagonal());

    // Level k of the tree carries powers 2^(k-1) of the normalized T^+,
    // so that is where the cut must be separated.
    Matrix tinv = pseudo_inverse(r.reduced);
    tinv = 0.5 * (tinv + tinv.transpose());
    const Vector nu_asc = symmetric_eigen(tinv).values;
    const Vector nu = nu_asc.reverse() / nu_asc.cwiseAbs().maxCoeff();
    const Index full = nu.size();

    std::vector<double> distances;
    bool has_cut = false;
    for (std::size_t k = 0; k < r.dims.size(); ++k) {
      const Index dk = r.dims[k];
      const bool whole = dk >= full;
      if (!whole) {
        if (k == 0) continue;
        const double e = std::pow(2.0, static_cast<double>(k) - 1.0);
        const double gap = std::pow(nu(dk - 1), e) - std::pow(nu(dk), e);
        if (gap < 1e-6) continue;
        has_cut = true;
      }
      Matrix ab(7, dk);
      ab << r.alpha[k], r.beta[k];
      const auto keep = smallest_nonzero(ge.values, dk);
      distances.push_back(oracle::projector_distance(ab, select_columns(ge.vectors, keep)));
    }
    if (!has_cut) continue;
    ++qualifying;
    cuts += static_cast<int>(distances.size());
    for (double dist : distances) worst = std::max(worst, dist);
  }
  return {qualifying == 20 && worst <= 1e-6,
          std::to_string(qualifying) + " instances, " + std::to_string(cuts) +
              " level cuts, max projector distance " + fmt(worst)};
}

Outcome low_rank_optimality() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> dim(3, 10);
  const double taus[] = {0.5, 1.0, 2.0};
  double worst_gap = 0.0;
  int beaten = 0;
  for (int s = 0; s < 20; ++s) {
    const Index features = dim(rng);
    const Index samples = dim(rng) + 2;
    const double tau = taus[s % 3];
    const Matrix a = oracle::random_matrix(features, samples, rng);
    const Matrix r = low_rank_reconstruct(Matrix(a.transpose()), tau).r;
    const double f = oracle::low_rank_objective(a, r, tau);
    const double f_ref = oracle::low_rank_objective(a, oracle::proximal_low_rank(a, tau, 10000), tau);
    worst_gap = std::max(worst_gap, (f - f_ref) / std::abs(f_ref));
    for (int k = 0; k < 1000; ++k) {
      Matrix e = oracle::random_matrix(samples, samples, rng);
      e *= 1e-3 / e.norm();
      if (!(oracle::low_rank_objective(a, r + e, tau) > f)) ++beaten;
    }
  }
  return {worst_gap <= 1e-4 && beaten == 0,
          "max relative gap " + fmt(worst_gap) + ", " + std::to_string(beaten) +
              " of 20000 perturbations not worse"};
}

Outcome monotone_termination() {
  using cli::Method;
  const Method methods[] = {Method::kWow, Method::kWamm, Method::kCw, Method::kMwLinear, Method::kMwNonlinear};
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(40, 70);
  int violations = 0;
  int runs = 0;
  Index max_iters = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cli::SyntheticPairSpec spec;
    spec.kind_x = seed % 2 ? SyntheticKind::kTwinPeaks : SyntheticKind::kSwissRoll;
    spec.n = len(rng);
    spec.m = len(rng);
    spec.noise = 0.05;
    const auto pair = cli::make_synthetic_pair(spec, 1000 + seed);
    for (Method m : methods) {
      const WarpResult r = cli::run_method(m, pair.x, pair.y, WarpConfig{});
      ++runs;
      max_iters = std::max(max_iters, r.iterations);
      bool ok = r.converged && r.iterations <= 50;
      for (std::size_t i = 1; i < r.loss_trace.size(); ++i) {
        if (r.loss_trace[i] > r.loss_trace[i - 1] + 1e-9) ok = false;
      }
      if (!ok) {
        ++violations;
        std::cerr << "  " << cli::method_name(m) << " seed " << seed << ": iterations " << r.iterations
                  << (r.converged ? "" : " (not converged)") << '\n';
      }
    }
  }
  return {violations == 0, std::to_string(runs) + " runs, " + std::to_string(violations) +
                               " violations, max iterations " + std::to_string(max_iters)};
}

Outcome swiss_roll_experiment() {
  using cli::Method;
  cli::SyntheticPairSpec spec;
  spec.n = 200;
  spec.m = 160;
  const WarpConfig cfg;  // mu 0.5, tau 1, d 2, k 10
  std::vector<double> dtw_err;
  std::vector<double> wow_err;
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pair = cli::make_synthetic_pair(spec, seed);
    const double e_dtw = alignment_error(cli::run_method(Method::kDtw, pair.x, pair.y, cfg).path, pair.truth);
    const double e_wow = alignment_error(cli::run_method(Method::kWow, pair.x, pair.y, cfg).path, pair.truth);
    const double e_mw =
        alignment_error(cli::run_method(Method::kMwNonlinear, pair.x, pair.y, cfg).path, pair.truth);
    dtw_err.push_back(e_dtw);
    wow_err.push_back(e_wow);
    if (e_wow <= e_mw) ++wins;
  }
  const double m_wow = cli::mean(wow_err);
  const double m_dtw = cli::mean(dtw_err);
  return {m_wow < m_dtw && wins >= 7, "WOW mean " + fmt(m_wow) + " vs DTW mean " + fmt(m_dtw) +
                                          ", WOW <= single-scale on " + std::to_string(wins) + "/10"};
}

int inter_manifold_edges(const WeightMatrix& w, const Vector& labels) {
  int count = 0;
  for (Index i = 0; i < w.size(); ++i) {
    for (Index j = i + 1; j < w.size(); ++j) {
      if (w.entries()(i, j) > 0.0 && labels(i) != labels(j)) ++count;
    }
  }
  return count;
}

Outcome mixed_manifold_graphs() {
  int wins = 0;
  std::string counts;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = generate_synthetic(SyntheticKind::kDollarSign, 200, 0.05, seed);
    const Vector labels = s.latent.col(0);
    const int knn = inter_manifold_edges(heat_kernel_knn(s.series, 10), labels);
    const int lr = inter_manifold_edges(low_rank_weights(low_rank_reconstruct(s.series, 1.0), 10), labels);
    if (lr < knn) ++wins;
    counts += (seed ? " " : "") + std::to_string(knn) + "/" + std::to_string(lr);
  }
  return {wins >= 9, "low-rank fewer on " + std::to_string(wins) + "/10 (knn/low-rank: " + counts + ")"};
}

Outcome alignment_error_metric() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(2, 20);
  double worst = 0.0;
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const Index n = len(rng);
    const Index m = len(rng);
    const auto p = oracle::random_path(n, m, rng);
    const auto q = oracle::random_path(n, m, rng);
    const double e = alignment_error(p, q);
    worst = std::max(worst, std::abs(e - oracle::shoelace_alignment_error(p, q)));
    if (alignment_error(p, p) != 0.0) ++bad;
    if (!(p == q) && !(e > 0.0)) ++bad;
  }
  return {worst <= 1e-12 && bad == 0,
          "max deviation " + fmt(worst) + ", " + std::to_string(bad) + " identity/positivity failures"};
}

Outcome cli_determinism(const std::string& exe) {
  if (exe.empty()) return {false, "no executable path given"};
  testing::TempDir dir;
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + exe + "\" " + args + " > /dev/null";
    return std::system(cmd.c_str()) == 0;
  };
  std::vector<std::string> files;
  bool ok = true;
  for (const char* r : {"r1", "r2"}) {
    const auto base = dir.path() / r;
    const std::string b = base.string();
    ok = ok && run("gen --kind swiss-roll --n 60 --seed 3 --out " + b + "/x.csv");
    ok = ok && run("gen --kind broken-swiss-roll --n 50 --seed 4 --out " + b + "/y.csv");
    ok = ok && run("align --method wow --x " + b + "/x.csv --y " + b + "/y.csv --out " + b + "/align");
    ok = ok && run("bench --method dtw,wow,wamm --n 40 --trials 3 --seed 7 --out " + b + "/bench");
  }
  if (!ok) return {false, "a command exited with nonzero status"};
  int compared = 0;
  int differing = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir.path() / "r1")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), dir.path() / "r1");
    ++compared;
    if (testing::read_file(entry.path()) != testing::read_file(dir.path() / "r2" / rel)) {
      ++differing;
      std::cerr << "  differs: " << rel.string() << '\n';
    }
  }
  return {compared >= 12 && differing == 0,
          std::to_string(compared) + " files compared, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria = {
      {"dtw-oracle-equivalence", 10.0, dtw_oracle},
      {"diffusion-wavelet-reconstruction", 30.0, wavelet_reconstruction},
      {"generalized-eigen-residuals", 0.0, generalized_residuals},
      {"multiscale-subspace-equivalence", 0.0, subspace_equivalence},
      {"low-rank-closed-form-optimality", 0.0, low_rank_optimality},
      {"warping-monotonicity-termination", 0.0, monotone_termination},
      {"swiss-roll-experiment", 300.0, swiss_roll_experiment},
      {"mixed-manifold-graph-quality", 0.0, mixed_manifold_graphs},
      {"alignment-error-metric", 0.0, alignment_error_metric},
      {"cli-determinism", 0.0, [&] { return cli_determinism(exe); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      out.pass = false;
      out.detail += "; exceeded " + fmt(c.time_limit_s) + " s";
    }
    if (!out.pass) ++failed;
    std::cout << (out.pass ? "PASS " : "FAIL ") << c.name << ": " << out.detail << " [" << fmt(secs) << " s]"
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
