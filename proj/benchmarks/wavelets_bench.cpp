#include <benchmark/benchmark.h>

#include <mswarp/graph.hpp>
#include <mswarp/synthetic.hpp>
#include <mswarp/wavelets.hpp>

namespace {

void BM_BuildDwt(benchmark::State& state) {
  const auto n = static_cast<mswarp::Index>(state.range(0));
  const auto s = mswarp::generate_synthetic(mswarp::SyntheticKind::kSwissRoll, n, 0.0, 1);
  const mswarp::Matrix t = mswarp::laplacians(mswarp::heat_kernel_knn(s.series, 10)).diffusion;
  for (auto _ : state) benchmark::DoNotOptimize(mswarp::build_dwt(t, 1e-8, 10));
}
BENCHMARK(BM_BuildDwt)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RankRevealingQr(benchmark::State& state) {
  const auto n = static_cast<mswarp::Index>(state.range(0));
  const auto s = mswarp::generate_synthetic(mswarp::SyntheticKind::kTwinPeaks, n, 0.0, 2);
  const mswarp::Matrix t = mswarp::laplacians(mswarp::heat_kernel_knn(s.series, 10)).diffusion;
  const mswarp::Matrix t4 = t * t * t * t;
  for (auto _ : state) benchmark::DoNotOptimize(mswarp::rank_revealing_qr(t4, 1e-8));
}
BENCHMARK(BM_RankRevealingQr)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
