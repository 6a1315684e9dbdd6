#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <mswarp/error.hpp>
#include <mswarp/graph.hpp>

#include "oracles.hpp"

namespace mswarp {
namespace {

WeightMatrix random_weights(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) w(i, j) = w(j, i) = u(rng);
  }
  return WeightMatrix(w);
}

TEST(WeightMatrix, Validation) {
  Matrix asym(2, 2);
  asym << 0, 1, 0.5, 0;
  EXPECT_THROW(WeightMatrix{asym}, Error);
  Matrix neg(2, 2);
  neg << 0, -1, -1, 0;
  EXPECT_THROW(WeightMatrix{neg}, Error);
  EXPECT_THROW(WeightMatrix{Matrix::Zero(2, 3)}, Error);
}

TEST(HeatKernel, IdenticalPointsWeighOne) {
  Matrix p(2, 1);
  p << 3.0, 3.0;
  const auto w = heat_kernel_knn(p, 1, 1.0);
  EXPECT_EQ(w.entries()(0, 1), 1.0);
  EXPECT_EQ(w.entries()(1, 0), 1.0);
}

TEST(HeatKernel, MutualOrSymmetrization) {
  Matrix p(3, 1);
  p << 0.0, 1.0, 2.0;
  const auto w = heat_kernel_knn(p, 1, 1.0);
  const double e = std::exp(-0.5);
  EXPECT_NEAR(w.entries()(0, 1), e, 1e-15);
  EXPECT_NEAR(w.entries()(1, 2), e, 1e-15);
  EXPECT_EQ(w.entries()(0, 2), 0.0);
  EXPECT_EQ(w.entries().diagonal().sum(), 0.0);
}

TEST(HeatKernel, RejectsBadK) {
  Matrix p = Matrix::Zero(4, 2);
  EXPECT_THROW(heat_kernel_knn(p, 0), Error);
  EXPECT_THROW(heat_kernel_knn(p, 4), Error);
}

TEST(Laplacians, TwoNodeGraph) {
  Matrix w(2, 2);
  w << 0, 1, 1, 0;
  const auto g = laplacians(WeightMatrix(w));
  Matrix comb(2, 2);
  comb << 1, -1, -1, 1;
  EXPECT_EQ(g.combinatorial, comb);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.normalized);
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(1), 2.0, 1e-14);
  EXPECT_TRUE(g.diffusion.isApprox(Matrix::Identity(2, 2) - g.normalized));
}

TEST(Laplacians, QuadraticForm) {
  std::mt19937_64 rng(2);
  const auto w = random_weights(9, rng);
  const auto g = laplacians(w);
  for (int t = 0; t < 100; ++t) {
    const Matrix x = oracle::random_matrix(9, 1, rng);
    const double lhs = (x.transpose() * g.combinatorial * x)(0, 0);
    EXPECT_NEAR(lhs, 0.5 * oracle::pairwise_graph_sum(x, w.entries()), 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST(Laplacians, IsolatedVertexNamed) {
  Matrix w = Matrix::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1.0;
  try {
    laplacians(WeightMatrix(w));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIsolatedVertex);
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos);
  }
}

TEST(ChainWeights, UnitKernelBands) {
  const Matrix p = Matrix::Zero(3, 1);
  Matrix tri(3, 3);
  tri << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  EXPECT_EQ(chain_weights(p, 1, ChainKernel::kUnit).entries(), tri);

  const Matrix w = chain_weights(Matrix::Zero(4, 1), 2, ChainKernel::kUnit).entries();
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      const Index lag = std::abs(i - j);
      EXPECT_EQ(w(i, j), (lag >= 1 && lag <= 2) ? 1.0 : 0.0);
    }
  }
}

TEST(ChainWeights, HeatKernelOnEvenSpacing) {
  Matrix p(6, 1);
  for (Index i = 0; i < 6; ++i) p(i, 0) = 0.5 * static_cast<double>(i);
  const Matrix w = chain_weights(p, 2, ChainKernel::kHeat, 1.0).entries();
  for (Index i = 0; i + 1 < 6; ++i) EXPECT_NEAR(w(i, i + 1), std::exp(-0.125), 1e-15);
  for (Index i = 0; i + 2 < 6; ++i) EXPECT_NEAR(w(i, i + 2), std::exp(-0.5), 1e-15);
}

TEST(TemporalLinks, AddsSuccessorEdgesAtMaxWeight) {
  Matrix w = Matrix::Zero(4, 4);
  w(0, 3) = w(3, 0) = 0.25;
  const Matrix out = with_temporal_links(WeightMatrix(w)).entries();
  for (Index i = 0; i + 1 < 4; ++i) EXPECT_EQ(out(i, i + 1), 0.25);
  EXPECT_EQ(out(0, 3), 0.25);
}

TEST(JointWeight, MuExtremes) {
  std::mt19937_64 rng(4);
  const auto wx = random_weights(4, rng);
  const auto wy = random_weights(3, rng);
  const auto c = CorrespondenceMatrix::endpoints(4, 3);

  const auto g0 = joint_weight(wx, wy, c, 0.0);
  EXPECT_EQ(g0.weight.topLeftCorner(4, 4), wx.entries());
  EXPECT_EQ(g0.weight.bottomRightCorner(3, 3), wy.entries());
  EXPECT_TRUE(g0.weight.topRightCorner(4, 3).isZero());

  const auto g1 = joint_weight(wx, wy, c, 1.0);
  EXPECT_TRUE(g1.weight.topLeftCorner(4, 4).isZero());
  EXPECT_TRUE(g1.weight.bottomRightCorner(3, 3).isZero());
  EXPECT_EQ(g1.weight.topRightCorner(4, 3), c.entries());
}

TEST(JointWeight, MatchesLiteralBlockConstruction) {
  std::mt19937_64 rng(6);
  const Index m = 6;
  const Index n = 5;
  const Index l = 4;
  const double mu = 0.3;
  const auto wx = random_weights(m, rng);
  const auto wy = random_weights(n, rng);
  Matrix c = Matrix::Zero(m, n);
  for (Index i = 0; i < l; ++i) c(i, i) = 1.0;
  const auto g = joint_weight(wx, wy, CorrespondenceMatrix(c), mu);

  const Matrix lx = combinatorial_laplacian((1.0 - mu) * wx.entries());
  const Matrix ly = combinatorial_laplacian((1.0 - mu) * wy.entries());
  EXPECT_LE((g.laplacian - oracle::literal_joint_laplacian(lx, ly, l, mu)).cwiseAbs().maxCoeff(), 1e-14);

  Vector deg(m + n);
  deg << wx.entries().rowwise().sum(), wy.entries().rowwise().sum();
  EXPECT_LE((g.degree - deg).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(JointWeight, ShapeMismatch) {
  std::mt19937_64 rng(1);
  try {
    joint_weight(random_weights(3, rng), random_weights(3, rng), CorrespondenceMatrix::endpoints(3, 4), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(LowRank, BelowThresholdGivesZero) {
  Matrix s = Matrix::Zero(4, 3);
  s(0, 0) = 0.5;
  s(1, 1) = 0.9;
  EXPECT_TRUE(low_rank_reconstruct(s, 1.0).r.isZero());
}

TEST(LowRank, RankOneClosedForm) {
  // A = samples^T has the single singular value 2 with right vector v.
  Vector v(3);
  v << 1.0, 2.0, 2.0;
  v /= 3.0;
  Vector u(2);
  u << 0.6, 0.8;
  const Matrix samples = (2.0 * u * v.transpose()).transpose();
  const Matrix r = low_rank_reconstruct(samples, 1.0).r;
  EXPECT_LE((r - 0.75 * v * v.transpose()).cwiseAbs().maxCoeff(), 1e-14);

  const Matrix a = samples.transpose();
  const Matrix ref = oracle::proximal_low_rank(a, 1.0, 10000);
  const double f = oracle::low_rank_objective(a, r, 1.0);
  EXPECT_LE((oracle::low_rank_objective(a, ref, 1.0) - f) / std::abs(f), 1e-4);
  EXPECT_GE(oracle::low_rank_objective(a, ref, 1.0) - f, -1e-12);
}

TEST(LowRank, RandomMatchesProximalGradient) {
  std::mt19937_64 rng(8);
  const Matrix a = oracle::random_matrix(8, 6, rng);
  const Matrix r = low_rank_reconstruct(Matrix(a.transpose()), 1.0).r;
  const double f = oracle::low_rank_objective(a, r, 1.0);
  const double f_ref = oracle::low_rank_objective(a, oracle::proximal_low_rank(a, 1.0, 10000), 1.0);
  EXPECT_LE(std::abs(f_ref - f) / std::abs(f), 1e-4);
}

TEST(BlockM, ZeroReconstructionGivesIdentity) {
  LowRankReconstruction rx{Matrix::Zero(3, 3), 1.0};
  LowRankReconstruction ry{Matrix::Zero(2, 2), 1.0};
  EXPECT_EQ(block_M(rx, ry), Matrix::Identity(5, 5));
}

TEST(LowRankWeights, SymmetricSparse) {
  std::mt19937_64 rng(12);
  const auto rec = low_rank_reconstruct(oracle::random_matrix(30, 3, rng), 5.0);
  const Matrix w = low_rank_weights(rec, 4).entries();
  EXPECT_TRUE(w.isApprox(w.transpose()));
  EXPECT_EQ(w.diagonal().sum(), 0.0);
  for (Index i = 0; i < 30; ++i) EXPECT_GE((w.row(i).array() > 0.0).count(), 4);
}

TEST(SquaredDistances, MatchesDirect) {
  std::mt19937_64 rng(13);
  const Matrix a = oracle::random_matrix(5, 3, rng);
  const Matrix b = oracle::random_matrix(4, 3, rng);
  const Matrix d = squared_distances(a, b);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 4; ++j) EXPECT_NEAR(d(i, j), (a.row(i) - b.row(j)).squaredNorm(), 1e-12);
  }
}

}  // namespace
}  // namespace mswarp
