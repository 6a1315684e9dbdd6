#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <mswarp/csv.hpp>
#include <mswarp/data.hpp>
#include <mswarp/error.hpp>
#include <mswarp/synthetic.hpp>

#include "oracles.hpp"
#include "printers.hpp"
#include "temp_dir.hpp"

namespace mswarp {
namespace {

using testing::TempDir;

TEST(TimeSeries, RejectsTooShortOrNonFinite) {
  EXPECT_THROW(TimeSeries(Matrix::Zero(1, 2)), Error);
  Matrix bad = Matrix::Zero(3, 1);
  bad(1, 0) = std::nan("");
  EXPECT_THROW(TimeSeries(std::move(bad)), Error);
}

TEST(AlignmentPath, RejectsIllegalSteps) {
  EXPECT_THROW(AlignmentPath::from_one_based({{1, 1}, {2, 3}}), Error);
  EXPECT_THROW(AlignmentPath::from_one_based({{2, 1}, {2, 2}}), Error);
  EXPECT_THROW(AlignmentPath::from_one_based({{1, 1}, {2, 2}, {2, 1}}), Error);
  EXPECT_NO_THROW(AlignmentPath::from_one_based({{1, 1}, {1, 2}, {2, 2}}));
}

TEST(AlignmentError, ZeroForIdenticalPaths) {
  const auto p = AlignmentPath::from_one_based({{1, 1}, {2, 1}, {3, 2}, {3, 3}});
  EXPECT_EQ(alignment_error(p, p), 0.0);
}

TEST(AlignmentError, TwoByTwoMatchesShoelace) {
  const auto p = AlignmentPath::from_one_based({{1, 1}, {1, 2}, {2, 2}});
  const auto diag = AlignmentPath::diagonal(2);
  // Triangle (1/2,1/2), (1/2,1), (1,1).
  EXPECT_NEAR(alignment_error(p, diag), 0.125, 1e-15);
  EXPECT_NEAR(alignment_error(p, diag), oracle::shoelace_alignment_error(p, diag), 1e-15);
}

TEST(AlignmentError, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 8);
    const Index m = 2 + static_cast<Index>(rng() % 8);
    const auto p = oracle::random_path(n, m, rng);
    const auto q = oracle::random_path(n, m, rng);
    const double e = alignment_error(p, q);
    EXPECT_NEAR(e, alignment_error(q, p), 1e-15);
    EXPECT_NEAR(e, oracle::shoelace_alignment_error(p, q), 1e-12);
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 1.0);
    if (!(p == q)) {
      EXPECT_GT(e, 0.0);
    }
  }
}

TEST(AlignmentError, ShapeMismatchThrows) {
  try {
    alignment_error(AlignmentPath::diagonal(3), AlignmentPath::diagonal(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(Csv, ThreeLineFile) {
  TempDir dir;
  const auto ts = load_timeseries_csv(dir.write("a.csv", "0\n1\n2\n"), false);
  ASSERT_EQ(ts.length(), 3);
  ASSERT_EQ(ts.dims(), 1);
  EXPECT_EQ(ts.samples()(2, 0), 2.0);
}

TEST(Csv, RaggedRowReportsLine) {
  TempDir dir;
  try {
    load_timeseries_csv(dir.write("r.csv", "1,2,3\n4,5,6,7\n"), false);
    FAIL();
  } catch (const CsvError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCsvRaggedRow);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Csv, NonNumericReportsCell) {
  TempDir dir;
  try {
    load_matrix_csv(dir.write("n.csv", "1,2\n3,abc\n"), false);
    FAIL();
  } catch (const CsvError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCsvNonNumeric);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 2);
  }
}

TEST(Csv, MissingFileAndEmptyFile) {
  TempDir dir;
  try {
    load_matrix_csv(dir / "nope.csv", false);
    FAIL();
  } catch (const CsvError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFileNotFound);
  }
  try {
    load_matrix_csv(dir.write("h.csv", "a,b\n\n"), true);
    FAIL();
  } catch (const CsvError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCsvEmpty);
  }
}

TEST(Csv, HarFixtureHasSixFeatures) {
  const auto ts = load_timeseries_csv(MSWARP_FIXTURE_DIR "/har_6col.csv", true);
  ASSERT_EQ(ts.length(), 8);
  ASSERT_EQ(ts.dims(), 6);
  EXPECT_DOUBLE_EQ(ts.samples()(0, 0), 0.0181);
  EXPECT_DOUBLE_EQ(ts.samples()(7, 5), -0.0009);

  TempDir dir;
  const auto out = dir / "round.csv";
  write_matrix_csv(out, ts.samples(),
                   {"body_acc_x", "body_acc_y", "body_acc_z", "body_gyro_x", "body_gyro_y",
                    "body_gyro_z"});
  const auto back = load_timeseries_csv(out, true);
  EXPECT_EQ(back.samples(), ts.samples());
}

TEST(Csv, RoundTripIsExact) {
  std::mt19937_64 rng(3);
  const Matrix m = oracle::random_matrix(7, 4, rng) * 1e3;
  TempDir dir;
  write_matrix_csv(dir / "m.csv", m);
  EXPECT_EQ(load_matrix_csv(dir / "m.csv", false), m);
}

TEST(Csv, PathRoundTripIsOneBased) {
  TempDir dir;
  const auto p = AlignmentPath::from_one_based({{1, 1}, {1, 2}, {2, 3}});
  write_path_csv(dir / "p.csv", p);
  EXPECT_EQ(testing::read_file(dir / "p.csv"), "i,j\n1,1\n1,2\n2,3\n");
  EXPECT_EQ(load_path_csv(dir / "p.csv"), p);
}

TEST(Synthetic, DeterministicForSeed) {
  const auto a = generate_synthetic(SyntheticKind::kSwissRoll, 100, 0.0, 7);
  const auto b = generate_synthetic(SyntheticKind::kSwissRoll, 100, 0.0, 7);
  EXPECT_EQ(a.series.samples(), b.series.samples());
  EXPECT_EQ(a.latent, b.latent);
  const auto c = generate_synthetic(SyntheticKind::kSwissRoll, 100, 0.0, 8);
  EXPECT_NE(a.series.samples(), c.series.samples());
}

TEST(Synthetic, RotatedDigitFrameGrid) {
  const auto s = generate_synthetic(SyntheticKind::kRotatedDigit, 72, 0.0, 0);
  ASSERT_EQ(s.series.length(), 72);
  EXPECT_EQ(s.series.dims(), 256);
  for (Index k = 0; k < 72; ++k) EXPECT_NEAR(s.latent(k, 0), 5.0 * static_cast<double>(k), 1e-12);
  // The unrotated frame reproduces the glyph.
  const Matrix& g = digit_glyph();
  for (Index r = 0; r < 16; ++r) {
    for (Index c = 0; c < 16; ++c) EXPECT_NEAR(s.series.samples()(0, r * 16 + c), g(r, c), 1e-12);
  }
}

TEST(Synthetic, BrokenRollHasOneLatentGap) {
  const auto s = generate_synthetic(SyntheticKind::kBrokenSwissRoll, 100, 0.0, 7);
  const Vector t = s.latent.col(0);
  int big_gaps = 0;
  for (Index i = 0; i + 1 < t.size(); ++i) {
    ASSERT_LE(t(i), t(i + 1));
    if (t(i + 1) - t(i) >= kBrokenRollGapEnd - kBrokenRollGapBegin) ++big_gaps;
    EXPECT_FALSE(t(i) > kBrokenRollGapBegin && t(i) < kBrokenRollGapEnd);
  }
  EXPECT_EQ(big_gaps, 1);
}

TEST(Synthetic, DollarSignLabels) {
  const auto s = generate_synthetic(SyntheticKind::kDollarSign, 200, 0.0, 1);
  ASSERT_EQ(s.latent_columns.front(), "label");
  Index bar = 0;
  for (Index i = 0; i < s.latent.rows(); ++i) bar += s.latent(i, 0) == 1.0 ? 1 : 0;
  EXPECT_EQ(bar, 60);
}

TEST(Synthetic, KindNamesRoundTrip) {
  for (auto k : {SyntheticKind::kSwissRoll, SyntheticKind::kBrokenSwissRoll, SyntheticKind::kTwinPeaks,
                 SyntheticKind::kRotatedDigit, SyntheticKind::kDollarSign}) {
    EXPECT_EQ(parse_synthetic_kind(synthetic_kind_name(k)), k);
  }
  try {
    parse_synthetic_kind("moebius");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownKind);
    EXPECT_EQ(error_code_name(e.code()).substr(0, 2), "E_");
  }
}

}  // namespace
}  // namespace mswarp
