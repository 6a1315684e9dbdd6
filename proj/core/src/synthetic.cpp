#include "mswarp/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "mswarp/error.hpp"

namespace mswarp {

namespace {

constexpr double kPi = std::numbers::pi;

// Thickness of the swiss-roll ribbon (uniform height in [0, kRollHeight]).
constexpr double kRollHeight = 1.0;

// Dollar sign: S-curve in the (e1, e2) plane and a bar on the line through
// the origin along (e2 + kBarTilt e3). The bar crosses the S at its centre.
constexpr double kDollarScale = 5.0;
constexpr double kBarTilt = 1.0;
constexpr double kDollarCurveFraction = 0.7;

constexpr std::array<const char*, 16> kGlyphRows = {
    "................",
    ".....######.....",
    "....########....",
    "...###....###...",
    "..........###...",
    "..........###...",
    ".........###....",
    ".....#####......",
    ".....######.....",
    ".........###....",
    "..........###...",
    "..........###...",
    "...###....###...",
    "....########....",
    ".....######.....",
    "................",
};

std::vector<double> sorted_uniform(std::mt19937_64& rng, Index n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = dist(rng);
  std::sort(v.begin(), v.end());
  return v;
}

void add_noise(Matrix& m, double noise, std::mt19937_64& rng) {
  if (noise <= 0.0) return;
  std::normal_distribution<double> dist(0.0, noise);
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) m(r, c) += dist(rng);
  }
}

SyntheticSeries swiss_roll(Index n, double noise, std::mt19937_64& rng, bool broken) {
  std::vector<double> s;
  if (broken) {
    const double kept = 1.0 - (kBrokenRollGapEnd - kBrokenRollGapBegin);
    s = sorted_uniform(rng, n, 0.0, kept);
    for (double& v : s) {
      if (v >= kBrokenRollGapBegin) v += kBrokenRollGapEnd - kBrokenRollGapBegin;
    }
  } else {
    s = sorted_uniform(rng, n, 0.0, 1.0);
  }
  std::uniform_real_distribution<double> height(0.0, kRollHeight);
  Matrix x(n, 3);
  Matrix latent(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double t = 1.5 * kPi * (1.0 + 2.0 * s[static_cast<std::size_t>(i)]);
    const double h = height(rng);
    x(i, 0) = t * std::cos(t);
    x(i, 1) = h;
    x(i, 2) = t * std::sin(t);
    latent(i, 0) = s[static_cast<std::size_t>(i)];
    latent(i, 1) = h;
  }
  add_noise(x, noise, rng);
  return {TimeSeries(std::move(x), broken ? "broken-swiss-roll" : "swiss-roll"),
          std::move(latent), {"s", "height"}};
}

SyntheticSeries twin_peaks(Index n, double noise, std::mt19937_64& rng) {
  const std::vector<double> s = sorted_uniform(rng, n, 0.0, 1.0);
  Matrix x(n, 3);
  Matrix latent(n, 1);
  for (Index i = 0; i < n; ++i) {
    const double si = s[static_cast<std::size_t>(i)];
    const double u = 2.0 * si - 1.0;
    const double v = std::sin(kPi * si);
    x(i, 0) = u;
    x(i, 1) = v;
    x(i, 2) = std::sin(kPi * u) * std::tanh(3.0 * v);
    latent(i, 0) = si;
  }
  add_noise(x, noise, rng);
  return {TimeSeries(std::move(x), "twin-peaks"), std::move(latent), {"s"}};
}

double glyph_at(const Matrix& g, double r, double c) {
  const double r0 = std::floor(r);
  const double c0 = std::floor(c);
  const double fr = r - r0;
  const double fc = c - c0;
  auto px = [&](double rr, double cc) {
    if (rr < 0 || cc < 0 || rr >= static_cast<double>(g.rows()) || cc >= static_cast<double>(g.cols())) {
      return 0.0;
    }
    return g(static_cast<Index>(rr), static_cast<Index>(cc));
  };
  return (1 - fr) * (1 - fc) * px(r0, c0) + (1 - fr) * fc * px(r0, c0 + 1) +
         fr * (1 - fc) * px(r0 + 1, c0) + fr * fc * px(r0 + 1, c0 + 1);
}

SyntheticSeries rotated_digit(Index n, double noise, std::mt19937_64& rng) {
  const Matrix& g = digit_glyph();
  const double center = 0.5 * static_cast<double>(g.rows() - 1);
  Matrix x(n, g.size());
  Matrix latent(n, 1);
  for (Index k = 0; k < n; ++k) {
    const double degrees = 360.0 * static_cast<double>(k) / static_cast<double>(n);
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    for (Index r = 0; r < g.rows(); ++r) {
      for (Index c = 0; c < g.cols(); ++c) {
        const double yy = static_cast<double>(r) - center;
        const double xx = static_cast<double>(c) - center;
        // Inverse map: sample the glyph at the point rotated by -theta.
        const double src_c = ct * xx + st * yy + center;
        const double src_r = -st * xx + ct * yy + center;
        x(k, r * g.cols() + c) = glyph_at(g, src_r, src_c);
      }
    }
    latent(k, 0) = degrees;
  }
  add_noise(x, noise, rng);
  return {TimeSeries(std::move(x), "rotated-digit"), std::move(latent), {"angle_deg"}};
}

SyntheticSeries dollar_sign(Index n, double noise, std::mt19937_64& rng) {
  const Index n_curve = static_cast<Index>(std::lround(kDollarCurveFraction * static_cast<double>(n)));
  const Index n_bar = n - n_curve;
  const std::vector<double> t = sorted_uniform(rng, n_curve, -1.5 * kPi, 1.5 * kPi);
  const std::vector<double> z = sorted_uniform(rng, n_bar, -2.5, 2.5);
  Matrix x = Matrix::Zero(n, 3);
  Matrix latent(n, 2);
  for (Index i = 0; i < n_curve; ++i) {
    const double ti = t[static_cast<std::size_t>(i)];
    const double sign = ti < 0.0 ? -1.0 : 1.0;
    x(i, 0) = kDollarScale * std::sin(ti);
    x(i, 1) = kDollarScale * sign * (std::cos(ti) - 1.0);
    latent(i, 0) = 0.0;
    latent(i, 1) = ti;
  }
  for (Index i = 0; i < n_bar; ++i) {
    const double zi = z[static_cast<std::size_t>(i)];
    const Index row = n_curve + i;
    x(row, 1) = kDollarScale * zi;
    x(row, 2) = kDollarScale * kBarTilt * zi;
    latent(row, 0) = 1.0;
    latent(row, 1) = zi;
  }
  add_noise(x, noise, rng);
  return {TimeSeries(std::move(x), "dollar-sign"), std::move(latent), {"label", "param"}};
}

}  // namespace

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "swiss-roll") return SyntheticKind::kSwissRoll;
  if (name == "broken-swiss-roll") return SyntheticKind::kBrokenSwissRoll;
  if (name == "twin-peaks") return SyntheticKind::kTwinPeaks;
  if (name == "rotated-digit") return SyntheticKind::kRotatedDigit;
  if (name == "dollar-sign") return SyntheticKind::kDollarSign;
  throw Error(ErrorCode::kUnknownKind, "unknown synthetic kind '" + std::string(name) + "'");
}

std::string_view synthetic_kind_name(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kSwissRoll: return "swiss-roll";
    case SyntheticKind::kBrokenSwissRoll: return "broken-swiss-roll";
    case SyntheticKind::kTwinPeaks: return "twin-peaks";
    case SyntheticKind::kRotatedDigit: return "rotated-digit";
    case SyntheticKind::kDollarSign: return "dollar-sign";
  }
  return "unknown";
}

const Matrix& digit_glyph() {
  static const Matrix glyph = [] {
    Matrix g(16, 16);
    for (Index r = 0; r < 16; ++r) {
      for (Index c = 0; c < 16; ++c) {
        g(r, c) = kGlyphRows[static_cast<std::size_t>(r)][c] == '#' ? 1.0 : 0.0;
      }
    }
    return g;
  }();
  return glyph;
}

SyntheticSeries generate_synthetic(SyntheticKind kind, Index n, double noise, std::uint64_t seed) {
  if (n < 8) throw Error(ErrorCode::kInvalidArgument, "synthetic series need n >= 8");
  if (!(noise >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise must be >= 0");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case SyntheticKind::kSwissRoll: return swiss_roll(n, noise, rng, false);
    case SyntheticKind::kBrokenSwissRoll: return swiss_roll(n, noise, rng, true);
    case SyntheticKind::kTwinPeaks: return twin_peaks(n, noise, rng);
    case SyntheticKind::kRotatedDigit: return rotated_digit(n, noise, rng);
    case SyntheticKind::kDollarSign: return dollar_sign(n, noise, rng);
  }
  throw Error(ErrorCode::kUnknownKind, "unknown synthetic kind");
}

}  // namespace mswarp
