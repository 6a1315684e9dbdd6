#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mswarp/data.hpp"

namespace mswarp {

enum class SyntheticKind { kSwissRoll, kBrokenSwissRoll, kTwinPeaks, kRotatedDigit, kDollarSign };

/// Accepts the CLI spellings ("swiss-roll", "broken-swiss-roll", ...).
/// Throws Error(kUnknownKind).
SyntheticKind parse_synthetic_kind(std::string_view name);
std::string_view synthetic_kind_name(SyntheticKind kind);

struct SyntheticSeries {
  TimeSeries series;
  Matrix latent;                             // one row per sample
  std::vector<std::string> latent_columns;   // sidecar header
};

/// Deterministic for a fixed seed. `noise` is the standard deviation of the
/// isotropic Gaussian added to every coordinate (pixel for rotated-digit).
SyntheticSeries generate_synthetic(SyntheticKind kind, Index n, double noise,
                                   std::uint64_t seed);

/// The 16x16 "3" glyph used by the rotated-digit generator, row-major, 0/1.
const Matrix& digit_glyph();

/// Latent range removed from the broken swiss roll: [begin, end).
inline constexpr double kBrokenRollGapBegin = 0.4;
inline constexpr double kBrokenRollGapEnd = 0.6;

}  // namespace mswarp
