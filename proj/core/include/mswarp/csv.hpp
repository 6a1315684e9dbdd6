#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mswarp/data.hpp"

namespace mswarp {

/// Reads a comma-separated numeric file, one sample per line. Blank lines are
/// skipped. Throws CsvError (missing file, ragged row, non-numeric cell).
TimeSeries load_timeseries_csv(const std::filesystem::path& path, bool has_header);

/// Same parser, no TimeSeries invariants (any shape with at least one row).
Matrix load_matrix_csv(const std::filesystem::path& path, bool has_header);

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header = {});

/// Columns i,j with 1-based indices.
void write_path_csv(const std::filesystem::path& path, const AlignmentPath& p);
AlignmentPath load_path_csv(const std::filesystem::path& path);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace mswarp
