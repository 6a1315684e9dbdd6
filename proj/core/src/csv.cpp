#include "mswarp/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "mswarp/error.hpp"

namespace mswarp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::vector<double>> parse_rows(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError(ErrorCode::kFileNotFound, "cannot open " + path.string(), 0, 0);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  bool header_pending = has_header;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    long column = 0;
    std::size_t start = 0;
    while (true) {
      ++column;
      const std::size_t comma = body.find(',', start);
      const std::string_view cell =
          trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw CsvError(ErrorCode::kCsvNonNumeric,
                       path.string() + ": non-numeric cell '" + std::string(cell) + "' at line " +
                           std::to_string(line_no) + ", column " + std::to_string(column),
                       line_no, column);
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw CsvError(ErrorCode::kCsvRaggedRow,
                     path.string() + ": line " + std::to_string(line_no) + " has " +
                         std::to_string(row.size()) + " columns, expected " +
                         std::to_string(width),
                     line_no, 0);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw CsvError(ErrorCode::kCsvEmpty, path.string() + ": no data rows", line_no, 0);
  }
  return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

Matrix load_matrix_csv(const std::filesystem::path& path, bool has_header) {
  const auto rows = parse_rows(path, has_header);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return m;
}

TimeSeries load_timeseries_csv(const std::filesystem::path& path, bool has_header) {
  return TimeSeries(load_matrix_csv(path, has_header), path.stem().string());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header) {
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  if (!header.empty()) out << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      out << (c ? "," : "") << format_double(m(r, c));
    }
    out << '\n';
  }
  write_text(path, out.str());
}

void write_path_csv(const std::filesystem::path& path, const AlignmentPath& p) {
  std::ostringstream out;
  out << "i,j\n";
  for (const IndexPair& q : p.pairs()) out << q.i + 1 << ',' << q.j + 1 << '\n';
  write_text(path, out.str());
}

AlignmentPath load_path_csv(const std::filesystem::path& path) {
  const Matrix m = load_matrix_csv(path, true);
  if (m.cols() != 2) {
    throw CsvError(ErrorCode::kCsvRaggedRow, path.string() + ": path file needs columns i,j", 0, 0);
  }
  std::vector<IndexPair> pairs;
  for (Index r = 0; r < m.rows(); ++r) {
    pairs.push_back({static_cast<Index>(m(r, 0)) - 1, static_cast<Index>(m(r, 1)) - 1});
  }
  return AlignmentPath(std::move(pairs));
}

}  // namespace mswarp
