#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mswarp {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kFileNotFound,
  kCsvRaggedRow,
  kCsvNonNumeric,
  kCsvEmpty,
  kUnknownKind,
  kIsolatedVertex,
  kDisconnectedGraph,
  kOperatorNorm,
  kOutOfRange,
  kInvalidPath,
  kIo,
  kNumerical,
};

/// Stable machine-readable name, e.g. "E_CSV_RAGGED".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// CSV failures carry the 1-based line and column of the offending cell
/// (column 0 when the whole line is at fault).
class CsvError : public Error {
 public:
  CsvError(ErrorCode code, const std::string& message, long line, long column)
      : Error(code, message), line_(line), column_(column) {}

  long line() const noexcept { return line_; }
  long column() const noexcept { return column_; }

 private:
  long line_;
  long column_;
};

}  // namespace mswarp
