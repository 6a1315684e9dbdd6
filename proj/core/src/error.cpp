#include "mswarp/error.hpp"

namespace mswarp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "E_INVALID_ARGUMENT";
    case ErrorCode::kShapeMismatch: return "E_SHAPE_MISMATCH";
    case ErrorCode::kFileNotFound: return "E_FILE_NOT_FOUND";
    case ErrorCode::kCsvRaggedRow: return "E_CSV_RAGGED";
    case ErrorCode::kCsvNonNumeric: return "E_CSV_NON_NUMERIC";
    case ErrorCode::kCsvEmpty: return "E_CSV_EMPTY";
    case ErrorCode::kUnknownKind: return "E_UNKNOWN_KIND";
    case ErrorCode::kIsolatedVertex: return "E_ISOLATED_VERTEX";
    case ErrorCode::kDisconnectedGraph: return "E_DISCONNECTED_GRAPH";
    case ErrorCode::kOperatorNorm: return "E_OPERATOR_NORM";
    case ErrorCode::kOutOfRange: return "E_OUT_OF_RANGE";
    case ErrorCode::kInvalidPath: return "E_INVALID_PATH";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kNumerical: return "E_NUMERICAL";
  }
  return "E_UNKNOWN";
}

}  // namespace mswarp
