#include "pioucrypt/error.hpp"

namespace pioucrypt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kAllZeroState: return "AllZeroState";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonBijectiveTable: return "NonBijectiveTable";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDegenerateVectors: return "DegenerateVectors";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptyKey: return "EmptyKey";
    case ErrorCode::kOverflowGuard: return "OverflowGuard";
    case ErrorCode::kKeyMismatch: return "KeyMismatch";
    case ErrorCode::kMalformedCipher: return "MalformedCipher";
    case ErrorCode::kNonByteValue: return "NonByteValue";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string with_line(std::size_t line, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::kParseError, with_line(line, message)), line_(line) {}

}  // namespace pioucrypt
