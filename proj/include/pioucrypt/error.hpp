#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pioucrypt {

enum class ErrorCode {
  kInvalidArgument,
  kAllZeroState,
  kInvalidRange,
  kIndexOutOfRange,
  kNonBijectiveTable,
  kDimensionMismatch,
  kParseError,
  kDegenerateVectors,
  kEmptyMatrix,
  kShapeMismatch,
  kEmptyKey,
  kOverflowGuard,
  kKeyMismatch,
  kMalformedCipher,
  kNonByteValue,
  kIoError,
  kUnsupportedFormat,
  kMalformedHeader,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported as an Error carrying a code, so
// callers can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Text-format failures. line() is 1-based; 0 means the failure is not tied
// to a single line (e.g. a missing section at end of input).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pioucrypt
