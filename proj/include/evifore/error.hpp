#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace evifore {

enum class ErrorCode {
  NonPositiveValue,
  NonMonotoneTimestamp,
  SeriesTooShort,
  IndexOutOfRange,
  TotalConflict,
  MismatchedFrames,
  InvalidBpa,
  LengthMismatch,
  EmptyInput,
  ZeroRange,
  IoError,
  ParseError,
  VersionMismatch,
  CorruptSnapshot,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library. `row` is set for errors tied to a
// 1-based input line (CSV ingestion).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

} // namespace evifore
