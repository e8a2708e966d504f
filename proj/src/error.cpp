#include "evifore/error.hpp"

namespace evifore {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TotalConflict: return "TotalConflict";
    case ErrorCode::MismatchedFrames: return "MismatchedFrames";
    case ErrorCode::InvalidBpa: return "InvalidBpa";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ZeroRange: return "ZeroRange";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string decorate(const std::string& message, std::optional<std::size_t> row) {
  if (!row) return message;
  return "row " + std::to_string(*row) + ": " + message;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row)
    : std::runtime_error(decorate(message, row)), code_(code), row_(row) {}

} // namespace evifore
