#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace erm {

enum class ErrorCode {
  MissingFile,
  MalformedRow,
  NonFiniteValue,
  LabelOutsideSpace,
  IoFailure,
  DimensionMismatch,
  InvalidSamplerRange,
  ZeroPoints,
  IndexOutOfRange,
  InvalidLabel,
  NonFiniteInput,
  LabelSpaceMismatch,
  InvalidArgument,
  SingularGram,
  DivergenceDetected,
  NonFiniteObjective,
  MalformedCsv,
  MalformedModel,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::LabelOutsideSpace: return "LabelOutsideSpace";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSamplerRange: return "InvalidSamplerRange";
    case ErrorCode::ZeroPoints: return "ZeroPoints";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::LabelSpaceMismatch: return "LabelSpaceMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::DivergenceDetected: return "DivergenceDetected";
    case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::MalformedModel: return "MalformedModel";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as an Error carrying a code.
/// File-parsing errors also carry the 1-based line (and column, when known).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        line_(line),
        column_(column) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace erm
