#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace signed_spectra {

enum class ErrorCode {
  DuplicateEdge,
  LoopEdge,
  VertexOutOfRange,
  InvalidSign,
  TooLarge,
  TooSmall,
  UnderlyingMismatch,
  NotACycle,
  InvalidRange,
  CapExceeded,
  TooLargeForExact,
  ConvergenceFailure,
  NormalizationFailure,
  InvalidMoveEdge,
  InvalidEdge,
  Disconnected,
  NegativeRadicand,
  BudgetExceeded,
  CorpusMissing,
  NotUnbalanced,
  PreconditionNotMet,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::InvalidSign: return "InvalidSign";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::UnderlyingMismatch: return "UnderlyingMismatch";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::InvalidMoveEdge: return "InvalidMoveEdge";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CorpusMissing: return "CorpusMissing";
    case ErrorCode::NotUnbalanced: return "NotUnbalanced";
    case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable ErrorCode. Every failure raised by
/// the library is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace signed_spectra
