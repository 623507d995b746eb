#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gqo {

enum class ErrorCode {
  NotSquare,
  NonFinite,
  DimMismatch,
  ZeroVector,
  NotHermitian,
  NotPsd,
  InvalidState,
  SingularFrame,
  NotNormalized,
  NotOrthonormal,
  DuplicateValues,
  DuplicateLabels,
  InvalidEffectFamily,
  NotPovm,
  NotIdempotent,
  InvalidPartition,
  UnknownLabel,
  InvalidDistribution,
  DegenerateDenominator,
  SingularReconstruction,
  NoWitnessFound,
  Indeterminate,
  InvalidTransitionMatrix,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::DuplicateValues: return "DuplicateValues";
    case ErrorCode::DuplicateLabels: return "DuplicateLabels";
    case ErrorCode::InvalidEffectFamily: return "InvalidEffectFamily";
    case ErrorCode::NotPovm: return "NotPovm";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::SingularReconstruction: return "SingularReconstruction";
    case ErrorCode::NoWitnessFound: return "NoWitnessFound";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::InvalidTransitionMatrix: return "InvalidTransitionMatrix";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a code naming the violated
/// contract plus a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gqo
