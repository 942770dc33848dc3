#include "cylbuck/error.hpp"

namespace cylbuck {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonClosable: return "NonClosable";
    case ErrorCode::NegativeCurvature: return "NegativeCurvature";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NonSymmetricInput: return "NonSymmetricInput";
    case ErrorCode::LoadTooLarge: return "LoadTooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::SupportOverflow: return "SupportOverflow";
    case ErrorCode::NotAZero: return "NotAZero";
    case ErrorCode::RegularityViolation: return "RegularityViolation";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::AllPointsFailed: return "AllPointsFailed";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cylbuck
