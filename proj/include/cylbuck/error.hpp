#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cylbuck {

enum class ErrorCode {
  // geometry
  NonClosable,
  NegativeCurvature,
  InvalidProfile,
  // shell fields / forms
  SingularJacobian,
  ZeroDenominator,
  NonSymmetricInput,
  LoadTooLarge,
  InvalidConfig,
  // discretize
  DimensionMismatch,
  SolverDiverged,
  // ansatz
  SupportOverflow,
  NotAZero,
  RegularityViolation,
  QuadratureNotConverged,
  // scaling
  AllPointsFailed,
  TooFewPoints,
  // io
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable code; every failure in the
/// library surfaces through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cylbuck
