#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace indep {

enum class ErrorCode {
  DuplicateLabel,
  EmptySpace,
  UnknownLabel,
  SpaceMismatch,
  InvalidPartition,
  TooLarge,
  TrivialAlgebra,
  FewerThanTwo,
  EmptyFamily,
  MeasureMismatch,
  NotAProbability,
  UnknownAlgebraIndex,
  NotInAlgebra,
  NotLogicallyIndependent,
  NotSigmaLogicallyIndependent,
  NotDisjoint,
  UnionNotCylinder,
  ZeroMeasure,
  SupportMismatch,
  ZeroVariance,
  ZeroVarianceForCLT,
  HorizonExceeded,
  ConditionNotVerified,
  EmptyExperiment,
  TooShort,
  BadRational,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base class of every error raised by the library. The code is stable and
/// is what the CLI prints in reports; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace indep
