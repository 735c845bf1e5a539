#include "indep/error.hpp"

namespace indep {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TrivialAlgebra: return "TrivialAlgebra";
    case ErrorCode::FewerThanTwo: return "FewerThanTwo";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::MeasureMismatch: return "MeasureMismatch";
    case ErrorCode::NotAProbability: return "NotAProbability";
    case ErrorCode::UnknownAlgebraIndex: return "UnknownAlgebraIndex";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotLogicallyIndependent: return "NotLogicallyIndependent";
    case ErrorCode::NotSigmaLogicallyIndependent: return "NotSigmaLogicallyIndependent";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::UnionNotCylinder: return "UnionNotCylinder";
    case ErrorCode::ZeroMeasure: return "ZeroMeasure";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::ZeroVarianceForCLT: return "ZeroVarianceForCLT";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::ConditionNotVerified: return "ConditionNotVerified";
    case ErrorCode::EmptyExperiment: return "EmptyExperiment";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::BadRational: return "BadRational";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace indep
