#include "stfem/error.hpp"

namespace stfem {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutOfSlab: return "OutOfSlab";
    case ErrorCode::QuadratureUnderresolved: return "QuadratureUnderresolved";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ContinuityViolated: return "ContinuityViolated";
    case ErrorCode::SingularSlabSystem: return "SingularSlabSystem";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::IncompatibleDimensions: return "IncompatibleDimensions";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::TooFewLevels: return "TooFewLevels";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::UnknownSolutionId: return "UnknownSolutionId";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace stfem
