#ifndef STFEM_ERROR_HPP
#define STFEM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace stfem {

enum class ErrorCode {
  SingularMatrix,
  DimensionMismatch,
  OutOfSlab,
  QuadratureUnderresolved,
  InvalidDegree,
  InvalidCount,
  OutOfDomain,
  IndexOutOfRange,
  ContinuityViolated,
  SingularSlabSystem,
  CflViolation,
  IncompatibleDimensions,
  QuadratureNotConverged,
  NonPositiveError,
  TooFewLevels,
  ConfigInvalid,
  UnknownSolutionId,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stfem

#endif
