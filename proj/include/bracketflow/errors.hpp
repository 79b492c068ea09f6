#pragma once

#include <stdexcept>
#include <string>

namespace bflow {

/// Broad failure classes; the CLI maps them to exit codes.
enum class ErrorClass {
  Validation,      // bad input or violated precondition (exit 2)
  NonConvergence,  // iteration budget or integrator failure (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what, ErrorClass cls = ErrorClass::Validation)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), class_(cls) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string kind_;
  ErrorClass class_;
};

#define BFLOW_DEFINE_ERROR(Name, Cls)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what, Cls) {} \
  };

BFLOW_DEFINE_ERROR(SingularGauge, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(NotALieBracket, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(NotSolvable, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(NilpotentInput, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(ZeroBracket, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(DimensionMismatch, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(NonCanonicalBeta, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(GaugeMismatch, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(IdentityViolation, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(NotPositiveDefinite, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(OutOfRange, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(InterpolationGap, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(UnknownName, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(ParamOutOfRange, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(ParseError, ErrorClass::Validation)
BFLOW_DEFINE_ERROR(StepFailure, ErrorClass::NonConvergence)
BFLOW_DEFINE_ERROR(Diverged, ErrorClass::NonConvergence)
BFLOW_DEFINE_ERROR(NonConvergence, ErrorClass::NonConvergence)

#undef BFLOW_DEFINE_ERROR

}  // namespace bflow
