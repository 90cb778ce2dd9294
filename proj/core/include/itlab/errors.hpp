#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace itlab {

enum class ErrorCode {
  Syntax,
  NotARedex,
  OmegaNotAllowed,
  NotArrowType,
  NotIntersectionType,
  VariableNotFresh,
  PreconditionViolation,
  TypeMismatch,
  BindingNotFound,
  NotLeq,
  SubjectNotApplication,
  SubjectNotAbstraction,
  OmegaDominatedType,
  DecompositionMismatch,
  SubjectMismatch,
  OmegaFound,
  WitnessMismatch,
  FuelExhausted,
  WrongSystem,
  InvalidDerivation,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace itlab
