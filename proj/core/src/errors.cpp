#include "itlab/errors.hpp"

namespace itlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::NotARedex: return "NotARedex";
    case ErrorCode::OmegaNotAllowed: return "OmegaNotAllowed";
    case ErrorCode::NotArrowType: return "NotArrowType";
    case ErrorCode::NotIntersectionType: return "NotIntersectionType";
    case ErrorCode::VariableNotFresh: return "VariableNotFresh";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::BindingNotFound: return "BindingNotFound";
    case ErrorCode::NotLeq: return "NotLeq";
    case ErrorCode::SubjectNotApplication: return "SubjectNotApplication";
    case ErrorCode::SubjectNotAbstraction: return "SubjectNotAbstraction";
    case ErrorCode::OmegaDominatedType: return "OmegaDominatedType";
    case ErrorCode::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::SubjectMismatch: return "SubjectMismatch";
    case ErrorCode::OmegaFound: return "OmegaFound";
    case ErrorCode::WitnessMismatch: return "WitnessMismatch";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::WrongSystem: return "WrongSystem";
    case ErrorCode::InvalidDerivation: return "InvalidDerivation";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : Error(ErrorCode::Syntax, "at byte " + std::to_string(offset) + ": " + message),
      offset_(offset),
      reason_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace itlab
