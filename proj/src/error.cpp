#include "gpm/error.hpp"

namespace gpm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::BadIdentity: return "BadIdentity";
    case ErrorCode::BadInverse: return "BadInverse";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NoV0Letter: return "NoV0Letter";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::EdgeViolation: return "EdgeViolation";
    case ErrorCode::SetupInvalid: return "SetupInvalid";
    case ErrorCode::NormTooLarge: return "NormTooLarge";
    case ErrorCode::BadIdentityValue: return "BadIdentityValue";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::SupportEscape: return "SupportEscape";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotPositiveValue: return "NotPositiveValue";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::ConfigSchema: return "ConfigSchema";
  }
  return "Unknown";
}

}  // namespace gpm
