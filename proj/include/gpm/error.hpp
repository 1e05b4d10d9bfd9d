#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpm {

enum class ErrorCode {
  // graphs and groups
  LoopEdge,
  UnknownVertex,
  NotAssociative,
  BadIdentity,
  BadInverse,
  NotLatinSquare,
  TooLarge,
  // words
  ElementOutOfRange,
  ContextMismatch,
  BudgetExceeded,
  EmptySet,
  NoV0Letter,
  NotUnique,
  // algebra and actions
  NotHermitian,
  NotCentral,
  StructureMismatch,
  NotHomomorphism,
  EdgeViolation,
  SetupInvalid,
  // multipliers and cocycles
  NormTooLarge,
  BadIdentityValue,
  HypothesisViolated,
  NotPositive,
  SupportEscape,
  NotUnital,
  NotPositiveValue,
  // configuration
  ConfigParse,
  ConfigSchema,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library surfaces as this exception. `path` is a JSON
/// pointer into the scenario config when the failure can be traced to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

  Error with_path(std::string path) const { return Error(code_, what(), std::move(path)); }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace gpm
