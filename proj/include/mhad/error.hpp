#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mhad {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotNormalized,
  EvenModulus,
  NotCoprime,
  NotModularHadamard,
  NotADesign,
  ConditionViolated,
  IncompatibleDesigns,
  ModulusMismatch,
  UnsupportedModulus,
  UnknownName,
  SpaceTooLarge,
  InvalidShard,
  Parse,
  Internal,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (and tests)
// can tell precondition violations apart without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace mhad
