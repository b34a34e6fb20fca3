#include "mhad/error.hpp"

namespace mhad {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotNormalized: return "not-normalized";
    case ErrorCode::EvenModulus: return "even-modulus";
    case ErrorCode::NotCoprime: return "not-coprime";
    case ErrorCode::NotModularHadamard: return "not-modular-hadamard";
    case ErrorCode::NotADesign: return "not-a-design";
    case ErrorCode::ConditionViolated: return "condition-violated";
    case ErrorCode::IncompatibleDesigns: return "incompatible-designs";
    case ErrorCode::ModulusMismatch: return "modulus-mismatch";
    case ErrorCode::UnsupportedModulus: return "unsupported-modulus";
    case ErrorCode::UnknownName: return "unknown-name";
    case ErrorCode::SpaceTooLarge: return "space-too-large";
    case ErrorCode::InvalidShard: return "invalid-shard";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace mhad
