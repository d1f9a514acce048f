#include "qubitizer/errors.hpp"

namespace qubitizer {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kEmptyString: return "EmptyString";
    case ErrorCode::kNotQubitized: return "NotQubitized";
    case ErrorCode::kUnsupportedString: return "UnsupportedString";
    case ErrorCode::kOverlappingSupports: return "OverlappingSupports";
    case ErrorCode::kTooManyQubits: return "TooManyQubits";
    case ErrorCode::kUnknownMacro: return "UnknownMacro";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kAllZeroWeights: return "AllZeroWeights";
    case ErrorCode::kRegisterMismatch: return "RegisterMismatch";
    case ErrorCode::kNonUnitaryTerm: return "NonUnitaryTerm";
    case ErrorCode::kNotReflection: return "NotReflection";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kNotSingleCycle: return "NotSingleCycle";
    case ErrorCode::kNotBijective: return "NotBijective";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kBadPartition: return "BadPartition";
    case ErrorCode::kTooFewTerms: return "TooFewTerms";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace qubitizer
