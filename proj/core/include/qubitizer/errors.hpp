#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qubitizer {

enum class ErrorCode {
  kNotHermitian,
  kNoConvergence,
  kDimMismatch,
  kEmptyString,
  kNotQubitized,
  kUnsupportedString,
  kOverlappingSupports,
  kTooManyQubits,
  kUnknownMacro,
  kOutOfRange,
  kAllZeroWeights,
  kRegisterMismatch,
  kNonUnitaryTerm,
  kNotReflection,
  kInvalidSpec,
  kNotSingleCycle,
  kNotBijective,
  kNotNormalized,
  kBadPartition,
  kTooFewTerms,
  kParseError,
  kVerificationFailed,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code is machine readable, the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qubitizer
