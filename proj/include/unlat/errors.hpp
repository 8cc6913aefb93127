#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unlat {

enum class ErrorCode {
  TagMismatch,
  NegativeInput,
  NegativeTestVector,
  NonFinite,
  InvalidArgument,
  MNotFound,
  NonStepSequence,
  RefinementOverflow,
  NotOrderBounded,
  NoIndexFound,
  NotADecomposition,
  NegativePart,
  HorizonExhausted,
  SelectionStalled,
  NoRoom,
  NotUnNull,
  ValidationError,
};

/// Machine-readable name of an error code, e.g. "TagMismatch".
std::string_view to_string(ErrorCode code);

class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unlat
