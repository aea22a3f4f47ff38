#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qinv {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorCode {
  kInvalidFiber = 1,
  kNotInvertible,
  kDomain,
  kPrecondition,
  kParse,
  kUnsupported,
  kNumericInconsistency,
  kOverflow,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qinv
