#include "qinv/error.hpp"

namespace qinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidFiber: return "invalid_fiber";
    case ErrorCode::kNotInvertible: return "not_invertible";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNumericInconsistency: return "numeric_inconsistency";
    case ErrorCode::kOverflow: return "overflow";
  }
  return "unknown";
}

}  // namespace qinv
