#include "desolve/error.hpp"

namespace desolve {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::numeric_error: return "numeric-error";
    case ErrorCode::unsupported_order: return "unsupported-order";
    case ErrorCode::singular_jacobian: return "singular-jacobian";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::invalid_constraints: return "invalid-constraints";
    case ErrorCode::tuning_failure: return "tuning-failure";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

NumericError::NumericError(const std::string& what, double condition_estimate)
    : Error(ErrorCode::numeric_error, what), condition_estimate_(condition_estimate) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace desolve
