#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace desolve {

enum class ErrorCode {
  invalid_argument,
  numeric_error,
  unsupported_order,
  singular_jacobian,
  domain_error,
  invalid_constraints,
  tuning_failure,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the ErrorCode categories.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by dense solves that hit an exactly singular (or non-finite) system.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double condition_estimate);

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace desolve
