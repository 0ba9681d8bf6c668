#pragma once

#include <stdexcept>
#include <string>

namespace ecm {

enum class ErrorCode {
  InvalidPrime,
  ZeroInverse,
  DegreeTooLarge,
  ZeroPolynomial,
  AllFibersSingular,
  NotConvertible,
  DegenerateFamily,
  OrderMissing,
  InvalidOrder,
  UnknownOracle,
  UnknownFamily,
  OutsideValidity,
  InvalidSpec,
  InvalidArgument,
  CapExceeded,
  ResourceError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecm
