// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0

#ifndef CHDET_ERRORS_HPP
#define CHDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chdet {

enum class ErrorCode {
  domain_violation = 1,   // evaluation outside a finiteness domain
  overflow_range = 2,     // argument past a hard overflow guard
  out_of_range = 3,       // root/inverse target unreachable
  infeasible = 4,         // no feasible design for the request
  invalid_arrangement = 5,// a PMF cannot be realized at the given length
  invalid_argument = 6,   // malformed input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::domain_violation, what) {}
};
struct OverflowRangeError : Error {
  explicit OverflowRangeError(const std::string& what)
      : Error(ErrorCode::overflow_range, what) {}
};
struct OutOfRangeError : Error {
  explicit OutOfRangeError(const std::string& what)
      : Error(ErrorCode::out_of_range, what) {}
};
struct InfeasibleError : Error {
  explicit InfeasibleError(const std::string& what)
      : Error(ErrorCode::infeasible, what) {}
};
struct InvalidArrangementError : Error {
  explicit InvalidArrangementError(const std::string& what)
      : Error(ErrorCode::invalid_arrangement, what) {}
};
struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

}  // namespace chdet

#endif
