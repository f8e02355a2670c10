#pragma once

#include <stdexcept>
#include <string>

namespace cpsres {

enum class ErrorCode {
  invalid_argument,
  empty_distribution,
  negative_fraction,
  not_normalized,
  degree_zero,
  degenerate_range,
  unsolvable,
  domain_error,
  unsupported_params,
  non_monotone_indicator,
  empty_degrees,
  wrong_delay,
  io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cpsres
