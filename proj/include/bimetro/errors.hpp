#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bimetro {

enum class ErrorCode {
  non_unitary,
  truncation_exceeded,
  non_integer_occupation,
  variance_too_small,
  zero_information,
  infeasible_grid,
  out_of_arc,
  singular_covariance,
};

std::string_view error_code_name(ErrorCode code);

// Domain error carrying one of the library's named error conditions.  The
// what() string is prefixed with the condition name so callers (and the CLI)
// can report it without re-deriving the code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bimetro
