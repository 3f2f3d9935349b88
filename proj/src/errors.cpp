#include "bimetro/errors.hpp"

namespace bimetro {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::non_unitary: return "NON_UNITARY";
    case ErrorCode::truncation_exceeded: return "TRUNCATION_EXCEEDED";
    case ErrorCode::non_integer_occupation: return "NON_INTEGER_OCCUPATION";
    case ErrorCode::variance_too_small: return "VARIANCE_TOO_SMALL";
    case ErrorCode::zero_information: return "ZERO_INFORMATION";
    case ErrorCode::infeasible_grid: return "INFEASIBLE_GRID";
    case ErrorCode::out_of_arc: return "OUT_OF_ARC";
    case ErrorCode::singular_covariance: return "SINGULAR_COVARIANCE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code) {}

}  // namespace bimetro
