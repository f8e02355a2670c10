#include "core/errors.hpp"

namespace cpsres {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return "InvalidArgument";
    case ErrorCode::empty_distribution:
      return "EmptyDistribution";
    case ErrorCode::negative_fraction:
      return "NegativeFraction";
    case ErrorCode::not_normalized:
      return "NotNormalized";
    case ErrorCode::degree_zero:
      return "DegreeZero";
    case ErrorCode::degenerate_range:
      return "DegenerateRange";
    case ErrorCode::unsolvable:
      return "Unsolvable";
    case ErrorCode::domain_error:
      return "DomainError";
    case ErrorCode::unsupported_params:
      return "UnsupportedParams";
    case ErrorCode::non_monotone_indicator:
      return "NonMonotoneIndicator";
    case ErrorCode::empty_degrees:
      return "EmptyDegrees";
    case ErrorCode::wrong_delay:
      return "WrongDelay";
    case ErrorCode::io_error:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace cpsres
