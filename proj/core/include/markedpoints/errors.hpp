#pragma once

#include <stdexcept>
#include <string>

namespace markedpoints {

/// Categories used to map failures onto CLI exit statuses.
enum class ErrorCategory
{
  usage,      // bad arguments or preconditions violated by the caller
  data,       // invalid input data (files, patterns, networks)
  numerical,  // factorization failures, degenerate normalizations
};

enum class ErrorCode
{
  invalid_argument,
  invalid_window,
  empty_erosion,
  point_outside_window,
  invalid_network,
  disconnected_network,
  invalid_location,
  out_of_domain,
  non_finite_mark,
  mixed_domain,
  missing_type_label,
  no_marks,
  domain_mismatch,
  zero_intensity,
  invalid_normalization,
  degenerate_bandwidth,
  grid_too_coarse,
  empty_interval,
  zero_variance,
  too_few_points,
  degenerate_normalization,
  grid_mismatch,
  missing_upper_bound,
  asymmetric_covariance,
  non_psd_covariance,
  balanced_range,
  no_leaf_vertices,
  invalid_envelope,
  io_error,
  parse_error,
};

ErrorCategory category_of(ErrorCode code) noexcept;
const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
  throw Error(code, what);
}

} // namespace markedpoints
