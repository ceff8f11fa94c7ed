#include "markedpoints/errors.hpp"

namespace markedpoints {

ErrorCategory category_of(ErrorCode code) noexcept
{
  switch (code) {
  case ErrorCode::invalid_argument:
  case ErrorCode::empty_interval:
  case ErrorCode::grid_mismatch:
  case ErrorCode::missing_upper_bound:
  case ErrorCode::invalid_envelope:
    return ErrorCategory::usage;
  case ErrorCode::non_psd_covariance:
  case ErrorCode::degenerate_normalization:
  case ErrorCode::zero_variance:
  case ErrorCode::degenerate_bandwidth:
    return ErrorCategory::numerical;
  default:
    return ErrorCategory::data;
  }
}

const char* to_string(ErrorCode code) noexcept
{
  switch (code) {
  case ErrorCode::invalid_argument: return "invalid argument";
  case ErrorCode::invalid_window: return "invalid window";
  case ErrorCode::empty_erosion: return "empty erosion";
  case ErrorCode::point_outside_window: return "point outside window";
  case ErrorCode::invalid_network: return "invalid network";
  case ErrorCode::disconnected_network: return "disconnected network";
  case ErrorCode::invalid_location: return "invalid network location";
  case ErrorCode::out_of_domain: return "point out of domain";
  case ErrorCode::non_finite_mark: return "non-finite mark";
  case ErrorCode::mixed_domain: return "mixed domain kinds";
  case ErrorCode::missing_type_label: return "missing type label";
  case ErrorCode::no_marks: return "no marks";
  case ErrorCode::domain_mismatch: return "domain mismatch";
  case ErrorCode::zero_intensity: return "zero intensity at data point";
  case ErrorCode::invalid_normalization: return "invalid normalization";
  case ErrorCode::degenerate_bandwidth: return "degenerate bandwidth";
  case ErrorCode::grid_too_coarse: return "grid too coarse";
  case ErrorCode::empty_interval: return "empty interval";
  case ErrorCode::zero_variance: return "zero mark variance";
  case ErrorCode::too_few_points: return "too few points";
  case ErrorCode::degenerate_normalization: return "degenerate normalization";
  case ErrorCode::grid_mismatch: return "grid mismatch";
  case ErrorCode::missing_upper_bound: return "missing intensity upper bound";
  case ErrorCode::asymmetric_covariance: return "asymmetric covariance";
  case ErrorCode::non_psd_covariance: return "covariance not positive semidefinite";
  case ErrorCode::balanced_range: return "balanced field out of range";
  case ErrorCode::no_leaf_vertices: return "network has no degree-1 vertices";
  case ErrorCode::invalid_envelope: return "invalid envelope request";
  case ErrorCode::io_error: return "i/o error";
  case ErrorCode::parse_error: return "parse error";
  }
  return "unknown";
}

} // namespace markedpoints
