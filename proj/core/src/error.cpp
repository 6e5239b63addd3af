#include "critherm/error.hpp"

namespace critherm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "invalid_argument";
    case ErrorCode::SizeCapExceeded:
      return "size_cap_exceeded";
    case ErrorCode::NonHermitian:
      return "non_hermitian";
    case ErrorCode::SolverFailure:
      return "solver_failure";
    case ErrorCode::GridBoundary:
      return "grid_boundary";
    case ErrorCode::NonOverlappingRanges:
      return "non_overlapping_ranges";
    case ErrorCode::MixedRatios:
      return "mixed_ratios";
    case ErrorCode::Config:
      return "config";
    case ErrorCode::Io:
      return "io";
  }
  return "unknown";
}

}  // namespace critherm
