#include "dchain/error.hpp"

namespace dchain {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kZeroPolynomial: return "zero_polynomial";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kDegenerateLeading: return "degenerate_leading";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kEndpointWithinDelta: return "endpoint_within_delta";
    case ErrorCode::kDeltaTooLarge: return "delta_too_large";
    case ErrorCode::kPathNotFound: return "path_not_found";
    case ErrorCode::kCertificationFailed: return "certification_failed";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kGridTooLarge: return "grid_too_large";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace dchain
