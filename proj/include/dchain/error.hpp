#pragma once

#include <stdexcept>
#include <string>

namespace dchain {

// Stable numeric codes shared with the C API (see dchain.h).
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kZeroPolynomial = 3,
  kNonConvergence = 4,
  kDegenerateLeading = 5,
  kParse = 6,
  kEndpointWithinDelta = 7,
  kDeltaTooLarge = 8,
  kPathNotFound = 9,
  kCertificationFailed = 10,
  kUnsupported = 11,
  kBudget = 12,
  kGridTooLarge = 13,
  kInternal = 99,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace dchain
