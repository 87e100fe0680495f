#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sheath {

enum class ErrorCode {
  kRejectAlphaOne,
  kRejectVelocity1,
  kRejectEps,
  kDomain,
  kNeutralityViolation,
  kNotApplicable,
  kNoSolutionCriterion,
  kNoSolutionEmptyB,
  kPhiBOutOfRange,
  kMarginalTail,
  kInsufficientDecay,
  kBohmViolated,
  kVelocity1Violated,
  kNoRoot,
  kUnsupportedReduction,
  kInvalidInput,
  kConfig,
};

// Upper-case wire name, e.g. "PHI_B_OUT_OF_RANGE".
std::string_view to_string(ErrorCode code);

// True for the codes that mean "the problem has no solution" rather than
// "the input is malformed".
bool is_no_solution(ErrorCode code);

class SheathError : public std::runtime_error {
 public:
  SheathError(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace sheath
