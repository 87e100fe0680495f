#include "sheath/error.hpp"

namespace sheath {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRejectAlphaOne: return "REJECT_ALPHA_ONE";
    case ErrorCode::kRejectVelocity1: return "REJECT_VELOCITY1";
    case ErrorCode::kRejectEps: return "REJECT_EPS";
    case ErrorCode::kDomain: return "DOMAIN";
    case ErrorCode::kNeutralityViolation: return "NEUTRALITY_VIOLATION";
    case ErrorCode::kNotApplicable: return "NOT_APPLICABLE";
    case ErrorCode::kNoSolutionCriterion: return "NO_SOLUTION_CRITERION";
    case ErrorCode::kNoSolutionEmptyB: return "NO_SOLUTION_EMPTY_B";
    case ErrorCode::kPhiBOutOfRange: return "PHI_B_OUT_OF_RANGE";
    case ErrorCode::kMarginalTail: return "MARGINAL_TAIL";
    case ErrorCode::kInsufficientDecay: return "INSUFFICIENT_DECAY";
    case ErrorCode::kBohmViolated: return "BOHM_VIOLATED";
    case ErrorCode::kVelocity1Violated: return "VELOCITY1_VIOLATED";
    case ErrorCode::kNoRoot: return "NO_ROOT";
    case ErrorCode::kUnsupportedReduction: return "UNSUPPORTED_REDUCTION";
    case ErrorCode::kInvalidInput: return "INVALID_INPUT";
    case ErrorCode::kConfig: return "CONFIG";
  }
  return "UNKNOWN";
}

bool is_no_solution(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoSolutionCriterion:
    case ErrorCode::kNoSolutionEmptyB:
    case ErrorCode::kPhiBOutOfRange:
    case ErrorCode::kBohmViolated:
    case ErrorCode::kNoRoot:
    case ErrorCode::kMarginalTail:
      return true;
    default:
      return false;
  }
}

SheathError::SheathError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw SheathError(code, message); }

}  // namespace sheath
