#include "sjk/error.hpp"

namespace sjk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::NotInBall: return "NotInBall";
    case ErrorKind::NotInUpper: return "NotInUpper";
    case ErrorKind::RejectionLimit: return "RejectionLimit";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::GammaPoleError: return "GammaPoleError";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NonHolomorphic: return "NonHolomorphic";
  }
  return "Unknown";
}

}  // namespace sjk
