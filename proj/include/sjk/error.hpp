#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sjk {

enum class ErrorKind {
  NonSymmetric,
  NotInBall,
  NotInUpper,
  RejectionLimit,
  IndexOutOfRange,
  DimensionMismatch,
  InvalidInput,
  SingularDenominator,
  BranchAmbiguity,
  GammaPoleError,
  NotConverged,
  StepTooLarge,
  NonHolomorphic,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every failure the library reports; `kind()` is
/// the machine-readable tag surfaced by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace sjk
