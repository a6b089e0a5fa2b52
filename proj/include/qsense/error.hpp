#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsense {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  NumericalFailure,
  DimensionOverflow,
  DimensionMismatch,
  NotNormalized,
  NotTraceOne,
  WeightMismatch,
  DegenerateSpectrum,
  NotIsometry,
  CPTPViolation,
  ParameterOutOfRange,
  StepTooSmall,
  StepOutOfRange,
  NotTraceless,
  ConfigError,
  IoError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsense
