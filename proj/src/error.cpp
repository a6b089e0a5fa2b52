#include "qsense/error.hpp"

namespace qsense {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotTraceOne: return "NotTraceOne";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::CPTPViolation: return "CPTPViolation";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::StepTooSmall: return "StepTooSmall";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::NotTraceless: return "NotTraceless";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace qsense
