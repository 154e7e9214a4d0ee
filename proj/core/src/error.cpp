#include "qdet/error.hpp"

namespace qdet {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidDimensions: return "InvalidDimensions";
    case ErrorCode::NotIndependent: return "NotIndependent";
    case ErrorCode::NotSpanning: return "NotSpanning";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UndefinedEntry: return "UndefinedEntry";
    case ErrorCode::NotFeasible: return "NotFeasible";
    case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::SupportTooSmall: return "SupportTooSmall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace qdet
