#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdet {

enum class ErrorCode {
  NotHermitian,
  NotFinite,
  NotPSD,
  SingularMatrix,
  InvalidState,
  InvalidDimensions,
  NotIndependent,
  NotSpanning,
  IllConditioned,
  ZeroVector,
  SizeMismatch,
  DimensionError,
  DimensionMismatch,
  UndefinedEntry,
  NotFeasible,
  FingerprintMismatch,
  SupportTooSmall,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qdet
