#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mubqpd {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DimMismatch,
  UnsupportedDimension,
  IndexOutOfRange,
  InvalidQuantumNumbers,
  BallViolation,
  NonHermitianInput,
  EmptySubset,
  LpUnbounded,
  NegativeProbability,
  EmptyRecord,
  BadInput,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace mubqpd
