#pragma once

#include <stdexcept>
#include <string>

namespace phaseonly {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  RankDeficientMatrix,
  RankDeficientLifting,
  RankDeficientBlock,
  ZeroSignal,
  NonRealSignal,
  NotCanonical,
  AllMeasurementsZero,
  OffsetInRange,
  NonUnique,
  Infeasible,
  DegeneratePhases,
  AnchorNotInSupport,
  NotRecoverable,
  TooFewRows,
  FirstEntryZero,
  InvalidObservation,
  IoError,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace phaseonly
