#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

enum class ErrorCode {
  Ok = 0,
  InvalidArgument,
  InvalidInterval,
  NonConvergent,
  SizeExceeded,
  NegativeEigenvalue,
  DomainError,
  NotUnit,
  CoverageFailure,
  LevelOverflow,
  TruncationFailure,
  DegenerateWeight,
  MassOverflow,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::CoverageFailure: return "CoverageFailure";
    case ErrorCode::LevelOverflow: return "LevelOverflow";
    case ErrorCode::TruncationFailure: return "TruncationFailure";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::MassOverflow: return "MassOverflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace bergman
