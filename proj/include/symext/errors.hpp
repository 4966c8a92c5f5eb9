#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symext {

enum class ErrorCode {
  ZeroDenominator,
  ZeroFunction,
  UnsupportedPoleField,
  FrameMismatch,
  NotACochain,
  NotACoboundary,
  InternalLiftFailure,
  NotAFormCochain,
  DegenerateB,
  IsotropyViolation,
  WindowTooSmall,
  VerticalIntersection,
  InvalidLattice,
  HypothesisUnmet,
  ClassMismatch,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::UnsupportedPoleField: return "UnsupportedPoleField";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::NotACochain: return "NotACochain";
    case ErrorCode::NotACoboundary: return "NotACoboundary";
    case ErrorCode::InternalLiftFailure: return "InternalLiftFailure";
    case ErrorCode::NotAFormCochain: return "NotAFormCochain";
    case ErrorCode::DegenerateB: return "DegenerateB";
    case ErrorCode::IsotropyViolation: return "IsotropyViolation";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::VerticalIntersection: return "VerticalIntersection";
    case ErrorCode::InvalidLattice: return "InvalidLattice";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; the
/// code is what callers (and the CLI exit-code table) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace symext
