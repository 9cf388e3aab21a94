#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace primend {

enum class ErrorCode {
  NotMonotone,
  DuplicateBreakpoint,
  OrientationReversing,
  FloatDataUnsupported,
  ToleranceUnreachable,
  DuplicatePoint,
  NotDisjoint,
  InvalidBijection,
  NotOrderPreserving,
  TooFewMembers,
  SelfIntersection,
  SlitCrossing,
  NotSimplyConnected,
  CellOutsideDomain,
  TooLarge,
  EmptyB,
  NotAnAutomorphism,
  SimpleClosedCurveBoundary,
  OrderViolation,
  UnknownFixture,
  UnsupportedVariant,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::DuplicateBreakpoint: return "DuplicateBreakpoint";
    case ErrorCode::OrientationReversing: return "OrientationReversing";
    case ErrorCode::FloatDataUnsupported: return "FloatDataUnsupported";
    case ErrorCode::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::InvalidBijection: return "InvalidBijection";
    case ErrorCode::NotOrderPreserving: return "NotOrderPreserving";
    case ErrorCode::TooFewMembers: return "TooFewMembers";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::SlitCrossing: return "SlitCrossing";
    case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorCode::CellOutsideDomain: return "CellOutsideDomain";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyB: return "EmptyB";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::SimpleClosedCurveBoundary: return "SimpleClosedCurveBoundary";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace primend
