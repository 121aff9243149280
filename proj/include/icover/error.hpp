#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace icover {

enum class ErrorKind {
  CycleDetected,
  ElementOutOfRange,
  NotDominated,
  NotRanked,
  NotALattice,
  NotDistributive,
  Infeasible,
  MaxChain,
  PreconditionViolated,
  SizeLimit,
  NotAntichain,
  SizeOrder,
  SurjectionInvalid,
  TooSmall,
  LevelSizeMismatch,
  NotLevels,
  ParamTooSmall,
  ParseError,
  InternalError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorKind::NotDominated: return "NotDominated";
    case ErrorKind::NotRanked: return "NotRanked";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::MaxChain: return "MaxChain";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NotAntichain: return "NotAntichain";
    case ErrorKind::SizeOrder: return "SizeOrder";
    case ErrorKind::SurjectionInvalid: return "SurjectionInvalid";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::LevelSizeMismatch: return "LevelSizeMismatch";
    case ErrorKind::NotLevels: return "NotLevels";
    case ErrorKind::ParamTooSmall: return "ParamTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace icover
