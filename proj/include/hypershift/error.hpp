#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypershift {

enum class ErrorKind {
  HaltedConfig,
  MalformedInput,
  NotInImage,
  AmbiguousMatch,
  AssumptionViolated,
  OrbitLeavesDomain,
  NotFirstIntegral,
  InfeasibleTarget,
  GapTooSmall,
  UnsupportedAlphabet,
  Advice,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::HaltedConfig: return "HaltedConfig";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::OrbitLeavesDomain: return "OrbitLeavesDomain";
    case ErrorKind::NotFirstIntegral: return "NotFirstIntegral";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::GapTooSmall: return "GapTooSmall";
    case ErrorKind::UnsupportedAlphabet: return "UnsupportedAlphabet";
    case ErrorKind::Advice: return "Advice";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure surfaced by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hypershift
