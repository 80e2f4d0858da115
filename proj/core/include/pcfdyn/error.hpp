#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcfdyn {

enum class ErrorKind {
  ZeroLinearTerm,
  LeadingRootUnavailable,
  OrderMismatch,
  ExtensionRequired,
  RootFindingFailure,
  Undecided,
  DegreeCapExceeded,
  ZeroResultant,
  OutOfDomain,
  Overflow,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every library failure carries a kind so the CLI can map it to an exit code
// and callers can branch on it (e.g. switch to complex coefficients on
// LeadingRootUnavailable).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pcfdyn
