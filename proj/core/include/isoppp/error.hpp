#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoppp {

enum class ErrorKind {
  InvalidScenarioParams,
  InvalidLevel,
  InvalidExponent,
  InvalidArgument,
  DomainError,
  NonConvergence,
  DivergentIntegral,
  UnsupportedAlpha,
  UnsupportedFading,
  RequiresZeroC,
  DegenerateDenominator,
  OutsideRegion,
  NoFiniteTruncation,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a machine-readable kind so that
// front ends can map it onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace isoppp
