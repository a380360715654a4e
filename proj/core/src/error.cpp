#include "isoppp/error.hpp"

namespace isoppp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidScenarioParams: return "InvalidScenarioParams";
    case ErrorKind::InvalidLevel: return "InvalidLevel";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::UnsupportedAlpha: return "UnsupportedAlpha";
    case ErrorKind::UnsupportedFading: return "UnsupportedFading";
    case ErrorKind::RequiresZeroC: return "RequiresZeroC";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::OutsideRegion: return "OutsideRegion";
    case ErrorKind::NoFiniteTruncation: return "NoFiniteTruncation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace isoppp
