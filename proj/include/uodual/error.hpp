#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uodual {

enum class Errc {
  InvalidArgument,
  IncompatibleSpaces,
  NotDyadic,
  GridTooCoarse,
  DomainExceeded,
  ModularDegenerate,
  ZeroDenominator,
  FunctionalNotBounded,
  SearchDiverged,
  EmptyDualGrid,
  UnknownName,
  NotConvergent,
  NotNormBounded,
  ExtractionStalled,
  ConfigInvalid,
  ExtendedArithmetic,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IncompatibleSpaces: return "IncompatibleSpaces";
    case Errc::NotDyadic: return "NotDyadic";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::DomainExceeded: return "DomainExceeded";
    case Errc::ModularDegenerate: return "ModularDegenerate";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::FunctionalNotBounded: return "FunctionalNotBounded";
    case Errc::SearchDiverged: return "SearchDiverged";
    case Errc::EmptyDualGrid: return "EmptyDualGrid";
    case Errc::UnknownName: return "UnknownName";
    case Errc::NotConvergent: return "NotConvergent";
    case Errc::NotNormBounded: return "NotNormBounded";
    case Errc::ExtractionStalled: return "ExtractionStalled";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::ExtendedArithmetic: return "ExtendedArithmetic";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code logic) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace uodual
