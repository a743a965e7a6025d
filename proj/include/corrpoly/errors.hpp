#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace corrpoly {

enum class Errc {
  DuplicateEvent,
  UnknownEventInMonomial,
  DuplicateMonomial,
  ScenarioTooLarge,
  DimensionMismatch,
  EmptyInput,
  ZeroInequality,
  ResourceExhausted,
  MissingCompanionMonomial,
  BasisNotClosed,
  UnsupportedMonomial,
  MissingProbability,
  Parse,
  IO,
  Overflow,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace corrpoly
