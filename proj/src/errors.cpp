#include "corrpoly/errors.hpp"

namespace corrpoly {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateEvent: return "DuplicateEvent";
    case Errc::UnknownEventInMonomial: return "UnknownEventInMonomial";
    case Errc::DuplicateMonomial: return "DuplicateMonomial";
    case Errc::ScenarioTooLarge: return "ScenarioTooLarge";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ZeroInequality: return "ZeroInequality";
    case Errc::ResourceExhausted: return "ResourceExhausted";
    case Errc::MissingCompanionMonomial: return "MissingCompanionMonomial";
    case Errc::BasisNotClosed: return "BasisNotClosed";
    case Errc::UnsupportedMonomial: return "UnsupportedMonomial";
    case Errc::MissingProbability: return "MissingProbability";
    case Errc::Parse: return "Parse";
    case Errc::IO: return "IO";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace corrpoly
