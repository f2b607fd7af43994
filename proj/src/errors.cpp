#include "wsd/errors.hpp"

namespace wsd {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::NonNormalizedPrior: return "NonNormalizedPrior";
    case Errc::NonInjectiveGenerator: return "NonInjectiveGenerator";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::SupportTooLarge: return "SupportTooLarge";
    case Errc::ZeroMassConditioning: return "ZeroMassConditioning";
    case Errc::UnorderedFactorForRank: return "UnorderedFactorForRank";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::ZeroEntropyFactor: return "ZeroEntropyFactor";
    case Errc::ArityTooLarge: return "ArityTooLarge";
    case Errc::NuisanceInAxiomIndexSet: return "NuisanceInAxiomIndexSet";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace wsd
