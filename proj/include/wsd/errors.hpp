#pragma once

#include <stdexcept>
#include <string>

namespace wsd {

enum class Errc {
  NonNormalizedPrior,
  NonInjectiveGenerator,
  ArityMismatch,
  SupportTooLarge,
  ZeroMassConditioning,
  UnorderedFactorForRank,
  KindMismatch,
  DegenerateDenominator,
  ZeroEntropyFactor,
  ArityTooLarge,
  NuisanceInAxiomIndexSet,
  ParseError,
  InvalidArgument,
};

const char* to_string(Errc code);

/// Library-wide exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wsd
