#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "wsd/fact.hpp"
#include "wsd/model.hpp"
#include "wsd/supervision.hpp"

namespace wsd {

inline constexpr std::size_t kMaxEnumeratedSupport = 8;

/// All support bijections whose augmented tables equal the oracle's for
/// every spec, in lexicographic order of the permutation array. An empty
/// spec list matches every bijection. Throws SupportTooLarge above 8.
std::vector<CandidateModel> enumerate_matched(const std::shared_ptr<const DiscreteWorld>& world,
                                              std::span<const SupervisionSpec> specs, double tol = kMassTolerance);
std::vector<CandidateModel> enumerate_matched(const std::shared_ptr<const DiscreteWorld>& world,
                                              const SupervisionSpec& spec, double tol = kMassTolerance);

struct GuaranteeReport {
  SupervisionSpec spec;
  Fact fact;                        // C(canonical set)
  std::size_t matched = 0;
  std::size_t generator_holds = 0;  // matched candidates with the fact, generator-based
  std::size_t encoder_holds = 0;    // same, encoder-based
  bool passed() const { return generator_holds == matched && encoder_holds == matched; }
};

GuaranteeReport verify_guarantee(const std::shared_ptr<const DiscreteWorld>& world, const SupervisionSpec& spec);

/// First matched candidate (lexicographic) on which `target` fails,
/// generator-based.
std::optional<CandidateModel> find_violating_model(const std::shared_ptr<const DiscreteWorld>& world,
                                                   std::span<const SupervisionSpec> specs, const Fact& target);
std::size_t count_violating(const std::vector<CandidateModel>& matched, const Fact& target);

/// e* o g o e o g* is the identity on the oracle support.
bool check_informativeness(const CandidateModel& candidate);

/// phi'(z) = phi(rho(z)) where rho relabels coordinate i by `maps[i]`.
/// `maps[i]` must be a permutation of factor i's values and rho must map
/// the support onto itself.
CandidateModel relabel(const CandidateModel& candidate, const std::vector<std::vector<int>>& maps);

}  // namespace wsd
