#include "wsd/learner.hpp"

#include <algorithm>
#include <numeric>

#include "wsd/errors.hpp"
#include "wsd/metrics.hpp"
#include "wsd/parallel.hpp"

namespace wsd {

std::vector<CandidateModel> enumerate_matched(const std::shared_ptr<const DiscreteWorld>& world,
                                              std::span<const SupervisionSpec> specs, double tol) {
  const std::size_t m = world->process().size();
  if (m > kMaxEnumeratedSupport)
    throw Error(Errc::SupportTooLarge, "bijection enumeration needs support <= 8, got " + std::to_string(m));
  std::vector<AugmentedTable> targets;
  for (const auto& spec : specs) {
    validate(spec, world->arity(), world->process().ordered);
    targets.push_back(augmented_table(*world, spec));
  }

  std::vector<std::vector<CandidateModel>> by_first(m);
  parallel_for(m, [&](std::size_t first) {
    std::vector<int> rest;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != first) rest.push_back(static_cast<int>(k));
    }
    std::vector<int> perm(m);
    perm[0] = static_cast<int>(first);
    do {
      std::copy(rest.begin(), rest.end(), perm.begin() + 1);
      CandidateModel candidate = CandidateModel::from_bijection(world, perm);
      bool matched = true;
      for (std::size_t s = 0; s < specs.size() && matched; ++s)
        matched = table_distance(augmented_table(candidate, specs[s]), targets[s]) <= tol;
      if (matched) by_first[first].push_back(std::move(candidate));
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  std::vector<CandidateModel> out;
  for (auto& bucket : by_first) {
    for (auto& c : bucket) out.push_back(std::move(c));
  }
  return out;
}

std::vector<CandidateModel> enumerate_matched(const std::shared_ptr<const DiscreteWorld>& world,
                                              const SupervisionSpec& spec, double tol) {
  return enumerate_matched(world, std::span<const SupervisionSpec>(&spec, 1), tol);
}

GuaranteeReport verify_guarantee(const std::shared_ptr<const DiscreteWorld>& world, const SupervisionSpec& spec) {
  GuaranteeReport report{spec, spec.guaranteed_fact(world->arity())};
  for (const auto& candidate : enumerate_matched(world, spec)) {
    ++report.matched;
    if (holds(EvaluationTarget(candidate, Direction::GeneratorBased), report.fact)) ++report.generator_holds;
    if (holds(EvaluationTarget(candidate, Direction::EncoderBased), report.fact)) ++report.encoder_holds;
  }
  return report;
}

std::optional<CandidateModel> find_violating_model(const std::shared_ptr<const DiscreteWorld>& world,
                                                   std::span<const SupervisionSpec> specs, const Fact& target) {
  for (auto& candidate : enumerate_matched(world, specs)) {
    if (!holds(EvaluationTarget(candidate, Direction::GeneratorBased), target)) return std::move(candidate);
  }
  return std::nullopt;
}

std::size_t count_violating(const std::vector<CandidateModel>& matched, const Fact& target) {
  return static_cast<std::size_t>(std::count_if(matched.begin(), matched.end(), [&](const CandidateModel& c) {
    return !holds(EvaluationTarget(c, Direction::GeneratorBased), target);
  }));
}

bool check_informativeness(const CandidateModel& candidate) {
  const TabularProcess& oracle = candidate.oracle().process();
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    const auto z = candidate.encoder_reading(k);
    if (!z) return false;
    const auto position = candidate.latent().locate(*z);
    if (!position) return false;
    const auto s = candidate.generator_reading(*position);
    if (!s || *s != oracle.support[k]) return false;
  }
  return true;
}

CandidateModel relabel(const CandidateModel& candidate, const std::vector<std::vector<int>>& maps) {
  const FactorSpace& space = candidate.oracle().space();
  if (static_cast<int>(maps.size()) != space.arity()) throw Error(Errc::ArityMismatch, "one map per factor");
  for (int i = 0; i < space.arity(); ++i) {
    std::vector<int> sorted = maps[i];
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(space.cards()[i]);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw Error(Errc::InvalidArgument, "relabeling is not a permutation of factor values");
  }
  return CandidateModel::from_map(candidate.oracle_ptr(), [&](const Tuple& z) {
    Tuple moved(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) moved[i] = maps[i][z[i]];
    const auto position = candidate.latent().locate(space.encode(moved));
    if (!position) throw Error(Errc::InvalidArgument, "relabeling leaves the support");
    const auto reading = candidate.generator_reading(*position);
    if (!reading) throw Error(Errc::InvalidArgument, "candidate reading undefined");
    return space.decode(*reading);
  });
}

}  // namespace wsd
