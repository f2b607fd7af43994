#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wsd/calculus.hpp"
#include "wsd/metrics.hpp"
#include "wsd/model.hpp"

namespace wsd {

/// Defining expectation of C/R evaluated by direct pairwise enumeration of
/// the driver support. Shares no code with the metrics module.
bool check_fact_brute(const CandidateModel& model, const Fact& fact, Direction direction = Direction::GeneratorBased,
                      double tol = kMassTolerance);

/// Every C(I)/R(I) atom over the target's arity that holds exactly.
std::vector<Fact> true_atoms(const EvaluationTarget& target);

/// Guard admitting union/intersection steps only on zig-zag connected
/// supports: (I, J) for restrictiveness unions, complements for
/// consistency intersections.
RuleGuard zigzag_guard(const FactorSpace& space, std::vector<std::int64_t> support);

struct Violation {
  std::string context;
  Direction direction;
  Fact fact;
  std::vector<std::string> trace;
};

/// Closes `axioms` (guarded or not) and reports derived atoms that are false
/// on the model.
std::vector<Violation> closure_violations(const CandidateModel& model, Direction direction,
                                          std::span<const Fact> axioms, bool guarded, const std::string& context);

struct SweepReport {
  std::size_t trials = 0;
  std::size_t models = 0;
  std::size_t derived = 0;  // derived atoms checked
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

/// Random worlds (sparse supports with random bijections, or full supports
/// with triangular maps), both directions, axioms = all true atoms and a
/// random subset of them.
SweepReport soundness_sweep(std::uint64_t seed, std::size_t trials, int max_factors, int max_card,
                            bool guarded = true);
/// Every bijection of `world`, axioms = all true atoms.
SweepReport exhaustive_sweep(const std::shared_ptr<const DiscreteWorld>& world, bool guarded = true);

struct CheckResult {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  void append(const VerificationReport& other);
};

inline constexpr std::size_t kRotationSamples = 50000;

/// (a) consistent-not-restrictive, (b) restrictive-not-consistent,
/// (c) rotation candidate, (d) zig-zag violation.
VerificationReport run_counterexample_suite(std::uint64_t seed, std::size_t rotation_samples = kRotationSamples);

struct AssumptionReport {
  bool normalized = false;
  bool injective = false;
  bool inverse_exact = false;
  std::vector<std::pair<IndexSet, IndexSet>> zigzag_failures;
  std::vector<std::string> messages;
  bool structural() const { return normalized && injective && inverse_exact; }
};

/// Works on a raw spec so that malformed worlds are reported rather than
/// rejected. Zig-zag is checked for every ordered pair of distinct nonempty
/// sets of size at most two.
AssumptionReport check_assumptions(const WorldSpec& spec);

/// Worlds with support <= max_support: every shape with cards >= 2, every
/// nonempty support subset, a uniform and a graded prior.
std::vector<std::shared_ptr<const DiscreteWorld>> small_worlds(int max_support);

/// Labeling and match on every subset, share and change on every factor,
/// rank on every ordered factor.
std::vector<SupervisionSpec> all_specs(const DiscreteWorld& world);

/// Matched candidates satisfy C(canonical set) for every small world and spec.
VerificationReport theorem_universality(int max_support);
/// Complete share pairing gives MIG 1 everywhere on independent product
/// worlds; matching on x alone admits a member with MIG 0 on some factor.
VerificationReport full_disentanglement_checks(int max_support);
/// Calculus form for n <= max_factors and a [2,2,2] world whose third
/// factor is an unsupervised nuisance.
VerificationReport nuisance_checks(int max_factors);

enum class ReportFormat { Text, Json, Csv };
std::string format_report(const VerificationReport& report, ReportFormat format);

}  // namespace wsd
