#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wsd/fact.hpp"
#include "wsd/supervision.hpp"

namespace wsd {

inline constexpr int kMaxClosureFactors = 16;

enum class Rule {
  Axiom,
  Convention,
  Complement,
  ConsistencyUnion,
  RestrictivenessUnion,
  ConsistencyIntersection,
  RestrictivenessIntersection,
  FullDisentanglementC,
  FullDisentanglementR,
  NuisanceFullDisentanglement,
};

const char* to_string(Rule rule);

struct Derivation {
  Rule rule;
  std::vector<Fact> premises;
};

/// Decides whether a binary rule may fire on premise sets (first, second).
/// For FullDisentanglementR it is asked once per union step of the chain.
/// An empty guard allows everything.
using RuleGuard = std::function<bool(Rule, IndexSet, IndexSet)>;

/// A set of C and R atoms over a universe, each with the derivation that
/// first produced it. D(I) is a view: both C(I) and R(I) present.
class FactSet {
 public:
  explicit FactSet(Universe universe);

  const Universe& universe() const { return universe_; }
  bool contains(const Fact& fact) const;
  bool contains(std::span<const Fact> facts) const;
  /// All C and R atoms, sorted.
  std::vector<Fact> facts() const;
  /// All D(I) with both halves present, sorted by set.
  std::vector<Fact> disentangled() const;
  std::size_t size() const { return order_.size(); }
  /// Null for an absent atom. D facts have no derivation of their own.
  const Derivation* derivation(const Fact& fact) const;
  /// Derivation lines `fact <= rule(premises)` with premises first.
  std::vector<std::string> trace(const Fact& fact) const;

  /// Inserts an atom if absent; returns whether it was new.
  bool insert(const Fact& fact, Derivation derivation);

 private:
  std::size_t slot(const Fact& fact) const;

  Universe universe_;
  std::vector<char> present_;  // [C masks..., R masks...]
  std::vector<Derivation> derivations_;
  std::vector<Fact> order_;
};

/// Least fixpoint of the calculus rules over `axioms`. D axioms contribute
/// both halves. Throws ArityTooLarge above 16 factors (17 with eta).
FactSet closure(std::span<const Fact> axioms, const Universe& universe, const RuleGuard& guard = {});

struct Entailment {
  bool holds = false;
  std::vector<std::string> trace;
};

/// Whether every query fact is in the closure, with the derivations of the
/// atoms that are.
Entailment entails(std::span<const Fact> axioms, const Universe& universe, std::span<const Fact> query,
                   const RuleGuard& guard = {});

/// Closure over n factors plus eta. Throws NuisanceInAxiomIndexSet if any
/// axiom's written set names eta.
FactSet nuisance_closure(std::span<const WrittenFact> axioms, int factors);

/// Smallest subsets of `candidates` whose guaranteed facts entail `goal`;
/// all subsets of that size are returned, empty if none within `budget`.
std::vector<std::vector<SupervisionSpec>> plan_supervision(int factors, std::span<const Fact> goal,
                                                           std::span<const SupervisionSpec> candidates, int budget);

}  // namespace wsd
