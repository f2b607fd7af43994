#include "wsd/calculus.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "wsd/errors.hpp"

namespace wsd {

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::Axiom: return "axiom";
    case Rule::Convention: return "convention";
    case Rule::Complement: return "complement";
    case Rule::ConsistencyUnion: return "consistency-union";
    case Rule::RestrictivenessUnion: return "restrictiveness-union";
    case Rule::ConsistencyIntersection: return "consistency-intersection";
    case Rule::RestrictivenessIntersection: return "restrictiveness-intersection";
    case Rule::FullDisentanglementC: return "full-disentanglement";
    case Rule::FullDisentanglementR: return "full-disentanglement-restrictive";
    case Rule::NuisanceFullDisentanglement: return "nuisance-full-disentanglement";
  }
  return "?";
}

namespace {

void check_universe(const Universe& universe) {
  if (universe.factors < 0) throw Error(Errc::InvalidArgument, "negative factor count");
  if (universe.factors > kMaxClosureFactors)
    throw Error(Errc::ArityTooLarge, "closure supports at most 16 factors, got " + std::to_string(universe.factors));
}

void check_fact(const Fact& fact, const Universe& universe) {
  if (!fact.set.subset_of(universe.full()))
    throw Error(Errc::ArityMismatch, "fact " + fact.set.to_string() + " outside universe");
}

}  // namespace

FactSet::FactSet(Universe universe) : universe_(universe) {
  check_universe(universe_);
  const std::size_t per_kind = std::size_t{1} << universe_.size();
  present_.assign(2 * per_kind, 0);
  derivations_.resize(2 * per_kind);
}

std::size_t FactSet::slot(const Fact& fact) const {
  const std::size_t per_kind = std::size_t{1} << universe_.size();
  return (fact.kind == FactKind::R ? per_kind : 0) + fact.set.mask();
}

bool FactSet::contains(const Fact& fact) const {
  check_fact(fact, universe_);
  if (fact.kind == FactKind::D)
    return contains(Fact{FactKind::C, fact.set}) && contains(Fact{FactKind::R, fact.set});
  return present_[slot(fact)] != 0;
}

bool FactSet::contains(std::span<const Fact> facts) const {
  return std::all_of(facts.begin(), facts.end(), [&](const Fact& f) { return contains(f); });
}

std::vector<Fact> FactSet::facts() const {
  std::vector<Fact> out = order_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Fact> FactSet::disentangled() const {
  std::vector<Fact> out;
  const std::uint32_t count = std::uint32_t{1} << universe_.size();
  for (std::uint32_t m = 0; m < count; ++m) {
    if (contains(Fact{FactKind::D, IndexSet(m)})) out.push_back(Fact{FactKind::D, IndexSet(m)});
  }
  return out;
}

const Derivation* FactSet::derivation(const Fact& fact) const {
  if (fact.kind == FactKind::D) return nullptr;
  if (!contains(fact)) return nullptr;
  return &derivations_[slot(fact)];
}

bool FactSet::insert(const Fact& fact, Derivation derivation) {
  check_fact(fact, universe_);
  if (fact.kind == FactKind::D) throw Error(Errc::InvalidArgument, "insert expects a C or R atom");
  const std::size_t s = slot(fact);
  if (present_[s]) return false;
  present_[s] = 1;
  derivations_[s] = std::move(derivation);
  order_.push_back(fact);
  return true;
}

std::vector<std::string> FactSet::trace(const Fact& fact) const {
  std::vector<std::string> lines;
  std::set<Fact> emitted;
  std::function<void(const Fact&)> visit = [&](const Fact& f) {
    if (f.kind == FactKind::D) {
      visit(Fact{FactKind::C, f.set});
      visit(Fact{FactKind::R, f.set});
      return;
    }
    if (emitted.count(f) || !contains(f)) return;
    emitted.insert(f);
    const Derivation& d = *derivation(f);
    for (const auto& p : d.premises) visit(p);
    std::string line = to_string(f, universe_) + " ⇐ " + to_string(d.rule);
    if (!d.premises.empty()) line += "(" + to_string(std::span<const Fact>(d.premises), universe_) + ")";
    lines.push_back(std::move(line));
  };
  visit(fact);
  return lines;
}

FactSet closure(std::span<const Fact> axioms, const Universe& universe, const RuleGuard& guard) {
  FactSet result(universe);
  const int size = universe.size();
  const IndexSet full = universe.full();
  auto allowed = [&](Rule rule, IndexSet a, IndexSet b) { return !guard || guard(rule, a, b); };

  std::deque<Fact> work;
  std::vector<IndexSet> known_c, known_r;
  auto add = [&](Fact f, Rule rule, std::vector<Fact> premises) {
    if (result.insert(f, Derivation{rule, std::move(premises)})) work.push_back(f);
  };

  for (IndexSet s : {IndexSet(), full}) {
    add(Fact{FactKind::C, s}, Rule::Convention, {});
    add(Fact{FactKind::R, s}, Rule::Convention, {});
  }
  for (const auto& a : axioms) {
    check_fact(a, universe);
    if (a.kind != FactKind::R) add(Fact{FactKind::C, a.set}, Rule::Axiom, {});
    if (a.kind != FactKind::C) add(Fact{FactKind::R, a.set}, Rule::Axiom, {});
  }

  auto all_singletons = [&](FactKind kind, int upto) {
    for (int i = 0; i < upto; ++i) {
      if (!result.contains(Fact{kind, IndexSet::singleton(i)})) return false;
    }
    return true;
  };
  auto singleton_facts = [&](FactKind kind, int upto) {
    std::vector<Fact> out;
    for (int i = 0; i < upto; ++i) out.push_back(Fact{kind, IndexSet::singleton(i)});
    return out;
  };

  while (!work.empty()) {
    const Fact f = work.front();
    work.pop_front();
    const IndexSet I = f.set;
    if (f.kind == FactKind::C) {
      add(Fact{FactKind::R, I.complement(size)}, Rule::Complement, {f});
      known_c.push_back(I);
      const std::size_t count = known_c.size();
      for (std::size_t k = 0; k < count; ++k) {
        const IndexSet J = known_c[k];
        const Fact g{FactKind::C, J};
        add(Fact{FactKind::C, I | J}, Rule::ConsistencyUnion, {g, f});
        if (allowed(Rule::ConsistencyIntersection, J, I))
          add(Fact{FactKind::C, I & J}, Rule::ConsistencyIntersection, {g, f});
      }
      if (I.size() == 1 && size > 0 && all_singletons(FactKind::C, size)) {
        for (int i = 0; i < size; ++i)
          add(Fact{FactKind::R, IndexSet::singleton(i)}, Rule::FullDisentanglementC, singleton_facts(FactKind::C, size));
      }
      if (universe.nuisance && I.size() == 1 && universe.factors > 0 && all_singletons(FactKind::C, universe.factors)) {
        for (int i = 0; i < universe.factors; ++i)
          add(Fact{FactKind::R, IndexSet::singleton(i) | universe.eta()}, Rule::NuisanceFullDisentanglement,
              singleton_facts(FactKind::C, universe.factors));
      }
    } else {
      add(Fact{FactKind::C, I.complement(size)}, Rule::Complement, {f});
      known_r.push_back(I);
      const std::size_t count = known_r.size();
      for (std::size_t k = 0; k < count; ++k) {
        const IndexSet J = known_r[k];
        const Fact g{FactKind::R, J};
        if (allowed(Rule::RestrictivenessUnion, J, I))
          add(Fact{FactKind::R, I | J}, Rule::RestrictivenessUnion, {g, f});
        add(Fact{FactKind::R, I & J}, Rule::RestrictivenessIntersection, {g, f});
      }
      if (I.size() == 1 && size > 0 && all_singletons(FactKind::R, size)) {
        for (int i = 0; i < size; ++i) {
          // C(i) comes from R(complement of i), built by a chain of unions.
          bool ok = true;
          IndexSet acc;
          for (int j = 0; j < size && ok; ++j) {
            if (j == i) continue;
            if (!acc.empty()) ok = allowed(Rule::FullDisentanglementR, acc, IndexSet::singleton(j));
            acc = acc | IndexSet::singleton(j);
          }
          if (ok)
            add(Fact{FactKind::C, IndexSet::singleton(i)}, Rule::FullDisentanglementR, singleton_facts(FactKind::R, size));
        }
      }
    }
  }
  return result;
}

Entailment entails(std::span<const Fact> axioms, const Universe& universe, std::span<const Fact> query,
                   const RuleGuard& guard) {
  const FactSet closed = closure(axioms, universe, guard);
  Entailment out;
  out.holds = closed.contains(query);
  std::set<std::string> seen;
  for (const auto& q : query) {
    for (auto& line : closed.trace(q)) {
      if (seen.insert(line).second) out.trace.push_back(std::move(line));
    }
  }
  return out;
}

FactSet nuisance_closure(std::span<const WrittenFact> axioms, int factors) {
  const Universe universe{factors, true};
  check_universe(universe);
  for (const auto& a : axioms) {
    if (a.set.contains(universe.nuisance_index()))
      throw Error(Errc::NuisanceInAxiomIndexSet, "axiom " + a.set.to_string(universe.nuisance_index()) +
                                                    " names the nuisance variable");
  }
  const std::vector<Fact> expanded = expand(axioms, universe);
  return closure(expanded, universe);
}

std::vector<std::vector<SupervisionSpec>> plan_supervision(int factors, std::span<const Fact> goal,
                                                           std::span<const SupervisionSpec> candidates, int budget) {
  const Universe universe{factors, false};
  check_universe(universe);
  std::vector<Fact> guarantees;
  for (const auto& c : candidates) guarantees.push_back(c.guaranteed_fact(factors));

  std::vector<std::vector<SupervisionSpec>> plans;
  const int n = static_cast<int>(candidates.size());
  const int limit = std::min(budget, n);
  for (int k = 0; k <= limit && plans.empty(); ++k) {
    // Lexicographic k-combinations of candidate positions.
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::vector<Fact> axioms;
      for (int i : pick) axioms.push_back(guarantees[i]);
      if (closure(axioms, universe).contains(goal)) {
        std::vector<SupervisionSpec> plan;
        for (int i : pick) plan.push_back(candidates[i]);
        plans.push_back(std::move(plan));
      }
      int pos = k - 1;
      while (pos >= 0 && pick[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  return plans;
}

}  // namespace wsd
