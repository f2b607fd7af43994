#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "wsd/index_set.hpp"

namespace wsd {

enum class FactKind { C, R, D };

/// C(I), R(I) or D(I) over a universe of factor indices.
struct Fact {
  FactKind kind;
  IndexSet set;

  friend auto operator<=>(const Fact&, const Fact&) = default;
};

/// The index universe facts range over: `factors` ordinary indices plus an
/// optional nuisance index (eta) at position `factors`.
struct Universe {
  int factors = 0;
  bool nuisance = false;

  int size() const { return factors + (nuisance ? 1 : 0); }
  int nuisance_index() const { return nuisance ? factors : -1; }
  IndexSet full() const { return IndexSet::full(size()); }
  IndexSet eta() const { return nuisance ? IndexSet::singleton(factors) : IndexSet(); }
};

/// A fact as written in the text language, before eta forms are expanded.
/// `C{1,2}`, `R{3}`, `D{}`, `Ceta{1}`, `Reta{1}`, `Deta{1}`.
struct WrittenFact {
  FactKind kind;
  bool eta = false;
  IndexSet set;
};

/// Parses a `&`-separated conjunction; blank input yields an empty list.
std::vector<WrittenFact> parse_facts(const std::string& text, const Universe& universe);

/// C_eta(I) = C(I); R_eta(I) = R(I + eta); D_eta(I) = C(I) & R(I + eta).
std::vector<Fact> expand(const WrittenFact& fact, const Universe& universe);
std::vector<Fact> expand(std::span<const WrittenFact> facts, const Universe& universe);

/// Canonical printed form. R facts containing eta print as `Reta{...}`.
std::string to_string(const Fact& fact, const Universe& universe);
std::string to_string(std::span<const Fact> conjunction, const Universe& universe);

char kind_letter(FactKind kind);

}  // namespace wsd
