#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsd/world.hpp"

namespace wsd {

/// A latent model (p, g, e) evaluated against a discrete oracle.
///
/// The usual construction is a bijection phi on the oracle's support:
/// q(z) = p*(phi(z)), g = g* o phi, e = phi^-1 o e*. Position k of the
/// permutation array says phi(support[k]) = support[perm[k]].
class CandidateModel {
 public:
  static CandidateModel from_bijection(std::shared_ptr<const DiscreteWorld> oracle, std::vector<int> permutation);
  static CandidateModel identity(std::shared_ptr<const DiscreteWorld> oracle);
  /// Builds phi from a tuple map; `phi` must permute the support.
  static CandidateModel from_map(std::shared_ptr<const DiscreteWorld> oracle,
                                 const std::function<Tuple(const Tuple&)>& phi);
  /// Hand-built model with arbitrary tables; nothing beyond arity is checked.
  static CandidateModel from_tables(std::shared_ptr<const DiscreteWorld> oracle, TabularProcess latent,
                                    std::unordered_map<std::int64_t, std::int64_t> encoder);

  const DiscreteWorld& oracle() const { return *oracle_; }
  const std::shared_ptr<const DiscreteWorld>& oracle_ptr() const { return oracle_; }
  const TabularProcess& latent() const { return latent_; }
  const std::optional<std::vector<int>>& permutation() const { return permutation_; }

  /// e(x); nullopt outside the encoder's domain.
  std::optional<std::int64_t> encode(std::int64_t observation) const;
  /// e* o g at latent support position k: the factor tuple the oracle reads.
  std::optional<std::int64_t> generator_reading(std::size_t latent_position) const;
  /// e o g* at oracle support position k: the latent tuple the encoder reads.
  std::optional<std::int64_t> encoder_reading(std::size_t oracle_position) const;

  std::string describe() const;

 private:
  std::shared_ptr<const DiscreteWorld> oracle_;
  TabularProcess latent_;
  std::unordered_map<std::int64_t, std::int64_t> encoder_;
  std::optional<std::vector<int>> permutation_;
};

enum class SchematicKind { ConsistentNotRestrictive, RestrictiveNotConsistent, ZigzagViolation };

struct Schematic {
  std::shared_ptr<const DiscreteWorld> world;
  CandidateModel model;
};

/// Named counterexample worlds:
///  - ConsistentNotRestrictive: uniform binary (size, color), phi(z) = (z1, z1 xor z2).
///  - RestrictiveNotConsistent: phi(z) = (z1 xor z2, z2).
///  - ZigzagViolation: three binary factors with the first two supported on
///    the diagonal; phi flips the third factor between the diagonal regions.
Schematic schematic_world(SchematicKind kind);

std::optional<SchematicKind> parse_schematic_kind(const std::string& name);
std::string to_string(SchematicKind kind);

}  // namespace wsd
