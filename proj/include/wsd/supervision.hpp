#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wsd/continuous.hpp"
#include "wsd/fact.hpp"
#include "wsd/model.hpp"
#include "wsd/world.hpp"

namespace wsd {

enum class SupervisionKind { RestrictedLabeling, MatchPairing, SharePairing, ChangePairing, RankPairing };

/// A weak-supervision protocol over an index set. Share pairing on I is
/// match pairing on I; change pairing on I is match pairing on the
/// complement of I. Rank pairing needs a single ordered factor.
struct SupervisionSpec {
  SupervisionKind kind;
  IndexSet set;

  SupervisionSpec canonical(int arity) const;
  /// The consistency fact distribution matching guarantees: C(canonical set).
  Fact guaranteed_fact(int arity) const;

  friend bool operator==(const SupervisionSpec&, const SupervisionSpec&) = default;
};

/// `label:1,2`, `match:1`, `share:1`, `change:2`, `rank:1`, `none`
/// (= label on the empty set, i.e. matching on x alone).
SupervisionSpec parse_supervision(const std::string& text, int arity);
std::string to_string(const SupervisionSpec& spec);
const char* to_string(SupervisionKind kind);

/// Throws ArityMismatch or UnorderedFactorForRank.
void validate(const SupervisionSpec& spec, int arity, const std::vector<bool>& ordered);

/// Exact augmented distribution. Outcome layout by canonical kind:
/// labeling (x, label index, 0); match (x, x', 0); rank (x, x', y).
struct AugmentedTable {
  using Outcome = std::array<std::int64_t, 3>;

  SupervisionKind kind;
  IndexSet set;
  std::map<Outcome, double> mass;

  double total() const;
  /// Sum over labels/partners: the distribution of the first observation.
  std::map<std::int64_t, double> observation_marginal() const;
};

AugmentedTable augmented_table(const TabularProcess& process, const SupervisionSpec& spec);
AugmentedTable augmented_table(const DiscreteWorld& world, const SupervisionSpec& spec);
/// Table of the candidate's own process, labelled with latent values.
AugmentedTable augmented_table(const CandidateModel& model, const SupervisionSpec& spec);

/// Max absolute mass difference over all outcomes <= tol. Throws KindMismatch.
bool tables_match(const AugmentedTable& a, const AugmentedTable& b, double tol = kMassTolerance);
double table_distance(const AugmentedTable& a, const AugmentedTable& b);

template <typename Observation, typename Value>
struct SupervisionRecord {
  Observation x{};
  Observation x2{};
  std::vector<Value> labels;  // restricted labeling only
  int y = 0;                  // rank pairing only
};

using DiscreteRecord = SupervisionRecord<std::int64_t, int>;
using ContinuousRecord = SupervisionRecord<Vector3, double>;

/// Streams i.i.d. records of the augmented distribution. The k-th record
/// depends only on (seed, k).
class DiscreteSampler {
 public:
  DiscreteSampler(const TabularProcess& process, const SupervisionSpec& spec, std::uint64_t seed);
  DiscreteRecord next();

 private:
  std::size_t draw(Rng& rng) const;
  std::size_t draw_partner(std::size_t position, Rng& rng) const;

  const TabularProcess* process_;
  SupervisionSpec spec_;
  Rng rng_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> group_of_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::vector<double>> group_cumulative_;
};

std::vector<DiscreteRecord> sample(const DiscreteWorld& world, const SupervisionSpec& spec, std::uint64_t seed,
                                   std::size_t count);
std::vector<DiscreteRecord> sample(const CandidateModel& model, const SupervisionSpec& spec, std::uint64_t seed,
                                   std::size_t count);
std::vector<ContinuousRecord> sample(const ContinuousWorld& world, const SupervisionSpec& spec, std::uint64_t seed,
                                     std::size_t count);
std::vector<ContinuousRecord> sample(const ContinuousCandidate& model, const SupervisionSpec& spec,
                                     std::uint64_t seed, std::size_t count);

/// Dataset files: a JSON header line `{kind:"header", version, spec, seed,
/// count}` followed by one JSON record per line.
void write_dataset(std::ostream& out, const SupervisionSpec& spec, std::uint64_t seed,
                   const std::vector<DiscreteRecord>& records);

struct Dataset {
  SupervisionSpec spec;
  std::uint64_t seed = 0;
  std::vector<DiscreteRecord> records;
};
Dataset read_dataset(std::istream& in, int arity);

}  // namespace wsd
