#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "wsd/factor_space.hpp"
#include "wsd/index_set.hpp"

namespace wsd {

inline constexpr std::int64_t kDefaultSupportCap = 4096;
inline constexpr double kMassTolerance = 1e-12;

/// A prior over a finite factor space restricted to its support, together
/// with the deterministic observation each support tuple generates. Both
/// oracle worlds and the latent side of candidate models expose one.
struct TabularProcess {
  FactorSpace space;
  std::vector<std::int64_t> support;      // tuple indices, ascending
  std::vector<double> mass;               // aligned with support
  std::vector<std::int64_t> observation;  // aligned with support
  std::vector<bool> ordered;              // per factor

  std::size_t size() const { return support.size(); }
  /// Position of `tuple` in `support`, if it carries mass.
  std::optional<std::size_t> locate(std::int64_t tuple) const;
};

/// Raw world-spec document. Dense arrays are row-major in factor order.
struct WorldSpec {
  int version = 1;
  int n = 0;
  std::vector<int> cards;
  std::vector<double> prior;
  std::vector<std::int64_t> gen;  // -1 for zero-mass tuples
  std::vector<bool> ordered;
};

/// Validated tabular oracle (p*, g*, e*). Immutable after construction.
class DiscreteWorld {
 public:
  static DiscreteWorld build(WorldSpec spec);

  const WorldSpec& spec() const { return spec_; }
  const FactorSpace& space() const { return process_.space; }
  int arity() const { return space().arity(); }
  const TabularProcess& process() const { return process_; }
  const Eigen::VectorXd& prior() const { return prior_; }
  std::span<const std::int64_t> support() const { return process_.support; }
  bool ordered(int factor) const { return process_.ordered[factor]; }

  double mass(std::int64_t tuple) const { return prior_[tuple]; }
  /// g*; only meaningful on the support.
  std::int64_t observe(std::int64_t tuple) const { return spec_.gen[tuple]; }
  /// e*; nullopt for observations outside the generator's range.
  std::optional<std::int64_t> encode(std::int64_t observation) const;

 private:
  WorldSpec spec_;
  TabularProcess process_;
  Eigen::VectorXd prior_;
  std::unordered_map<std::int64_t, std::int64_t> encoder_;
};

/// Deterministic random world. `correlation` mixes a uniform product prior
/// with mass on diagonal-like tuples; 0 gives an independent uniform prior.
DiscreteWorld random_world(std::uint64_t seed, int n, const std::vector<int>& cards, double correlation,
                           std::int64_t cap = kDefaultSupportCap);

/// World with the given dense prior; every positive-mass tuple observes as
/// its own index and all factors are ordered.
std::shared_ptr<const DiscreteWorld> tabulated_world(const std::vector<int>& cards, const std::vector<double>& prior);

/// p(s_{\I} | s_I = values); `values` lists the I-coordinates in index order.
/// The result is indexed over `space().subspace(complement of I)`.
Eigen::VectorXd conditional(const DiscreteWorld& world, IndexSet conditioned, std::span<const int> values);

/// Discrete zig-zag connectedness of a support for the pair (I, J).
bool zigzag_connected(const FactorSpace& space, std::span<const std::int64_t> support, IndexSet first,
                      IndexSet second);
bool zigzag_connected(const DiscreteWorld& world, IndexSet first, IndexSet second);

/// Mutual information (nats) between the factor groups `a` and `b`.
double factor_mutual_information(const DiscreteWorld& world, IndexSet a, IndexSet b);

}  // namespace wsd
