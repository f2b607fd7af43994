#include "wsd/world.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "wsd/errors.hpp"
#include "wsd/rng.hpp"

namespace wsd {

std::optional<std::size_t> TabularProcess::locate(std::int64_t tuple) const {
  auto it = std::lower_bound(support.begin(), support.end(), tuple);
  if (it == support.end() || *it != tuple) return std::nullopt;
  return static_cast<std::size_t>(it - support.begin());
}

DiscreteWorld DiscreteWorld::build(WorldSpec spec) {
  if (spec.n < 1 || spec.n > 16) throw Error(Errc::ArityMismatch, "n must be in [1, 16]");
  if (static_cast<int>(spec.cards.size()) != spec.n) throw Error(Errc::ArityMismatch, "cards has wrong length");
  if (static_cast<int>(spec.ordered.size()) != spec.n) throw Error(Errc::ArityMismatch, "ordered has wrong length");

  DiscreteWorld world;
  world.process_.space = FactorSpace(spec.cards);
  const std::int64_t size = world.process_.space.size();
  if (static_cast<std::int64_t>(spec.prior.size()) != size) {
    throw Error(Errc::ArityMismatch, "prior has " + std::to_string(spec.prior.size()) + " entries, expected " +
                                         std::to_string(size));
  }
  if (static_cast<std::int64_t>(spec.gen.size()) != size) {
    throw Error(Errc::ArityMismatch, "gen has " + std::to_string(spec.gen.size()) + " entries, expected " +
                                         std::to_string(size));
  }

  double total = 0.0;
  for (double p : spec.prior) {
    if (!std::isfinite(p) || p < 0.0) throw Error(Errc::NonNormalizedPrior, "prior entries must be finite and >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(Errc::NonNormalizedPrior, "prior sums to " + std::to_string(total));
  }

  world.prior_ = Eigen::Map<const Eigen::VectorXd>(spec.prior.data(), size);
  auto& process = world.process_;
  process.ordered = spec.ordered;
  for (std::int64_t t = 0; t < size; ++t) {
    if (spec.prior[t] <= 0.0) continue;
    const std::int64_t x = spec.gen[t];
    if (x < 0) throw Error(Errc::InvalidArgument, "generator undefined on support tuple " + std::to_string(t));
    if (!world.encoder_.emplace(x, t).second) {
      throw Error(Errc::NonInjectiveGenerator, "observation " + std::to_string(x) + " generated twice");
    }
    process.support.push_back(t);
    process.mass.push_back(spec.prior[t]);
    process.observation.push_back(x);
  }
  world.spec_ = std::move(spec);
  return world;
}

std::optional<std::int64_t> DiscreteWorld::encode(std::int64_t observation) const {
  auto it = encoder_.find(observation);
  if (it == encoder_.end()) return std::nullopt;
  return it->second;
}

DiscreteWorld random_world(std::uint64_t seed, int n, const std::vector<int>& cards, double correlation,
                           std::int64_t cap) {
  if (static_cast<int>(cards.size()) != n) throw Error(Errc::ArityMismatch, "cards has wrong length");
  if (!(correlation >= 0.0 && correlation <= 1.0)) throw Error(Errc::InvalidArgument, "correlation outside [0,1]");
  std::int64_t size = 1;
  for (int c : cards) {
    if (c < 2) throw Error(Errc::InvalidArgument, "cards must be >= 2");
    size *= c;
    if (size > cap) throw Error(Errc::SupportTooLarge, "product of cards exceeds cap " + std::to_string(cap));
  }

  Rng rng(derive_seed(seed, 0x776f726c64ULL));
  const FactorSpace space(cards);
  const int diagonal = *std::max_element(cards.begin(), cards.end());

  std::vector<double> diag_weight(diagonal);
  std::exponential_distribution<double> expo(1.0);
  for (double& w : diag_weight) w = expo(rng);
  const double diag_total = std::accumulate(diag_weight.begin(), diag_weight.end(), 0.0);

  std::vector<double> prior(size, correlation == 1.0 ? 0.0 : (1.0 - correlation) / static_cast<double>(size));
  if (correlation > 0.0) {
    Tuple t(n);
    for (int j = 0; j < diagonal; ++j) {
      for (int i = 0; i < n; ++i) t[i] = j * cards[i] / diagonal;
      prior[space.encode(t)] += correlation * diag_weight[j] / diag_total;
    }
  }

  std::vector<std::int64_t> ids(size);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::int64_t t = 0; t < size; ++t) {
    if (prior[t] <= 0.0) ids[t] = -1;
  }

  WorldSpec spec;
  spec.n = n;
  spec.cards = cards;
  spec.prior = std::move(prior);
  spec.gen = std::move(ids);
  spec.ordered.assign(n, true);
  return DiscreteWorld::build(std::move(spec));
}

Eigen::VectorXd conditional(const DiscreteWorld& world, IndexSet conditioned, std::span<const int> values) {
  const FactorSpace& space = world.space();
  if (!conditioned.subset_of(IndexSet::full(space.arity()))) throw Error(Errc::ArityMismatch, "index set");
  if (static_cast<int>(values.size()) != conditioned.size()) throw Error(Errc::ArityMismatch, "value count");

  const FactorSpace cond_space = space.subspace(conditioned);
  const std::int64_t key = conditioned.empty() ? 0 : cond_space.encode(values);
  const IndexSet rest = conditioned.complement(space.arity());
  const FactorSpace rest_space = space.subspace(rest);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(rest_space.size());
  double total = 0.0;
  const auto& process = world.process();
  for (std::size_t k = 0; k < process.size(); ++k) {
    const std::int64_t t = process.support[k];
    if (space.project(t, conditioned) != key) continue;
    out[space.project(t, rest)] += process.mass[k];
    total += process.mass[k];
  }
  if (total <= 0.0) throw Error(Errc::ZeroMassConditioning, "conditioning value has zero marginal mass");
  return out / total;
}

std::shared_ptr<const DiscreteWorld> tabulated_world(const std::vector<int>& cards, const std::vector<double>& prior) {
  WorldSpec spec;
  spec.n = static_cast<int>(cards.size());
  spec.cards = cards;
  spec.prior = prior;
  spec.ordered.assign(cards.size(), true);
  spec.gen.assign(prior.size(), -1);
  for (std::size_t t = 0; t < prior.size(); ++t) {
    if (prior[t] > 0.0) spec.gen[t] = static_cast<std::int64_t>(t);
  }
  return std::make_shared<const DiscreteWorld>(DiscreteWorld::build(std::move(spec)));
}

bool zigzag_connected(const FactorSpace& space, std::span<const std::int64_t> support, IndexSet first,
                      IndexSet second) {
  const int n = space.arity();
  const IndexSet outside_first = first.complement(n);
  const IndexSet outside_second = second.complement(n);
  const IndexSet fixed = (first | second).complement(n);

  // A step may move freely inside a bucket of tuples agreeing outside I,
  // or inside a bucket agreeing outside J.
  std::unordered_map<std::int64_t, std::vector<std::size_t>> by_first, by_second;
  for (std::size_t k = 0; k < support.size(); ++k) {
    by_first[space.project(support[k], outside_first)].push_back(k);
    by_second[space.project(support[k], outside_second)].push_back(k);
  }

  std::vector<int> component(support.size(), -1);
  std::unordered_set<std::int64_t> seen_first, seen_second;
  int next_component = 0;
  for (std::size_t start = 0; start < support.size(); ++start) {
    if (component[start] >= 0) continue;
    std::deque<std::size_t> queue{start};
    component[start] = next_component;
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const std::int64_t key_first = space.project(support[k], outside_first);
      const std::int64_t key_second = space.project(support[k], outside_second);
      auto expand = [&](const std::vector<std::size_t>& bucket) {
        for (std::size_t m : bucket) {
          if (component[m] < 0) {
            component[m] = next_component;
            queue.push_back(m);
          }
        }
      };
      if (seen_first.insert(key_first).second) expand(by_first[key_first]);
      if (seen_second.insert(key_second).second) expand(by_second[key_second]);
    }
    ++next_component;
  }

  std::unordered_map<std::int64_t, int> class_component;
  for (std::size_t k = 0; k < support.size(); ++k) {
    auto [it, inserted] = class_component.emplace(space.project(support[k], fixed), component[k]);
    if (!inserted && it->second != component[k]) return false;
  }
  return true;
}

bool zigzag_connected(const DiscreteWorld& world, IndexSet first, IndexSet second) {
  return zigzag_connected(world.space(), world.support(), first, second);
}

double factor_mutual_information(const DiscreteWorld& world, IndexSet a, IndexSet b) {
  const FactorSpace& space = world.space();
  std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
  std::map<std::int64_t, double> pa, pb;
  const auto& process = world.process();
  for (std::size_t k = 0; k < process.size(); ++k) {
    const auto ka = space.project(process.support[k], a);
    const auto kb = space.project(process.support[k], b);
    joint[{ka, kb}] += process.mass[k];
    pa[ka] += process.mass[k];
    pb[kb] += process.mass[k];
  }
  double mi = 0.0;
  for (const auto& [key, p] : joint) {
    if (p > 0.0) mi += p * std::log(p / (pa[key.first] * pb[key.second]));
  }
  return mi;
}

}  // namespace wsd
