#include "wsd/model.hpp"

#include <algorithm>
#include <sstream>

#include "wsd/errors.hpp"

namespace wsd {

CandidateModel CandidateModel::from_bijection(std::shared_ptr<const DiscreteWorld> oracle,
                                              std::vector<int> permutation) {
  const TabularProcess& base = oracle->process();
  const std::size_t size = base.size();
  if (permutation.size() != size) throw Error(Errc::ArityMismatch, "permutation length differs from support size");
  std::vector<int> inverse(size, -1);
  for (std::size_t k = 0; k < size; ++k) {
    const int target = permutation[k];
    if (target < 0 || static_cast<std::size_t>(target) >= size || inverse[target] >= 0) {
      throw Error(Errc::InvalidArgument, "permutation is not a bijection of the support");
    }
    inverse[target] = static_cast<int>(k);
  }

  CandidateModel model;
  model.latent_.space = base.space;
  model.latent_.ordered = base.ordered;
  model.latent_.support = base.support;
  model.latent_.mass.resize(size);
  model.latent_.observation.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    model.latent_.mass[k] = base.mass[permutation[k]];
    model.latent_.observation[k] = base.observation[permutation[k]];
  }
  // e(x) = phi^-1(e*(x))
  for (std::size_t j = 0; j < size; ++j) model.encoder_.emplace(base.observation[j], base.support[inverse[j]]);
  model.oracle_ = std::move(oracle);
  model.permutation_ = std::move(permutation);
  return model;
}

CandidateModel CandidateModel::identity(std::shared_ptr<const DiscreteWorld> oracle) {
  std::vector<int> perm(oracle->support().size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  return from_bijection(std::move(oracle), std::move(perm));
}

CandidateModel CandidateModel::from_map(std::shared_ptr<const DiscreteWorld> oracle,
                                        const std::function<Tuple(const Tuple&)>& phi) {
  const TabularProcess& base = oracle->process();
  std::vector<int> perm(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    const auto image = base.space.encode(phi(base.space.decode(base.support[k])));
    const auto pos = base.locate(image);
    if (!pos) throw Error(Errc::InvalidArgument, "map leaves the support");
    perm[k] = static_cast<int>(*pos);
  }
  return from_bijection(std::move(oracle), std::move(perm));
}

CandidateModel CandidateModel::from_tables(std::shared_ptr<const DiscreteWorld> oracle, TabularProcess latent,
                                           std::unordered_map<std::int64_t, std::int64_t> encoder) {
  if (latent.space.arity() != oracle->arity()) throw Error(Errc::ArityMismatch, "latent arity differs from oracle");
  if (latent.mass.size() != latent.support.size() || latent.observation.size() != latent.support.size()) {
    throw Error(Errc::ArityMismatch, "latent tables are not aligned");
  }
  CandidateModel model;
  model.oracle_ = std::move(oracle);
  model.latent_ = std::move(latent);
  model.encoder_ = std::move(encoder);
  return model;
}

std::optional<std::int64_t> CandidateModel::encode(std::int64_t observation) const {
  auto it = encoder_.find(observation);
  if (it == encoder_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> CandidateModel::generator_reading(std::size_t latent_position) const {
  return oracle_->encode(latent_.observation[latent_position]);
}

std::optional<std::int64_t> CandidateModel::encoder_reading(std::size_t oracle_position) const {
  return encode(oracle_->process().observation[oracle_position]);
}

std::string CandidateModel::describe() const {
  std::ostringstream out;
  if (permutation_) {
    out << "bijection[";
    for (std::size_t k = 0; k < permutation_->size(); ++k) out << (k ? "," : "") << (*permutation_)[k];
    out << "]";
  } else {
    out << "tabular(" << latent_.size() << " latent tuples)";
  }
  return out.str();
}

namespace {

std::shared_ptr<const DiscreteWorld> uniform_world(const std::vector<int>& cards,
                                                   const std::function<bool(const Tuple&)>& in_support) {
  const FactorSpace space(cards);
  WorldSpec spec;
  spec.n = space.arity();
  spec.cards = cards;
  spec.ordered.assign(spec.n, true);
  spec.prior.assign(space.size(), 0.0);
  spec.gen.assign(space.size(), -1);
  std::int64_t count = 0;
  for (std::int64_t t = 0; t < space.size(); ++t) count += in_support(space.decode(t));
  for (std::int64_t t = 0; t < space.size(); ++t) {
    if (!in_support(space.decode(t))) continue;
    spec.prior[t] = 1.0 / static_cast<double>(count);
    spec.gen[t] = t;
  }
  return std::make_shared<const DiscreteWorld>(DiscreteWorld::build(std::move(spec)));
}

}  // namespace

Schematic schematic_world(SchematicKind kind) {
  switch (kind) {
    case SchematicKind::ConsistentNotRestrictive: {
      auto world = uniform_world({2, 2}, [](const Tuple&) { return true; });
      auto model = CandidateModel::from_map(world, [](const Tuple& z) { return Tuple{z[0], z[0] ^ z[1]}; });
      return {world, std::move(model)};
    }
    case SchematicKind::RestrictiveNotConsistent: {
      auto world = uniform_world({2, 2}, [](const Tuple&) { return true; });
      auto model = CandidateModel::from_map(world, [](const Tuple& z) { return Tuple{z[0] ^ z[1], z[1]}; });
      return {world, std::move(model)};
    }
    case SchematicKind::ZigzagViolation: {
      auto world = uniform_world({2, 2, 2}, [](const Tuple& s) { return s[0] == s[1]; });
      auto model =
          CandidateModel::from_map(world, [](const Tuple& z) { return Tuple{z[0], z[1], z[2] ^ z[0]}; });
      return {world, std::move(model)};
    }
  }
  throw Error(Errc::InvalidArgument, "unknown schematic kind");
}

std::optional<SchematicKind> parse_schematic_kind(const std::string& name) {
  if (name == "consistent-not-restrictive") return SchematicKind::ConsistentNotRestrictive;
  if (name == "restrictive-not-consistent") return SchematicKind::RestrictiveNotConsistent;
  if (name == "zigzag-violation") return SchematicKind::ZigzagViolation;
  return std::nullopt;
}

std::string to_string(SchematicKind kind) {
  switch (kind) {
    case SchematicKind::ConsistentNotRestrictive: return "consistent-not-restrictive";
    case SchematicKind::RestrictiveNotConsistent: return "restrictive-not-consistent";
    case SchematicKind::ZigzagViolation: return "zigzag-violation";
  }
  return "unknown";
}

}  // namespace wsd
