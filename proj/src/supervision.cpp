#include "wsd/supervision.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "wsd/errors.hpp"

namespace wsd {

using nlohmann::json;

SupervisionSpec SupervisionSpec::canonical(int arity) const {
  switch (kind) {
    case SupervisionKind::SharePairing: return {SupervisionKind::MatchPairing, set};
    case SupervisionKind::ChangePairing: return {SupervisionKind::MatchPairing, set.complement(arity)};
    default: return *this;
  }
}

Fact SupervisionSpec::guaranteed_fact(int arity) const { return Fact{FactKind::C, canonical(arity).set}; }

const char* to_string(SupervisionKind kind) {
  switch (kind) {
    case SupervisionKind::RestrictedLabeling: return "label";
    case SupervisionKind::MatchPairing: return "match";
    case SupervisionKind::SharePairing: return "share";
    case SupervisionKind::ChangePairing: return "change";
    case SupervisionKind::RankPairing: return "rank";
  }
  return "unknown";
}

std::string to_string(const SupervisionSpec& spec) {
  if (spec.kind == SupervisionKind::RestrictedLabeling && spec.set.empty()) return "none";
  std::string out = std::string(to_string(spec.kind)) + ":";
  bool first = true;
  for (int i : spec.set.indices()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(i + 1);
  }
  return out;
}

SupervisionSpec parse_supervision(const std::string& text, int arity) {
  if (text == "none") return {SupervisionKind::RestrictedLabeling, IndexSet()};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::ParseError, "supervision spec '" + text + "' lacks ':'");
  const std::string name = text.substr(0, colon);
  SupervisionSpec spec{};
  if (name == "label") spec.kind = SupervisionKind::RestrictedLabeling;
  else if (name == "match") spec.kind = SupervisionKind::MatchPairing;
  else if (name == "share") spec.kind = SupervisionKind::SharePairing;
  else if (name == "change") spec.kind = SupervisionKind::ChangePairing;
  else if (name == "rank") spec.kind = SupervisionKind::RankPairing;
  else throw Error(Errc::ParseError, "unknown supervision kind '" + name + "'");

  std::stringstream list(text.substr(colon + 1));
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.empty()) continue;
    int index = 0;
    try {
      std::size_t used = 0;
      index = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad factor index '" + item + "' in '" + text + "'");
    }
    if (index < 1 || index > arity) {
      throw Error(Errc::ArityMismatch, "factor " + std::to_string(index) + " outside 1.." + std::to_string(arity));
    }
    spec.set = spec.set | IndexSet::singleton(index - 1);
  }
  return spec;
}

void validate(const SupervisionSpec& spec, int arity, const std::vector<bool>& ordered) {
  if (!spec.set.subset_of(IndexSet::full(arity))) throw Error(Errc::ArityMismatch, "index set exceeds arity");
  if (spec.kind == SupervisionKind::RankPairing) {
    if (spec.set.size() != 1) throw Error(Errc::ArityMismatch, "rank pairing needs exactly one factor");
    const int i = spec.set.indices().front();
    if (!ordered[i]) {
      throw Error(Errc::UnorderedFactorForRank, "factor " + std::to_string(i + 1) + " is not ordered");
    }
  }
}

double AugmentedTable::total() const {
  double t = 0.0;
  for (const auto& [outcome, p] : mass) t += p;
  return t;
}

std::map<std::int64_t, double> AugmentedTable::observation_marginal() const {
  std::map<std::int64_t, double> out;
  for (const auto& [outcome, p] : mass) out[outcome[0]] += p;
  return out;
}

namespace {

// Groups support positions by their projection onto `set`.
std::vector<std::vector<std::size_t>> group_by(const TabularProcess& process, IndexSet set,
                                               std::vector<std::size_t>* group_of = nullptr) {
  std::unordered_map<std::int64_t, std::size_t> ids;
  std::vector<std::vector<std::size_t>> groups;
  if (group_of) group_of->assign(process.size(), 0);
  for (std::size_t k = 0; k < process.size(); ++k) {
    const auto key = process.space.project(process.support[k], set);
    auto [it, inserted] = ids.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(k);
    if (group_of) (*group_of)[k] = it->second;
  }
  return groups;
}

}  // namespace

AugmentedTable augmented_table(const TabularProcess& process, const SupervisionSpec& spec) {
  const int arity = process.space.arity();
  validate(spec, arity, process.ordered);
  if (static_cast<std::int64_t>(process.size()) > kDefaultSupportCap) {
    throw Error(Errc::SupportTooLarge, "exact tables need support <= " + std::to_string(kDefaultSupportCap));
  }
  const SupervisionSpec c = spec.canonical(arity);
  AugmentedTable table{c.kind, c.set, {}};
  const auto& space = process.space;

  switch (c.kind) {
    case SupervisionKind::RestrictedLabeling:
      for (std::size_t k = 0; k < process.size(); ++k) {
        table.mass[{process.observation[k], space.project(process.support[k], c.set), 0}] += process.mass[k];
      }
      break;
    case SupervisionKind::MatchPairing:
      for (const auto& group : group_by(process, c.set)) {
        double group_mass = 0.0;
        for (std::size_t a : group) group_mass += process.mass[a];
        for (std::size_t a : group) {
          for (std::size_t b : group) {
            table.mass[{process.observation[a], process.observation[b], 0}] +=
                process.mass[a] * process.mass[b] / group_mass;
          }
        }
      }
      break;
    case SupervisionKind::RankPairing: {
      const int i = c.set.indices().front();
      for (std::size_t a = 0; a < process.size(); ++a) {
        for (std::size_t b = 0; b < process.size(); ++b) {
          const int y = space.value(process.support[a], i) >= space.value(process.support[b], i);
          table.mass[{process.observation[a], process.observation[b], y}] += process.mass[a] * process.mass[b];
        }
      }
      break;
    }
    default: throw Error(Errc::InvalidArgument, "non-canonical supervision kind");
  }
  return table;
}

AugmentedTable augmented_table(const DiscreteWorld& world, const SupervisionSpec& spec) {
  return augmented_table(world.process(), spec);
}

AugmentedTable augmented_table(const CandidateModel& model, const SupervisionSpec& spec) {
  return augmented_table(model.latent(), spec);
}

double table_distance(const AugmentedTable& a, const AugmentedTable& b) {
  if (a.kind != b.kind || a.set != b.set) throw Error(Errc::KindMismatch, "tables differ in kind or index set");
  double worst = 0.0;
  auto ia = a.mass.begin();
  auto ib = b.mass.begin();
  while (ia != a.mass.end() || ib != b.mass.end()) {
    if (ib == b.mass.end() || (ia != a.mass.end() && ia->first < ib->first)) {
      worst = std::max(worst, std::abs(ia->second));
      ++ia;
    } else if (ia == a.mass.end() || ib->first < ia->first) {
      worst = std::max(worst, std::abs(ib->second));
      ++ib;
    } else {
      worst = std::max(worst, std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return worst;
}

bool tables_match(const AugmentedTable& a, const AugmentedTable& b, double tol) {
  return table_distance(a, b) <= tol;
}

DiscreteSampler::DiscreteSampler(const TabularProcess& process, const SupervisionSpec& spec, std::uint64_t seed)
    : process_(&process), spec_(spec.canonical(process.space.arity())), rng_(derive_seed(seed, 0x73616d70ULL)) {
  validate(spec, process.space.arity(), process.ordered);
  double acc = 0.0;
  for (double p : process.mass) cumulative_.push_back(acc += p);
  if (spec_.kind == SupervisionKind::MatchPairing) {
    groups_ = group_by(process, spec_.set, &group_of_);
    for (const auto& group : groups_) {
      std::vector<double> cum;
      double g = 0.0;
      for (std::size_t k : group) cum.push_back(g += process.mass[k]);
      group_cumulative_.push_back(std::move(cum));
    }
  }
}

std::size_t DiscreteSampler::draw(Rng& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
}

std::size_t DiscreteSampler::draw_partner(std::size_t position, Rng& rng) const {
  const std::size_t g = group_of_[position];
  const auto& cum = group_cumulative_[g];
  const double u = uniform01(rng) * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  return groups_[g][std::min<std::size_t>(it - cum.begin(), cum.size() - 1)];
}

DiscreteRecord DiscreteSampler::next() {
  const auto& p = *process_;
  DiscreteRecord record;
  const std::size_t a = draw(rng_);
  record.x = p.observation[a];
  switch (spec_.kind) {
    case SupervisionKind::RestrictedLabeling:
      for (int i : spec_.set.indices()) record.labels.push_back(p.space.value(p.support[a], i));
      break;
    case SupervisionKind::MatchPairing:
      record.x2 = p.observation[draw_partner(a, rng_)];
      break;
    case SupervisionKind::RankPairing: {
      const std::size_t b = draw(rng_);
      const int i = spec_.set.indices().front();
      record.x2 = p.observation[b];
      record.y = p.space.value(p.support[a], i) >= p.space.value(p.support[b], i);
      break;
    }
    default: break;
  }
  return record;
}

namespace {

std::vector<DiscreteRecord> sample_process(const TabularProcess& process, const SupervisionSpec& spec,
                                           std::uint64_t seed, std::size_t count) {
  std::vector<DiscreteRecord> out;
  if (count == 0) {
    validate(spec, process.space.arity(), process.ordered);
    return out;
  }
  DiscreteSampler sampler(process, spec, seed);
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sampler.next());
  return out;
}

template <typename Generate>
std::vector<ContinuousRecord> sample_continuous(const ContinuousWorld& prior, Generate generate,
                                                const SupervisionSpec& spec, std::uint64_t seed,
                                                std::size_t count) {
  const int arity = prior.arity();
  validate(spec, arity, std::vector<bool>(arity, true));
  const SupervisionSpec c = spec.canonical(arity);
  Rng rng(derive_seed(seed, 0x636f6e74ULL));
  std::vector<ContinuousRecord> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    ContinuousRecord record;
    const Vector3 s = prior.sample(rng);
    record.x = generate(s);
    switch (c.kind) {
      case SupervisionKind::RestrictedLabeling:
        for (int i : c.set.indices()) record.labels.push_back(s(i));
        break;
      case SupervisionKind::MatchPairing:
        record.x2 = generate(prior.resample(s, c.set.complement(arity), rng));
        break;
      case SupervisionKind::RankPairing: {
        const Vector3 s2 = prior.sample(rng);
        const int i = c.set.indices().front();
        record.x2 = generate(s2);
        record.y = s(i) >= s2(i);
        break;
      }
      default: break;
    }
    out.push_back(std::move(record));
  }
  return out;
}

}  // namespace

std::vector<DiscreteRecord> sample(const DiscreteWorld& world, const SupervisionSpec& spec, std::uint64_t seed,
                                   std::size_t count) {
  return sample_process(world.process(), spec, seed, count);
}

std::vector<DiscreteRecord> sample(const CandidateModel& model, const SupervisionSpec& spec, std::uint64_t seed,
                                   std::size_t count) {
  return sample_process(model.latent(), spec, seed, count);
}

std::vector<ContinuousRecord> sample(const ContinuousWorld& world, const SupervisionSpec& spec, std::uint64_t seed,
                                     std::size_t count) {
  return sample_continuous(world, [&](const Vector3& s) { return world.generate(s); }, spec, seed, count);
}

std::vector<ContinuousRecord> sample(const ContinuousCandidate& model, const SupervisionSpec& spec,
                                     std::uint64_t seed, std::size_t count) {
  return sample_continuous(model.latent_prior(), [&](const Vector3& z) { return model.generate(z); }, spec, seed,
                           count);
}

void write_dataset(std::ostream& out, const SupervisionSpec& spec, std::uint64_t seed,
                   const std::vector<DiscreteRecord>& records) {
  json header{{"kind", "header"}, {"version", 1},     {"spec", to_string(spec)},
              {"seed", seed},     {"count", records.size()}};
  out << header.dump() << '\n';
  std::vector<int> shared;
  for (int i : spec.kind == SupervisionKind::ChangePairing || spec.kind == SupervisionKind::MatchPairing ||
                       spec.kind == SupervisionKind::SharePairing
                   ? spec.set.indices()
                   : std::vector<int>{}) {
    shared.push_back(i + 1);
  }
  for (const auto& r : records) {
    json line;
    line["x"] = r.x;
    switch (spec.kind) {
      case SupervisionKind::RestrictedLabeling: line["s"] = r.labels; break;
      case SupervisionKind::RankPairing:
        line["x2"] = r.x2;
        line["y"] = r.y;
        break;
      default:
        line["x2"] = r.x2;
        line["shared"] = shared;
        break;
    }
    out << line.dump() << '\n';
  }
}

Dataset read_dataset(std::istream& in, int arity) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty dataset");
  Dataset data;
  try {
    const json header = json::parse(line);
    if (header.at("kind") != "header") throw Error(Errc::ParseError, "first line is not a header");
    data.spec = parse_supervision(header.at("spec").get<std::string>(), arity);
    data.seed = header.at("seed").get<std::uint64_t>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      DiscreteRecord r;
      r.x = j.at("x").get<std::int64_t>();
      if (j.contains("x2")) r.x2 = j.at("x2").get<std::int64_t>();
      if (j.contains("y")) r.y = j.at("y").get<int>();
      if (j.contains("s")) r.labels = j.at("s").get<std::vector<int>>();
      data.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return data;
}

}  // namespace wsd
