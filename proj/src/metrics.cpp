#include "wsd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "wsd/errors.hpp"
#include "wsd/parallel.hpp"

namespace wsd {

const char* to_string(Direction direction) {
  return direction == Direction::GeneratorBased ? "generator" : "encoder";
}
const char* to_string(ScoreKind kind) { return kind == ScoreKind::Consistency ? "consistency" : "restrictiveness"; }
const char* to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "montecarlo"; }

EvaluationTarget::EvaluationTarget(const CandidateModel& model, Direction direction)
    : model_(&model), direction_(direction) {
  const TabularProcess& oracle = model.oracle().process();
  const TabularProcess& latent = model.latent();
  if (latent.space.arity() != oracle.space.arity()) throw Error(Errc::ArityMismatch, "model and oracle arity");

  const bool generator = direction == Direction::GeneratorBased;
  const TabularProcess& driver = generator ? latent : oracle;
  measured_.driver_space = driver.space;
  measured_.reading_space = generator ? oracle.space : latent.space;
  measured_.support = driver.support;
  measured_.mass = driver.mass;
  measured_.reading.resize(driver.size());
  for (std::size_t k = 0; k < driver.size(); ++k) {
    const auto r = generator ? model.generator_reading(k) : model.encoder_reading(k);
    if (!r) throw Error(Errc::InvalidArgument, "reading undefined at support position " + std::to_string(k));
    measured_.reading[k] = *r;
  }
}

double pair_deviation(const MeasuredProcess& process, IndexSet given, IndexSet measured) {
  if (static_cast<std::int64_t>(process.support.size()) > kDefaultSupportCap) {
    throw Error(Errc::SupportTooLarge, "exact metrics need support <= " + std::to_string(kDefaultSupportCap));
  }
  std::unordered_map<std::int64_t, std::size_t> ids;
  std::vector<std::size_t> group(process.support.size());
  for (std::size_t k = 0; k < process.support.size(); ++k) {
    group[k] = ids.emplace(process.driver_space.project(process.support[k], given), ids.size()).first->second;
  }
  const std::size_t groups = ids.size();

  std::vector<double> group_mass(groups, 0.0);
  for (std::size_t k = 0; k < group.size(); ++k) group_mass[group[k]] += process.mass[k];

  // Squared-indicator distance decomposes per coordinate into a collision
  // probability: P(differ) = sum_v p_v (m - p_v) / m within each group.
  double total = 0.0;
  for (int factor : measured.indices()) {
    const int card = process.reading_space.card(factor);
    std::vector<double> joint(groups * card, 0.0);
    for (std::size_t k = 0; k < group.size(); ++k) {
      joint[group[k] * card + process.reading_space.value(process.reading[k], factor)] += process.mass[k];
    }
    for (std::size_t g = 0; g < groups; ++g) {
      double part = 0.0;
      for (int v = 0; v < card; ++v) {
        const double p = joint[g * card + v];
        part += p * (group_mass[g] - p);
      }
      total += part / group_mass[g];
    }
  }
  return total;
}

namespace {

void check_set(const EvaluationTarget& target, IndexSet set) {
  if (!set.subset_of(IndexSet::full(target.arity()))) throw Error(Errc::ArityMismatch, "index set exceeds arity");
}

// The conditioning and measured sets for each score kind.
IndexSet measured_set(ScoreKind kind, IndexSet set, int arity) {
  return kind == ScoreKind::Consistency ? set : set.complement(arity);
}

}  // namespace

double raw_consistency(const EvaluationTarget& target, IndexSet set) {
  check_set(target, set);
  return pair_deviation(target.measured(), set, set);
}

double raw_restrictiveness(const EvaluationTarget& target, IndexSet set) {
  check_set(target, set);
  const IndexSet rest = set.complement(target.arity());
  return pair_deviation(target.measured(), rest, rest);
}

ScoreReport normalized_score(const EvaluationTarget& target, ScoreKind kind, IndexSet set) {
  ScoreReport report;
  report.direction = target.direction();
  report.kind = kind;
  report.set = set;
  report.mode = Mode::Exact;
  report.numerator = kind == ScoreKind::Consistency ? raw_consistency(target, set) : raw_restrictiveness(target, set);
  report.denominator = pair_deviation(target.measured(), IndexSet(), measured_set(kind, set, target.arity()));
  report.samples = target.measured().support.size();
  if (report.denominator <= kDegeneracyThreshold) {
    throw Error(Errc::DegenerateDenominator,
                std::string(to_string(kind)) + " of " + set.to_string() + ": measured readings never vary");
  }
  report.score = 1.0 - report.numerator / report.denominator;
  return report;
}

ScoreReport normalized_consistency(const EvaluationTarget& target, IndexSet set) {
  return normalized_score(target, ScoreKind::Consistency, set);
}

ScoreReport normalized_restrictiveness(const EvaluationTarget& target, IndexSet set) {
  return normalized_score(target, ScoreKind::Restrictiveness, set);
}

bool holds(const EvaluationTarget& target, const Fact& fact, double tol) {
  switch (fact.kind) {
    case FactKind::C: return raw_consistency(target, fact.set) <= tol;
    case FactKind::R: return raw_restrictiveness(target, fact.set) <= tol;
    case FactKind::D:
      return raw_consistency(target, fact.set) <= tol && raw_restrictiveness(target, fact.set) <= tol;
  }
  return false;
}

ScoreReport estimate_score(const PairSampler& sampler, std::uint64_t seed, std::size_t samples,
                           std::size_t resamples) {
  constexpr std::size_t kChunk = 2048;
  std::vector<double> numerator(samples), denominator(samples);
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      numerator[i] = sampler.conditional_pair(rng);
      denominator[i] = sampler.iid_pair(rng);
    }
  });

  ScoreReport report;
  report.mode = Mode::MonteCarlo;
  report.samples = samples;
  report.seed = seed;
  if (samples == 0) throw Error(Errc::InvalidArgument, "Monte-Carlo estimate needs samples > 0");
  const double n = static_cast<double>(samples);
  report.numerator = std::accumulate(numerator.begin(), numerator.end(), 0.0) / n;
  report.denominator = std::accumulate(denominator.begin(), denominator.end(), 0.0) / n;
  if (report.denominator <= kDegeneracyThreshold) {
    throw Error(Errc::DegenerateDenominator, "sampled readings never vary");
  }
  report.score = 1.0 - report.numerator / report.denominator;

  std::vector<double> boot(resamples, 0.0);
  parallel_for(resamples, [&](std::size_t b) {
    Rng rng(derive_seed(seed ^ 0x626f6f74ULL, b));
    std::uniform_int_distribution<std::size_t> pick(0, samples - 1);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < samples; ++i) num += numerator[pick(rng)];
    for (std::size_t i = 0; i < samples; ++i) den += denominator[pick(rng)];
    boot[b] = den > 0.0 ? 1.0 - num / den : report.score;
  });
  if (resamples > 1) {
    const double mean = std::accumulate(boot.begin(), boot.end(), 0.0) / static_cast<double>(resamples);
    double ss = 0.0;
    for (double v : boot) ss += (v - mean) * (v - mean);
    report.std_error = std::sqrt(ss / static_cast<double>(resamples - 1));
  }
  return report;
}

namespace {

// Cumulative-mass sampler over the driver support with conditional draws
// inside groups that agree on the conditioning set.
class GroupedDriver {
 public:
  GroupedDriver(const MeasuredProcess& process, IndexSet given) : process_(process) {
    double acc = 0.0;
    for (double p : process.mass) cumulative_.push_back(acc += p);
    std::unordered_map<std::int64_t, std::size_t> ids;
    group_of_.resize(process.support.size());
    for (std::size_t k = 0; k < process.support.size(); ++k) {
      auto [it, inserted] = ids.emplace(process.driver_space.project(process.support[k], given), members_.size());
      if (inserted) {
        members_.emplace_back();
        member_cumulative_.emplace_back();
      }
      const std::size_t g = it->second;
      group_of_[k] = g;
      const double prev = member_cumulative_[g].empty() ? 0.0 : member_cumulative_[g].back();
      members_[g].push_back(k);
      member_cumulative_[g].push_back(prev + process.mass[k]);
    }
  }

  std::size_t draw(Rng& rng) const { return pick(cumulative_, rng); }
  std::size_t draw_partner(std::size_t k, Rng& rng) const {
    const std::size_t g = group_of_[k];
    return members_[g][pick(member_cumulative_[g], rng)];
  }

 private:
  static std::size_t pick(const std::vector<double>& cum, Rng& rng) {
    const double u = uniform01(rng) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
  }

  const MeasuredProcess& process_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> group_of_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<double>> member_cumulative_;
};

}  // namespace

ScoreReport normalized_score_mc(const EvaluationTarget& target, ScoreKind kind, IndexSet set, std::uint64_t seed,
                                std::size_t samples, std::size_t resamples) {
  check_set(target, set);
  const int arity = target.arity();
  const IndexSet measured = measured_set(kind, set, arity);
  const IndexSet given = measured;  // both kinds condition on the set they measure
  const MeasuredProcess& process = target.measured();
  const GroupedDriver driver(process, given);
  const FactorSpace& readings = process.reading_space;

  PairSampler sampler;
  sampler.conditional_pair = [&](Rng& rng) {
    const std::size_t a = driver.draw(rng);
    const std::size_t b = driver.draw_partner(a, rng);
    return static_cast<double>(readings.hamming(process.reading[a], process.reading[b], measured));
  };
  sampler.iid_pair = [&](Rng& rng) {
    const std::size_t a = driver.draw(rng);
    const std::size_t b = driver.draw(rng);
    return static_cast<double>(readings.hamming(process.reading[a], process.reading[b], measured));
  };
  ScoreReport report = estimate_score(sampler, seed, samples, resamples);
  report.direction = target.direction();
  report.kind = kind;
  report.set = set;
  return report;
}

ScoreReport normalized_score_mc(const ContinuousTarget& target, ScoreKind kind, IndexSet set, std::uint64_t seed,
                                std::size_t samples, std::size_t resamples) {
  const int arity = target.oracle->arity();
  if (!set.subset_of(IndexSet::full(arity))) throw Error(Errc::ArityMismatch, "index set exceeds arity");
  const IndexSet measured = measured_set(kind, set, arity);
  const IndexSet redrawn = measured.complement(arity);
  const bool generator = target.direction == Direction::GeneratorBased;
  const ContinuousWorld& driver = generator ? target.model->latent_prior() : *target.oracle;

  auto read = [&](const Vector3& v) -> Vector3 {
    return generator ? target.oracle->encode(target.model->generate(v))
                     : target.model->encode(target.oracle->generate(v));
  };
  auto distance = [&](const Vector3& a, const Vector3& b) {
    double d = 0.0;
    for (int i : measured.indices()) d += (a(i) - b(i)) * (a(i) - b(i));
    return d;
  };

  PairSampler sampler;
  sampler.conditional_pair = [&](Rng& rng) {
    const Vector3 v = driver.sample(rng);
    return distance(read(v), read(driver.resample(v, redrawn, rng)));
  };
  sampler.iid_pair = [&](Rng& rng) { return distance(read(driver.sample(rng)), read(driver.sample(rng))); };
  ScoreReport report = estimate_score(sampler, seed, samples, resamples);
  report.direction = target.direction;
  report.kind = kind;
  report.set = set;
  return report;
}

}  // namespace wsd
