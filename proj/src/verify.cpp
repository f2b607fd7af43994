#include "wsd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wsd/errors.hpp"
#include "wsd/learner.hpp"
#include "wsd/match_check.hpp"
#include "wsd/mig.hpp"
#include "wsd/parallel.hpp"
#include "wsd/rng.hpp"

namespace wsd {

namespace {

// Driver tuples with their masses and the decoded tuples they are read as.
struct BruteProcess {
  std::vector<Tuple> driver;
  std::vector<double> mass;
  std::vector<Tuple> reading;
};

BruteProcess brute_process(const CandidateModel& model, Direction direction) {
  BruteProcess out;
  const TabularProcess& latent = model.latent();
  const TabularProcess& oracle = model.oracle().process();
  const bool generator = direction == Direction::GeneratorBased;
  const TabularProcess& driver = generator ? latent : oracle;
  const FactorSpace& reading_space = generator ? oracle.space : latent.space;
  if (static_cast<std::int64_t>(driver.size()) > kDefaultSupportCap)
    throw Error(Errc::SupportTooLarge, "brute-force check needs support <= 4096");
  for (std::size_t k = 0; k < driver.size(); ++k) {
    const auto r = generator ? model.generator_reading(k) : model.encoder_reading(k);
    if (!r) throw Error(Errc::InvalidArgument, "reading undefined on the support");
    out.driver.push_back(driver.space.decode(driver.support[k]));
    out.mass.push_back(driver.mass[k]);
    out.reading.push_back(reading_space.decode(*r));
  }
  return out;
}

// E over (fix the `given` coordinates, draw the rest twice) of the number
// of `given` coordinates on which the readings differ.
double brute_deviation(const BruteProcess& p, const std::vector<int>& given) {
  auto key = [&](const Tuple& t) {
    Tuple k;
    for (int i : given) k.push_back(t[i]);
    return k;
  };
  std::map<Tuple, double> marginal;
  for (std::size_t a = 0; a < p.driver.size(); ++a) marginal[key(p.driver[a])] += p.mass[a];
  double total = 0.0;
  for (std::size_t a = 0; a < p.driver.size(); ++a) {
    if (p.mass[a] <= 0.0) continue;
    const Tuple ka = key(p.driver[a]);
    for (std::size_t b = 0; b < p.driver.size(); ++b) {
      if (p.mass[b] <= 0.0 || key(p.driver[b]) != ka) continue;
      int differ = 0;
      for (int i : given) differ += p.reading[a][i] != p.reading[b][i];
      total += p.mass[a] * p.mass[b] / marginal[ka] * differ;
    }
  }
  return total;
}

}  // namespace

bool check_fact_brute(const CandidateModel& model, const Fact& fact, Direction direction, double tol) {
  const int n = model.oracle().arity();
  if (!fact.set.subset_of(IndexSet::full(n))) throw Error(Errc::ArityMismatch, "fact outside arity");
  const BruteProcess p = brute_process(model, direction);
  const std::vector<int> inside = fact.set.indices();
  const std::vector<int> outside = fact.set.complement(n).indices();
  const bool c = brute_deviation(p, inside) <= tol;
  const bool r = brute_deviation(p, outside) <= tol;
  switch (fact.kind) {
    case FactKind::C: return c;
    case FactKind::R: return r;
    case FactKind::D: return c && r;
  }
  return false;
}

std::vector<Fact> true_atoms(const EvaluationTarget& target) {
  std::vector<Fact> out;
  const std::uint32_t count = std::uint32_t{1} << target.arity();
  for (FactKind kind : {FactKind::C, FactKind::R}) {
    for (std::uint32_t m = 0; m < count; ++m) {
      const Fact f{kind, IndexSet(m)};
      if (holds(target, f)) out.push_back(f);
    }
  }
  return out;
}

RuleGuard zigzag_guard(const FactorSpace& space, std::vector<std::int64_t> support) {
  const int n = space.arity();
  return [space, support = std::move(support), n](Rule rule, IndexSet a, IndexSet b) {
    switch (rule) {
      case Rule::RestrictivenessUnion:
      case Rule::FullDisentanglementR:
        return zigzag_connected(space, support, a, b);
      case Rule::ConsistencyIntersection:
        return zigzag_connected(space, support, a.complement(n), b.complement(n));
      default:
        return true;
    }
  };
}

std::vector<Violation> closure_violations(const CandidateModel& model, Direction direction,
                                          std::span<const Fact> axioms, bool guarded, const std::string& context) {
  const EvaluationTarget target(model, direction);
  const std::vector<Fact> truth = true_atoms(target);
  const std::set<Fact> true_set(truth.begin(), truth.end());
  const Universe universe{target.arity(), false};
  const RuleGuard guard =
      guarded ? zigzag_guard(target.measured().driver_space, target.measured().support) : RuleGuard{};
  const FactSet closed = closure(axioms, universe, guard);
  std::vector<Violation> out;
  for (const auto& f : closed.facts()) {
    if (!true_set.count(f)) out.push_back(Violation{context, direction, f, closed.trace(f)});
  }
  return out;
}

namespace {

struct Trial {
  std::shared_ptr<const DiscreteWorld> world;
  std::vector<int> permutation;
  std::string context;
};

std::vector<double> random_masses(std::size_t count, const std::vector<char>& keep, bool uniform, Rng& rng) {
  std::vector<double> mass(count, 0.0);
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (std::size_t t = 0; t < count; ++t) {
    if (!keep[t]) continue;
    mass[t] = uniform ? 1.0 : 0.05 + expo(rng);
    total += mass[t];
  }
  for (auto& m : mass) m /= total;
  return mass;
}

Trial random_trial(std::uint64_t seed, int max_factors, int max_card) {
  Rng rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(std::min(2, max_factors), max_factors);
  std::vector<int> cards(n);
  for (auto& c : cards) c = pick(2, std::max(2, max_card));
  const FactorSpace space(cards);
  const auto size = static_cast<std::size_t>(space.size());
  const bool uniform = pick(0, 2) == 0;
  const bool sparse = pick(0, 1) == 0;

  std::vector<char> keep(size, 1);
  if (sparse) {
    const double rate = pick(0, 1) == 0 ? 0.5 : 0.75;
    std::size_t kept = 0;
    for (auto& k : keep) kept += (k = uniform01(rng) < rate);
    if (kept == 0) keep[pick(0, static_cast<int>(size) - 1)] = 1;
  }
  auto world = tabulated_world(cards, random_masses(size, keep, uniform, rng));
  const TabularProcess& process = world->process();

  Trial trial;
  trial.world = world;
  std::ostringstream context;
  context << "seed=" << seed << " cards=" << cards.size();
  if (sparse) {
    trial.permutation.resize(process.size());
    std::iota(trial.permutation.begin(), trial.permutation.end(), 0);
    std::shuffle(trial.permutation.begin(), trial.permutation.end(), rng);
    context << " sparse";
  } else {
    // Triangular map in a random coordinate order: phi_i shifts a permuted
    // z_i by a random function of some earlier coordinates.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<IndexSet> depends(n);
    std::vector<std::vector<int>> shift(n), relabel(n);
    for (int r = 0; r < n; ++r) {
      const int i = order[r];
      for (int q = 0; q < r; ++q) {
        if (pick(0, 1)) depends[i] = depends[i] | IndexSet::singleton(order[q]);
      }
      shift[i].resize(static_cast<std::size_t>(space.subspace(depends[i]).size()));
      for (auto& v : shift[i]) v = pick(0, cards[i] - 1);
      relabel[i].resize(cards[i]);
      std::iota(relabel[i].begin(), relabel[i].end(), 0);
      std::shuffle(relabel[i].begin(), relabel[i].end(), rng);
    }
    trial.permutation.resize(process.size());
    for (std::size_t k = 0; k < process.size(); ++k) {
      const Tuple z = space.decode(process.support[k]);
      Tuple image(n);
      for (int i = 0; i < n; ++i) {
        const auto sub = space.project(process.support[k], depends[i]);
        image[i] = (relabel[i][z[i]] + shift[i][sub]) % cards[i];
      }
      trial.permutation[k] = static_cast<int>(*process.locate(space.encode(image)));
    }
    context << " triangular";
  }
  trial.context = context.str();
  return trial;
}

void check_model(const CandidateModel& model, const std::string& context, bool guarded, Rng* subset_rng,
                 SweepReport& report) {
  for (Direction direction : {Direction::GeneratorBased, Direction::EncoderBased}) {
    const std::vector<Fact> truth = true_atoms(EvaluationTarget(model, direction));
    std::vector<std::vector<Fact>> axiom_sets{truth};
    if (subset_rng) {
      std::vector<Fact> subset;
      for (const auto& f : truth) {
        if (uniform01(*subset_rng) < 0.4) subset.push_back(f);
      }
      axiom_sets.push_back(std::move(subset));
    }
    for (const auto& axioms : axiom_sets) {
      auto found = closure_violations(model, direction, axioms, guarded, context);
      report.derived += truth.size() + found.size();
      for (auto& v : found) report.violations.push_back(std::move(v));
    }
  }
  ++report.models;
}

}  // namespace

SweepReport soundness_sweep(std::uint64_t seed, std::size_t trials, int max_factors, int max_card, bool guarded) {
  if (max_factors < 1 || max_factors > kMaxClosureFactors) throw Error(Errc::InvalidArgument, "factor range");
  std::vector<SweepReport> partial(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    const Trial trial = random_trial(trial_seed, max_factors, max_card);
    const CandidateModel model = CandidateModel::from_bijection(trial.world, trial.permutation);
    Rng subset_rng(derive_seed(trial_seed, 1));
    check_model(model, trial.context, guarded, &subset_rng, partial[t]);
  });
  SweepReport report;
  report.trials = trials;
  for (auto& p : partial) {
    report.models += p.models;
    report.derived += p.derived;
    for (auto& v : p.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

SweepReport exhaustive_sweep(const std::shared_ptr<const DiscreteWorld>& world, bool guarded) {
  SweepReport report;
  report.trials = 1;
  for (const auto& model : enumerate_matched(world, std::span<const SupervisionSpec>{})) {
    check_model(model, model.describe(), guarded, nullptr, report);
  }
  return report;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

}  // namespace

VerificationReport run_counterexample_suite(std::uint64_t seed, std::size_t rotation_samples) {
  VerificationReport report;
  const IndexSet first = IndexSet::singleton(0);

  for (auto kind : {SchematicKind::ConsistentNotRestrictive, SchematicKind::RestrictiveNotConsistent}) {
    const Schematic s = schematic_world(kind);
    const EvaluationTarget target(s.model, Direction::GeneratorBased);
    const bool c = holds(target, Fact{FactKind::C, first});
    const bool r = holds(target, Fact{FactKind::R, first});
    const double cs = normalized_consistency(target, first).score;
    const double rs = normalized_restrictiveness(target, first).score;
    const bool cnr = kind == SchematicKind::ConsistentNotRestrictive;
    CheckResult check;
    check.name = to_string(kind);
    check.passed = cnr ? (c && !r && cs == 1.0 && rs == 0.0) : (!c && r && cs == 0.0 && rs == 1.0);
    check.statistic = cnr ? rs : cs;
    check.detail = "c=" + fixed(cs) + " r=" + fixed(rs);
    report.checks.push_back(check);
  }

  {
    const RotationSetup setup = rotation_world();
    const SupervisionSpec label{SupervisionKind::RestrictedLabeling, first};
    const TwoSampleResult match =
        mc_match_check(setup.candidate, setup.world, label, derive_seed(seed, 10), rotation_samples);
    const ContinuousTarget target{&setup.world, &setup.candidate, Direction::GeneratorBased};
    const ScoreReport c = normalized_score_mc(target, ScoreKind::Consistency, first, derive_seed(seed, 11),
                                              rotation_samples);
    const ScoreReport r = normalized_score_mc(target, ScoreKind::Restrictiveness, first, derive_seed(seed, 12),
                                              rotation_samples);
    CheckResult check;
    check.name = "rotation";
    check.seed = seed;
    check.passed = match.matched && c.score >= 0.99 && r.score <= 0.6;
    check.statistic = r.score;
    check.detail = "match_p=" + fixed(match.p_value, 3) + " c=" + fixed(c.score) + " r=" + fixed(r.score) +
                   " r_se=" + fixed(r.std_error);
    report.checks.push_back(check);
  }

  {
    const Schematic s = schematic_world(SchematicKind::ZigzagViolation);
    const EvaluationTarget target(s.model, Direction::GeneratorBased);
    const bool r1 = holds(target, Fact{FactKind::R, IndexSet{0}});
    const bool r2 = holds(target, Fact{FactKind::R, IndexSet{1}});
    const bool r12 = holds(target, Fact{FactKind::R, IndexSet{0, 1}});
    CheckResult check;
    check.name = "zigzag-violation";
    check.passed = r1 && r2 && !r12;
    check.statistic = raw_restrictiveness(target, IndexSet{0, 1});
    check.detail = std::string("R{1}=") + (r1 ? "1" : "0") + " R{2}=" + (r2 ? "1" : "0") +
                   " R{1,2}=" + (r12 ? "1" : "0");
    report.checks.push_back(check);
  }
  return report;
}

AssumptionReport check_assumptions(const WorldSpec& spec) {
  AssumptionReport report;
  std::int64_t size = 1;
  bool shape_ok = spec.n >= 1 && static_cast<int>(spec.cards.size()) == spec.n &&
                  static_cast<int>(spec.ordered.size()) == spec.n;
  for (int c : spec.cards) {
    if (c < 1 || size > kDefaultSupportCap * 1024) shape_ok = false;
    else size *= c;
  }
  shape_ok = shape_ok && static_cast<std::int64_t>(spec.prior.size()) == size &&
             static_cast<std::int64_t>(spec.gen.size()) == size;
  if (!shape_ok) {
    report.messages.push_back("malformed world: array lengths do not match n and cards");
    return report;
  }
  const FactorSpace space(spec.cards);

  double total = 0.0;
  bool finite = true;
  std::vector<std::int64_t> support;
  for (std::int64_t t = 0; t < size; ++t) {
    const double p = spec.prior[t];
    if (!std::isfinite(p) || p < 0.0) finite = false;
    else total += p;
    if (std::isfinite(p) && p > 0.0) support.push_back(t);
  }
  report.normalized = finite && std::abs(total - 1.0) <= kMassTolerance;
  if (!report.normalized) report.messages.push_back("prior is not a normalized distribution (sum " + fixed(total, 15) + ")");

  std::map<std::int64_t, std::int64_t> inverse;
  bool injective = true, defined = true;
  for (std::int64_t t : support) {
    const std::int64_t x = spec.gen[t];
    if (x < 0) {
      defined = false;
      continue;
    }
    if (!inverse.emplace(x, t).second) injective = false;
  }
  report.injective = injective && defined;
  if (!defined) report.messages.push_back("generator undefined on part of the support");
  if (!injective) report.messages.push_back("generator is not injective on the support: factors are not recoverable");
  report.inverse_exact = defined && std::all_of(support.begin(), support.end(), [&](std::int64_t t) {
    return inverse.at(spec.gen[t]) == t;
  });
  if (!report.inverse_exact && defined) report.messages.push_back("encoder does not invert the generator");

  std::vector<IndexSet> small;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << spec.n); ++m) {
    if (IndexSet(m).size() <= 2) small.push_back(IndexSet(m));
  }
  for (std::size_t a = 0; a < small.size(); ++a) {
    for (std::size_t b = a + 1; b < small.size(); ++b) {
      if (!zigzag_connected(space, support, small[a], small[b])) {
        report.zigzag_failures.emplace_back(small[a], small[b]);
        report.messages.push_back("support is not zig-zag connected for I=" + small[a].to_string() +
                                  " J=" + small[b].to_string());
      }
    }
  }
  return report;
}

namespace {

void shapes(int max_support, std::vector<int>& prefix, std::int64_t product, std::vector<std::vector<int>>& out) {
  if (!prefix.empty()) out.push_back(prefix);
  for (int c = 2; product * c <= max_support; ++c) {
    prefix.push_back(c);
    shapes(max_support, prefix, product * c, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> all_shapes(int max_support) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  shapes(max_support, prefix, 1, out);
  return out;
}

}  // namespace

std::vector<std::shared_ptr<const DiscreteWorld>> small_worlds(int max_support) {
  std::vector<std::shared_ptr<const DiscreteWorld>> out;
  for (const auto& cards : all_shapes(max_support)) {
    const auto size = static_cast<std::size_t>(FactorSpace(cards).size());
    for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << size); ++subset) {
      const int count = std::popcount(subset);
      for (bool graded : {false, true}) {
        if (graded && count == 1) continue;
        std::vector<double> prior(size, 0.0);
        double total = 0.0;
        int rank = 0;
        for (std::size_t t = 0; t < size; ++t) {
          if (!((subset >> t) & 1u)) continue;
          prior[t] = graded ? ++rank : 1.0;
          total += prior[t];
        }
        for (auto& p : prior) p /= total;
        out.push_back(tabulated_world(cards, prior));
      }
    }
  }
  return out;
}

std::vector<SupervisionSpec> all_specs(const DiscreteWorld& world) {
  std::vector<SupervisionSpec> out;
  const int n = world.arity();
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    out.push_back({SupervisionKind::RestrictedLabeling, IndexSet(m)});
    out.push_back({SupervisionKind::MatchPairing, IndexSet(m)});
  }
  for (int i = 0; i < n; ++i) {
    out.push_back({SupervisionKind::SharePairing, IndexSet::singleton(i)});
    out.push_back({SupervisionKind::ChangePairing, IndexSet::singleton(i)});
    if (world.ordered(i)) out.push_back({SupervisionKind::RankPairing, IndexSet::singleton(i)});
  }
  return out;
}

VerificationReport theorem_universality(int max_support) {
  const int capped = std::min<int>(max_support, static_cast<int>(kMaxEnumeratedSupport));
  std::size_t worlds = 0, specs = 0, matched = 0, failures = 0;
  std::string first_failure;
  for (const auto& world : small_worlds(capped)) {
    ++worlds;
    for (const auto& spec : all_specs(*world)) {
      ++specs;
      const GuaranteeReport g = verify_guarantee(world, spec);
      matched += g.matched;
      if (!g.passed()) {
        failures += 2 * g.matched - g.generator_holds - g.encoder_holds;
        if (first_failure.empty()) first_failure = " first_failure=" + to_string(spec);
      }
    }
  }
  CheckResult check;
  check.name = "guarantee-universality";
  check.passed = failures == 0 && matched > 0;
  check.statistic = static_cast<double>(failures);
  check.detail = "max_support=" + std::to_string(capped) + " worlds=" + std::to_string(worlds) +
                 " specs=" + std::to_string(specs) + " matched=" + std::to_string(matched) + first_failure;
  return VerificationReport{{check}};
}

namespace {

bool all_gaps_one(const CandidateModel& model) {
  for (Direction d : {Direction::GeneratorBased, Direction::EncoderBased}) {
    const MigReport m = mig(EvaluationTarget(model, d));
    for (double g : m.gap) {
      if (std::abs(g - 1.0) > kMassTolerance) return false;
    }
  }
  return true;
}

}  // namespace

VerificationReport full_disentanglement_checks(int max_support) {
  VerificationReport report;
  const int capped = std::min<int>(max_support, static_cast<int>(kMaxEnumeratedSupport));
  std::size_t worlds = 0, matched = 0, failures = 0;
  for (const auto& cards : all_shapes(capped)) {
    // Independent priors only: uniform, and marginals graded 1:2:3...
    for (bool graded : {false, true}) {
      const FactorSpace space(cards);
      std::vector<double> prior(static_cast<std::size_t>(space.size()));
      for (std::int64_t t = 0; t < space.size(); ++t) {
        double p = 1.0;
        for (int i = 0; i < space.arity(); ++i) {
          const int card = cards[i];
          p *= graded ? (space.value(t, i) + 1.0) / (card * (card + 1) / 2.0) : 1.0 / card;
        }
        prior[t] = p;
      }
      const double total = std::accumulate(prior.begin(), prior.end(), 0.0);
      for (auto& p : prior) p /= total;
      const auto world = tabulated_world(cards, prior);
      std::vector<SupervisionSpec> shares;
      for (int i = 0; i < world->arity(); ++i) shares.push_back({SupervisionKind::SharePairing, IndexSet::singleton(i)});
      ++worlds;
      for (const auto& c : enumerate_matched(world, shares)) {
        ++matched;
        if (!all_gaps_one(c)) ++failures;
      }
    }
  }
  CheckResult positive;
  positive.name = "share-pairing-full-disentanglement";
  positive.passed = failures == 0 && matched > 0;
  positive.statistic = static_cast<double>(failures);
  positive.detail = "worlds=" + std::to_string(worlds) + " matched=" + std::to_string(matched);
  report.checks.push_back(positive);

  const auto uniform = tabulated_world({2, 2}, std::vector<double>(4, 0.25));
  std::size_t unsupervised = 0, zero_gap = 0;
  for (const auto& c : enumerate_matched(uniform, std::span<const SupervisionSpec>{})) {
    ++unsupervised;
    const MigReport m = mig(EvaluationTarget(c, Direction::GeneratorBased));
    if (std::any_of(m.gap.begin(), m.gap.end(), [](double g) { return std::abs(g) <= kMassTolerance; })) ++zero_gap;
  }
  CheckResult negative;
  negative.name = "unsupervised-entangled-member";
  negative.passed = zero_gap > 0;
  negative.statistic = static_cast<double>(zero_gap);
  negative.detail = "matched=" + std::to_string(unsupervised) + " with_zero_gap=" + std::to_string(zero_gap);
  report.checks.push_back(negative);
  return report;
}

VerificationReport nuisance_checks(int max_factors) {
  VerificationReport report;
  bool forward = true, converse = true, necessary = true, empty_ok = true;
  for (int n = 1; n <= max_factors; ++n) {
    const Universe u{n, true};
    std::vector<WrittenFact> all_c, all_d;
    for (int i = 0; i < n; ++i) {
      all_c.push_back({FactKind::C, true, IndexSet::singleton(i)});
      all_d.push_back({FactKind::D, true, IndexSet::singleton(i)});
    }
    const FactSet from_c = nuisance_closure(all_c, n);
    const FactSet from_d = nuisance_closure(all_d, n);
    for (int i = 0; i < n; ++i) {
      const std::vector<Fact> d_eta = expand(WrittenFact{FactKind::D, true, IndexSet::singleton(i)}, u);
      forward = forward && from_c.contains(d_eta);
      converse = converse && from_d.contains(Fact{FactKind::C, IndexSet::singleton(i)});
      // Without C_eta(i) the closure must not produce D_eta(i).
      std::vector<WrittenFact> missing = all_c;
      missing.erase(missing.begin() + i);
      necessary = necessary && !nuisance_closure(missing, n).contains(d_eta);
    }
    empty_ok = empty_ok && nuisance_closure(std::span<const WrittenFact>{}, n).size() == 4;
  }
  CheckResult calc;
  calc.name = "nuisance-calculus";
  calc.passed = forward && converse && necessary && empty_ok;
  calc.detail = "max_factors=" + std::to_string(max_factors) + " forward=" + (forward ? "1" : "0") +
                " converse=" + (converse ? "1" : "0") + " necessary=" + (necessary ? "1" : "0") +
                " empty=" + (empty_ok ? "1" : "0");
  report.checks.push_back(calc);

  // Third factor plays eta: never supervised.
  const auto world = tabulated_world({2, 2, 2}, std::vector<double>(8, 0.125));
  const std::vector<SupervisionSpec> specs{{SupervisionKind::SharePairing, IndexSet{0}},
                                           {SupervisionKind::SharePairing, IndexSet{1}}};
  const IndexSet eta = IndexSet::singleton(2);
  std::size_t matched = 0, passing = 0, plain_r_violations = 0;
  for (const auto& c : enumerate_matched(world, specs)) {
    ++matched;
    const EvaluationTarget target(c, Direction::GeneratorBased);
    bool ok = true;
    for (int i = 0; i < 2; ++i) {
      ok = ok && holds(target, Fact{FactKind::C, IndexSet::singleton(i)}) &&
           holds(target, Fact{FactKind::R, IndexSet::singleton(i) | eta});
      if (!holds(target, Fact{FactKind::R, IndexSet::singleton(i)})) ++plain_r_violations;
    }
    passing += ok;
  }
  const AssumptionReport assumptions = check_assumptions(world->spec());
  CheckResult w;
  w.name = "nuisance-world";
  w.passed = matched > 0 && passing == matched && assumptions.structural() && assumptions.zigzag_failures.empty();
  w.statistic = static_cast<double>(matched - passing);
  w.detail = "matched=" + std::to_string(matched) + " d_eta_holds=" + std::to_string(passing) +
             " plain_R_violations=" + std::to_string(plain_r_violations);
  report.checks.push_back(w);
  return report;
}

std::string format_report(const VerificationReport& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json: {
      nlohmann::json j;
      j["passed"] = report.passed();
      j["checks"] = nlohmann::json::array();
      for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"status", c.passed ? "pass" : "fail"},
                               {"statistic", c.statistic},
                               {"seed", c.seed},
                               {"detail", c.detail}});
      }
      out << j.dump() << '\n';
      break;
    }
    case ReportFormat::Csv:
      out << "name,status,statistic,seed,detail\n";
      for (const auto& c : report.checks) {
        std::string detail;
        for (char ch : c.detail) {
          if (ch == '"') detail += '"';
          detail += ch;
        }
        out << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << c.statistic << ',' << c.seed << ",\""
            << detail << "\"\n";
      }
      break;
    case ReportFormat::Text:
      for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  statistic=" << c.statistic << " seed=" << c.seed
            << "  " << c.detail << '\n';
      }
      out << (report.passed() ? "all checks passed" : "some checks FAILED") << '\n';
      break;
  }
  return out.str();
}

}  // namespace wsd
