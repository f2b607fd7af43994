#include <doctest.h>

#include <json.hpp>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wsd/verify.hpp"

using namespace wsd;

namespace {

CandidateModel random_model(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<int> cards(n);
  for (auto& c : cards) c = std::uniform_int_distribution<int>(2, 3)(rng);
  const auto size = static_cast<std::size_t>(FactorSpace(cards).size());
  std::vector<double> prior(size, 0.0);
  double total = 0.0;
  const bool sparse = rng() % 2;
  for (auto& p : prior) {
    if (sparse && rng() % 3 == 0) continue;
    p = 0.2 + std::uniform_real_distribution<double>()(rng);
    total += p;
  }
  if (total == 0.0) prior[0] = total = 1.0;
  for (auto& p : prior) p /= total;
  const auto w = tabulated_world(cards, prior);
  std::vector<int> perm(w->process().size());
  std::iota(perm.begin(), perm.end(), 0);
  // Half the models permute only inside the first factor's level sets so that
  // some facts hold.
  if (rng() % 2) {
    std::shuffle(perm.begin(), perm.end(), rng);
  } else {
    const FactorSpace& s = w->space();
    std::map<int, std::vector<int>> groups;
    for (std::size_t k = 0; k < perm.size(); ++k) groups[s.value(w->support()[k], 0)].push_back(static_cast<int>(k));
    for (auto& [v, g] : groups) {
      auto shuffled = g;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (std::size_t k = 0; k < g.size(); ++k) perm[g[k]] = shuffled[k];
    }
  }
  return CandidateModel::from_bijection(w, perm);
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("brute-force fact checks on the named counterexamples") {
    const auto a = schematic_world(SchematicKind::ConsistentNotRestrictive);
    CHECK(check_fact_brute(a.model, {FactKind::C, IndexSet{0}}));
    CHECK_FALSE(check_fact_brute(a.model, {FactKind::R, IndexSet{0}}));
    const auto b = schematic_world(SchematicKind::RestrictiveNotConsistent);
    CHECK(check_fact_brute(b.model, {FactKind::R, IndexSet{0}}));
    CHECK_FALSE(check_fact_brute(b.model, {FactKind::C, IndexSet{0}}));
    const auto id = CandidateModel::identity(a.world);
    for (std::uint32_t m = 0; m < 4; ++m) CHECK(check_fact_brute(id, {FactKind::D, IndexSet(m)}));
  }

  TEST_CASE("brute force, metrics and the triple oracle agree") {
    std::mt19937_64 rng(11);
    int agreed_true = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto m = random_model(rng);
      const Direction d = rng() % 2 ? Direction::GeneratorBased : Direction::EncoderBased;
      const int n = m.oracle().arity();
      const IndexSet set(static_cast<std::uint32_t>(rng() % (1u << n)));
      const Fact fact{rng() % 2 ? FactKind::C : FactKind::R, set};
      const bool brute = check_fact_brute(m, fact, d);
      const bool lib = holds(EvaluationTarget(m, d), fact);
      const double raw = fact.kind == FactKind::C ? oracle::raw_consistency(m, d, set)
                                                  : oracle::raw_restrictiveness(m, d, set);
      CAPTURE(trial);
      CHECK(brute == lib);
      CHECK(brute == (raw <= 1e-12));
      agreed_true += brute;
    }
    CHECK(agreed_true > 100);
    CHECK(agreed_true < 900);
  }

  TEST_CASE("true atoms match brute force") {
    const auto z = schematic_world(SchematicKind::ZigzagViolation);
    for (Direction d : {Direction::GeneratorBased, Direction::EncoderBased}) {
      const auto atoms = true_atoms(EvaluationTarget(z.model, d));
      for (std::uint32_t m = 0; m < 8; ++m) {
        for (FactKind k : {FactKind::C, FactKind::R}) {
          const Fact f{k, IndexSet(m)};
          CHECK((std::find(atoms.begin(), atoms.end(), f) != atoms.end()) == check_fact_brute(z.model, f, d));
        }
      }
    }
  }

  TEST_CASE("sweeps") {
    const SweepReport none = soundness_sweep(1, 0, 3, 3);
    CHECK(none.trials == 0);
    CHECK(none.models == 0);
    CHECK(none.passed());

    const SweepReport some = soundness_sweep(5, 60, 3, 3);
    CHECK(some.trials == 60);
    CHECK(some.derived > 0);
    CHECK(some.passed());
    const SweepReport again = soundness_sweep(5, 60, 3, 3);
    CHECK(again.derived == some.derived);
  }

  TEST_CASE("exhaustive sweeps up to support 8") {
    const std::vector<std::pair<std::vector<int>, std::vector<double>>> worlds{
        {{2, 3}, {0.1, 0.2, 0.05, 0.25, 0.3, 0.1}},
        {{2, 2, 2}, {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125}},
        {{2, 2, 2}, {0.05, 0.1, 0.15, 0.2, 0.0, 0.25, 0.25, 0.0}},
        {{4, 2}, {0.1, 0.1, 0.15, 0.15, 0.05, 0.2, 0.2, 0.05}},
    };
    for (const auto& [cards, prior] : worlds) {
      const auto w = tabulated_world(cards, prior);
      const SweepReport r = exhaustive_sweep(w);
      CHECK(r.models > 0);
      CHECK(r.passed());
    }
  }

  TEST_CASE("zig-zag guard is what keeps the sweep sound") {
    const auto z = schematic_world(SchematicKind::ZigzagViolation);
    const SweepReport guarded = exhaustive_sweep(z.world, true);
    CHECK(guarded.models == 24);
    CHECK(guarded.passed());
    const SweepReport open = exhaustive_sweep(z.world, false);
    CHECK_FALSE(open.passed());

    const auto atoms = true_atoms(EvaluationTarget(z.model, Direction::GeneratorBased));
    const auto v = closure_violations(z.model, Direction::GeneratorBased, atoms, false, "zigzag");
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().context == "zigzag");
    CHECK_FALSE(v.front().trace.empty());
    CHECK(closure_violations(z.model, Direction::GeneratorBased, atoms, true, "zigzag").empty());
  }

  TEST_CASE("counterexample suite") {
    const VerificationReport r = run_counterexample_suite(3, 20000);
    REQUIRE(r.checks.size() == 4);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
  }

  TEST_CASE("assumption checks") {
    WorldSpec full;
    full.n = 2;
    full.cards = {2, 2};
    full.prior = {0.25, 0.25, 0.25, 0.25};
    full.gen = {0, 1, 2, 3};
    full.ordered = {true, true};
    const AssumptionReport ok = check_assumptions(full);
    CHECK(ok.structural());
    CHECK(ok.zigzag_failures.empty());

    const auto z = schematic_world(SchematicKind::ZigzagViolation);
    const AssumptionReport zz = check_assumptions(z.world->spec());
    CHECK(zz.structural());
    CHECK(std::find(zz.zigzag_failures.begin(), zz.zigzag_failures.end(),
                    std::pair<IndexSet, IndexSet>{IndexSet{0}, IndexSet{1}}) != zz.zigzag_failures.end());

    WorldSpec clash = full;
    clash.gen = {0, 1, 1, 3};
    const AssumptionReport c = check_assumptions(clash);
    CHECK_FALSE(c.injective);
    CHECK_FALSE(c.structural());
    CHECK_FALSE(c.messages.empty());

    WorldSpec heavy = full;
    heavy.prior = {0.5, 0.25, 0.25, 0.25};
    CHECK_FALSE(check_assumptions(heavy).normalized);
  }

  TEST_CASE("report formats") {
    VerificationReport r;
    r.checks.push_back({"alpha", true, 0.5, 7, "ok"});
    r.checks.push_back({"beta", false, 1.5, 8, "said \"no\", twice"});
    CHECK_FALSE(r.passed());

    const auto j = nlohmann::json::parse(format_report(r, ReportFormat::Json));
    CHECK(j["passed"] == false);
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["status"] == "fail");
    CHECK(j["checks"][1]["detail"] == "said \"no\", twice");

    std::istringstream csv(format_report(r, ReportFormat::Csv));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "name,status,statistic,seed,detail");
    std::getline(csv, line);
    CHECK(line == "alpha,pass,0.5,7,\"ok\"");
    std::getline(csv, line);
    CHECK(line == "beta,fail,1.5,8,\"said \"\"no\"\", twice\"");

    const std::string text = format_report(r, ReportFormat::Text);
    CHECK(text.find("PASS alpha") != std::string::npos);
    CHECK(text.find("FAIL beta") != std::string::npos);
  }
}
