#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wsd/errors.hpp"
#include "wsd/supervision.hpp"

using namespace wsd;

namespace {

std::shared_ptr<const DiscreteWorld> uniform22() { return tabulated_world({2, 2}, std::vector<double>(4, 0.25)); }

CandidateModel xor_model(const std::shared_ptr<const DiscreteWorld>& w) {
  return CandidateModel::from_map(w, [](const Tuple& z) { return Tuple{z[0], z[0] ^ z[1]}; });
}

std::vector<SupervisionSpec> specs_for(int n) {
  std::vector<SupervisionSpec> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    out.push_back({SupervisionKind::RestrictedLabeling, IndexSet(m)});
    out.push_back({SupervisionKind::MatchPairing, IndexSet(m)});
  }
  for (int i = 0; i < n; ++i) {
    out.push_back({SupervisionKind::SharePairing, IndexSet::singleton(i)});
    out.push_back({SupervisionKind::ChangePairing, IndexSet::singleton(i)});
    out.push_back({SupervisionKind::RankPairing, IndexSet::singleton(i)});
  }
  return out;
}

}  // namespace

TEST_SUITE("supervision") {
  TEST_CASE("spec text parses and canonicalizes") {
    const auto s = parse_supervision("share:2", 3);
    CHECK(s.kind == SupervisionKind::SharePairing);
    CHECK(s.canonical(3) == SupervisionSpec{SupervisionKind::MatchPairing, IndexSet{1}});
    const auto c = parse_supervision("change:2", 3);
    CHECK(c.canonical(3) == SupervisionSpec{SupervisionKind::MatchPairing, IndexSet{0, 2}});
    CHECK(c.guaranteed_fact(3) == Fact{FactKind::C, IndexSet{0, 2}});
    CHECK(parse_supervision("none", 3) == SupervisionSpec{SupervisionKind::RestrictedLabeling, IndexSet()});
    CHECK(parse_supervision("label:1,3", 3).set == IndexSet{0, 2});
    CHECK(to_string(parse_supervision("label:1,3", 3)) == "label:1,3");
    CHECK_THROWS_AS(parse_supervision("label:4", 3), Error);
    CHECK_THROWS_AS(parse_supervision("foo:1", 3), Error);
    CHECK_THROWS_AS(parse_supervision("label", 3), Error);
    CHECK_THROWS_AS(parse_supervision("rank:x", 3), Error);
  }

  TEST_CASE("rank validation") {
    CHECK_THROWS_AS(validate({SupervisionKind::RankPairing, IndexSet{0, 1}}, 2, {true, true}), Error);
    try {
      validate({SupervisionKind::RankPairing, IndexSet{1}}, 2, {true, false});
      FAIL("expected UnorderedFactorForRank");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnorderedFactorForRank);
    }
    validate({SupervisionKind::RankPairing, IndexSet{0}}, 2, {true, false});
  }

  TEST_CASE("identity candidate matches its own oracle under every spec") {
    const auto w = std::make_shared<const DiscreteWorld>(random_world(4, 2, {2, 3}, 0.5));
    const CandidateModel id = CandidateModel::identity(w);
    for (const auto& spec : specs_for(2)) CHECK(tables_match(augmented_table(id, spec), augmented_table(*w, spec)));
  }

  TEST_CASE("share pairing on the uniform 2x2 world puts 1/8 on each sharing pair") {
    const auto w = uniform22();
    const AugmentedTable t = augmented_table(*w, {SupervisionKind::SharePairing, IndexSet{0}});
    CHECK(t.mass.size() == 8);
    for (const auto& [outcome, p] : t.mass) {
      CHECK(p == 0.125);
      const Tuple a = w->space().decode(*w->encode(outcome[0]));
      const Tuple b = w->space().decode(*w->encode(outcome[1]));
      CHECK(a[0] == b[0]);
    }
  }

  TEST_CASE("rank pairing on a uniform binary factor puts 3/4 on y = 1") {
    const auto w = tabulated_world({2}, {0.5, 0.5});
    const AugmentedTable t = augmented_table(*w, {SupervisionKind::RankPairing, IndexSet{0}});
    double y1 = 0.0;
    for (const auto& [outcome, p] : t.mass) {
      if (outcome[2] == 1) y1 += p;
    }
    CHECK(y1 == 0.75);
  }

  TEST_CASE("XOR candidate matches the labeling on factor 1 but not share pairing on factor 2") {
    const auto w = uniform22();
    const CandidateModel m = xor_model(w);
    const SupervisionSpec label{SupervisionKind::RestrictedLabeling, IndexSet{0}};
    CHECK(tables_match(augmented_table(m, label), augmented_table(*w, label)));
    const AugmentedTable self = augmented_table(*w, label);
    CHECK(tables_match(self, self));
    const SupervisionSpec share{SupervisionKind::SharePairing, IndexSet{1}};
    CHECK_FALSE(tables_match(augmented_table(m, share), augmented_table(*w, share)));
    try {
      table_distance(augmented_table(*w, label), augmented_table(*w, share));
      FAIL("expected KindMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::KindMismatch);
    }
  }

  TEST_CASE("tables agree with direct enumeration and satisfy their invariants") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const auto w = std::make_shared<const DiscreteWorld>(random_world(seed, 3, {2, 2, 3}, (seed % 4) / 3.0));
      std::mt19937_64 rng(seed);
      std::vector<int> perm(w->process().size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const CandidateModel m = CandidateModel::from_bijection(w, perm);
      std::map<std::int64_t, double> px;
      for (std::size_t k = 0; k < w->process().size(); ++k) px[w->process().observation[k]] += w->process().mass[k];
      for (const auto& spec : specs_for(3)) {
        const AugmentedTable t = augmented_table(*w, spec);
        CHECK(oracle::distance(oracle::table(w->process(), spec), t) <= 1e-15);
        CHECK(oracle::distance(oracle::table(m.latent(), spec), augmented_table(m, spec)) <= 1e-15);
        CHECK(std::abs(t.total() - 1.0) <= 1e-12);
        for (const auto& [x, p] : t.observation_marginal()) CHECK(std::abs(p - px[x]) <= 1e-12);
        if (t.kind == SupervisionKind::MatchPairing) {
          for (const auto& [o, p] : t.mass) {
            auto it = t.mass.find({o[1], o[0], 0});
            REQUIRE(it != t.mass.end());
            CHECK(std::abs(it->second - p) <= 1e-15);
          }
        }
      }
      for (int i = 0; i < 3; ++i) {
        const AugmentedTable change = augmented_table(*w, {SupervisionKind::ChangePairing, IndexSet::singleton(i)});
        const AugmentedTable share =
            augmented_table(*w, {SupervisionKind::MatchPairing, IndexSet::singleton(i).complement(3)});
        CHECK(change.mass == share.mass);
      }
    }
  }

  TEST_CASE("sample with count 0 is empty and sampling is deterministic") {
    const auto w = uniform22();
    const SupervisionSpec share{SupervisionKind::SharePairing, IndexSet{0}};
    CHECK(sample(*w, share, 1, 0).empty());
    const auto a = sample(*w, share, 7, 500);
    const auto b = sample(*w, share, 7, 500);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].x == b[k].x);
      CHECK(a[k].x2 == b[k].x2);
    }
    // A prefix of a longer stream is the shorter stream.
    const auto c = sample(*w, share, 7, 100);
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k].x == a[k].x);
  }

  TEST_CASE("share samples share the factor and rank samples carry the indicator") {
    const auto w = std::make_shared<const DiscreteWorld>(random_world(2, 3, {3, 2, 2}, 0.6));
    const FactorSpace& space = w->space();
    for (const auto& r : sample(*w, {SupervisionKind::SharePairing, IndexSet{0}}, 3, 2000))
      CHECK(space.value(*w->encode(r.x), 0) == space.value(*w->encode(r.x2), 0));
    for (const auto& r : sample(*w, {SupervisionKind::RankPairing, IndexSet{0}}, 4, 2000))
      CHECK(r.y == (space.value(*w->encode(r.x), 0) >= space.value(*w->encode(r.x2), 0) ? 1 : 0));
    for (const auto& r : sample(*w, {SupervisionKind::RestrictedLabeling, IndexSet{0, 2}}, 5, 2000)) {
      const auto s = *w->encode(r.x);
      REQUIRE(r.labels.size() == 2);
      CHECK(r.labels[0] == space.value(s, 0));
      CHECK(r.labels[1] == space.value(s, 2));
    }
  }

  TEST_CASE("empirical frequencies converge to the exact table") {
    const auto w = std::make_shared<const DiscreteWorld>(random_world(8, 2, {3, 3}, 0.5));
    const std::size_t n = 100000;
    for (const auto& spec : {SupervisionSpec{SupervisionKind::RestrictedLabeling, IndexSet{1}},
                             SupervisionSpec{SupervisionKind::SharePairing, IndexSet{0}},
                             SupervisionSpec{SupervisionKind::RankPairing, IndexSet{1}}}) {
      const AugmentedTable t = augmented_table(*w, spec);
      std::map<AugmentedTable::Outcome, double> freq;
      for (const auto& r : sample(*w, spec, 17, n)) {
        AugmentedTable::Outcome o{r.x, 0, 0};
        if (spec.kind == SupervisionKind::RestrictedLabeling) {
          o[1] = w->space().subspace(spec.set).encode(r.labels);
        } else {
          o[1] = r.x2;
          o[2] = r.y;
        }
        freq[o] += 1.0 / n;
      }
      std::size_t within = 0;
      for (const auto& [o, p] : t.mass) {
        if (std::abs(freq[o] - p) <= 3.0 * std::sqrt(p * (1 - p) / n)) ++within;
      }
      CHECK(static_cast<double>(within) >= 0.99 * static_cast<double>(t.mass.size()) - 1.0);
    }
  }

  TEST_CASE("datasets round-trip through the JSONL format") {
    const auto w = uniform22();
    for (const auto& spec : {SupervisionSpec{SupervisionKind::RestrictedLabeling, IndexSet{0}},
                             SupervisionSpec{SupervisionKind::SharePairing, IndexSet{1}},
                             SupervisionSpec{SupervisionKind::RankPairing, IndexSet{0}}}) {
      const auto records = sample(*w, spec, 9, 50);
      std::stringstream buffer;
      write_dataset(buffer, spec, 9, records);
      const Dataset d = read_dataset(buffer, 2);
      CHECK(d.spec == spec);
      CHECK(d.seed == 9);
      REQUIRE(d.records.size() == records.size());
      for (std::size_t k = 0; k < records.size(); ++k) {
        CHECK(d.records[k].x == records[k].x);
        CHECK(d.records[k].x2 == records[k].x2);
        CHECK(d.records[k].y == records[k].y);
        CHECK(d.records[k].labels == records[k].labels);
      }
    }
    std::stringstream bad("{\"kind\":\"record\"}\n");
    CHECK_THROWS_AS(read_dataset(bad, 2), Error);
  }

  TEST_CASE("continuous samplers honour the spec") {
    const RotationSetup setup = rotation_world();
    const auto records = sample(setup.world, {SupervisionKind::SharePairing, IndexSet{1}}, 3, 500);
    for (const auto& r : records) CHECK(r.x(1) == r.x2(1));
    const auto model = sample(setup.candidate, {SupervisionKind::RestrictedLabeling, IndexSet{0}}, 3, 500);
    for (const auto& r : model) CHECK(r.labels[0] == doctest::Approx(r.x(0)));
  }
}
