#include <doctest.h>

#include <set>

#include "wsd/errors.hpp"
#include "wsd/fact.hpp"
#include "wsd/factor_space.hpp"
#include "wsd/index_set.hpp"
#include "wsd/parallel.hpp"
#include "wsd/rng.hpp"

using namespace wsd;

TEST_SUITE("core") {
  TEST_CASE("index set algebra") {
    const IndexSet a{0, 2};
    const IndexSet b{1, 2};
    CHECK((a | b) == IndexSet{0, 1, 2});
    CHECK((a & b) == IndexSet{2});
    CHECK((a - b) == IndexSet{0});
    CHECK(a.size() == 2);
    CHECK(a.span() == 3);
    CHECK(IndexSet().span() == 0);
    CHECK(a.complement(4) == IndexSet{1, 3});
    CHECK(a.to_string() == "{1,3}");
    CHECK(IndexSet().to_string() == "{}");
    CHECK(IndexSet{0, 3}.to_string(3) == "{1,eta}");
  }

  TEST_CASE("boolean algebra laws hold for every pair over four indices") {
    const int n = 4;
    for (std::uint32_t x = 0; x < 16; ++x) {
      const IndexSet a(x);
      CHECK(a.complement(n).complement(n) == a);
      for (std::uint32_t y = 0; y < 16; ++y) {
        const IndexSet b(y);
        CHECK((a | b).complement(n) == (a.complement(n) & b.complement(n)));
        CHECK((a & b).complement(n) == (a.complement(n) | b.complement(n)));
        CHECK((a & (a | b)) == a);
        CHECK(a.subset_of(a | b));
      }
    }
  }

  TEST_CASE("factor space encodes row-major and round-trips") {
    const FactorSpace space({2, 3, 2});
    CHECK(space.size() == 12);
    CHECK(space.encode(std::vector<int>{0, 0, 1}) == 1);
    CHECK(space.encode(std::vector<int>{1, 0, 0}) == 6);
    for (std::int64_t i = 0; i < space.size(); ++i) CHECK(space.encode(space.decode(i)) == i);
    const auto t = space.encode(std::vector<int>{1, 2, 1});
    CHECK(space.project(t, IndexSet{0, 2}) == 3);
    CHECK(space.project(t, IndexSet{}) == 0);
    CHECK(space.subspace(IndexSet{1}).size() == 3);
    CHECK(space.hamming(space.encode(std::vector<int>{0, 0, 0}), t, IndexSet{0, 1, 2}) == 3);
    CHECK(space.hamming(space.encode(std::vector<int>{1, 0, 1}), t, IndexSet{0, 2}) == 0);
  }

  TEST_CASE("factor space rejects bad shapes") {
    CHECK_THROWS_AS(FactorSpace(std::vector<int>{}), Error);
    CHECK_THROWS_AS(FactorSpace({2, 0}), Error);
  }

  TEST_CASE("derived seeds differ across streams and are stable") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(7, s));
    CHECK(seen.size() == 1000);
    static_assert(derive_seed(1, 2) == derive_seed(1, 2));
  }

  TEST_CASE("parallel_for visits every index once for any worker cap") {
    for (unsigned threads : {1u, 2u, 4u}) {
      set_max_threads(threads);
      std::vector<int> hits(1000, 0);
      parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
      CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
    set_max_threads(0);
  }

  TEST_CASE("parallel_for rethrows worker exceptions") {
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                      if (i == 3) throw Error(Errc::InvalidArgument, "boom");
                    }),
                    Error);
  }

  TEST_CASE("error messages carry the code name") {
    const Error e(Errc::DegenerateDenominator, "zero");
    CHECK(e.code() == Errc::DegenerateDenominator);
    CHECK(std::string(e.what()).find("DegenerateDenominator") != std::string::npos);
  }

  TEST_CASE("fact language parses, expands and prints canonically") {
    const Universe u{3, false};
    const auto facts = parse_facts("C{1,2} & R{3} & D{}", u);
    REQUIRE(facts.size() == 3);
    CHECK(facts[0].kind == FactKind::C);
    CHECK(facts[0].set == IndexSet{0, 1});
    CHECK(facts[2].set.empty());
    const auto expanded = expand(facts, u);
    CHECK(expanded.size() == 3);
    CHECK(to_string(expanded, u) == "C{1,2} & R{3} & D{}");
    CHECK(parse_facts("   ", u).empty());
    CHECK_THROWS_AS(parse_facts("C{4}", u), Error);
    CHECK_THROWS_AS(parse_facts("X{1}", u), Error);
    CHECK_THROWS_AS(parse_facts("C{1", u), Error);
    CHECK_THROWS_AS(parse_facts("Ceta{1}", u), Error);
  }

  TEST_CASE("nuisance forms expand per their definitions and round-trip") {
    const Universe u{2, true};
    const auto c = expand(parse_facts("Ceta{1}", u), u);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == Fact{FactKind::C, IndexSet{0}});
    const auto r = expand(parse_facts("Reta{1}", u), u);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == Fact{FactKind::R, IndexSet{0, 2}});
    CHECK(to_string(r[0], u) == "Reta{1}");
    const auto d = expand(parse_facts("Deta{2}", u), u);
    CHECK(d.size() == 2);
    for (std::uint32_t m = 0; m < 8; ++m) {
      for (FactKind kind : {FactKind::C, FactKind::R}) {
        const Fact f{kind, IndexSet(m)};
        const auto back = expand(parse_facts(to_string(f, u), u), u);
        REQUIRE(back.size() == 1);
        CHECK(back[0] == f);
      }
    }
  }
}
