#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "wsd/supervision.hpp"
#include "wsd/world_io.hpp"

namespace fs = std::filesystem;
using namespace wsd;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("wsd-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2, help exits 0") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"calc", "--n", "3", "--axioms", "C{1", "--query", "C{1}"}).code == 2);
    CHECK(run({"score", "--schematic", "no-such-thing"}).code == 2);
  }

  TEST_CASE("world gen, inspect and validate") {
    TempDir dir;
    const auto gen = run({"world", "gen", "--seed", "1", "--n", "2", "--cards", "2,2", "-o", dir.file("w.json")});
    CHECK(gen.code == 0);
    const WorldSpec spec = read_world_spec_file(dir.file("w.json"));
    CHECK(spec.cards == std::vector<int>{2, 2});
    CHECK(run({"world", "validate", dir.file("w.json")}).code == 0);
    const auto inspect = run({"world", "inspect", "--format", "json", "--world", dir.file("w.json")});
    REQUIRE(inspect.code == 0);
    CHECK(nlohmann::json::parse(inspect.out)["n"] == 2);

    CHECK(run({"world", "gen", "--schematic", "zigzag-violation", "-o", dir.file("z.json")}).code == 0);
    const auto z = run({"world", "validate", dir.file("z.json")});
    CHECK(z.code == 0);
    CHECK(z.out.find("warning:") != std::string::npos);

    write(dir.file("bad.json"), "{\"version\": 1, \"n\": ");
    CHECK(run({"world", "validate", dir.file("bad.json")}).code == 2);
    CHECK(run({"world", "inspect", dir.file("bad.json")}).code == 2);

    WorldSpec clash = spec;
    clash.prior = {0.25, 0.25, 0.25, 0.25};
    clash.gen = {0, 1, 1, 3};
    write(dir.file("clash.json"), write_world_spec(clash));
    CHECK(run({"world", "validate", dir.file("clash.json")}).code == 1);
  }

  TEST_CASE("dataset") {
    TempDir dir;
    REQUIRE(run({"world", "gen", "--seed", "3", "--n", "3", "--cards", "2,3,2", "-o", dir.file("w.json")}).code == 0);
    const auto d = run({"dataset", "--seed", "4", "--world", dir.file("w.json"), "--spec", "share:1", "--n", "1000",
                        "-o", dir.file("d.jsonl")});
    REQUIRE(d.code == 0);
    std::ifstream in(dir.file("d.jsonl"));
    const Dataset ds = read_dataset(in, 3);
    CHECK(ds.seed == 4);
    REQUIRE(ds.records.size() == 1000);
    const DiscreteWorld world = DiscreteWorld::build(read_world_spec_file(dir.file("w.json")));
    for (const auto& r : ds.records) {
      const auto a = world.encode(r.x), b = world.encode(r.x2);
      REQUIRE(a.has_value());
      REQUIRE(b.has_value());
      CHECK(world.space().value(*a, 0) == world.space().value(*b, 0));
    }

    const auto empty = run({"dataset", "--world", dir.file("w.json"), "--spec", "share:1", "--n", "0"});
    CHECK(empty.code == 0);
    CHECK(lines(empty.out).size() == 1);

    WorldSpec spec = read_world_spec_file(dir.file("w.json"));
    spec.ordered = {true, false, true};
    write(dir.file("u.json"), write_world_spec(spec));
    CHECK(run({"dataset", "--world", dir.file("u.json"), "--spec", "rank:2", "--n", "5"}).code == 2);
    CHECK(run({"dataset", "--world", dir.file("u.json"), "--spec", "rank:1", "--n", "5"}).code == 0);
  }

  TEST_CASE("score") {
    const auto s = run({"score", "--schematic", "consistent-not-restrictive", "--kind", "both", "--direction", "gen",
                        "--sets", "1", "--format", "json"});
    REQUIRE(s.code == 0);
    const auto records = lines(s.out);
    REQUIRE(records.size() == 2);
    CHECK(nlohmann::json::parse(records[0])["score"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nlohmann::json::parse(records[1])["score"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));

    TempDir dir;
    REQUIRE(run({"world", "gen", "--seed", "2", "--n", "6", "-o", dir.file("w6.json")}).code == 0);
    const auto six = run({"score", "--world", dir.file("w6.json"), "--identity", "--format", "csv"});
    REQUIRE(six.code == 0);
    const auto rows = lines(six.out);
    REQUIRE(rows.size() == 7);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].find(",1.000000,") != std::string::npos);

    // Every record of a degenerate set is flagged rather than failing.
    const auto degenerate = run({"score", "--schematic", "consistent-not-restrictive", "--sets", "{}", "--format", "json"});
    CHECK(degenerate.code == 0);
    CHECK(nlohmann::json::parse(lines(degenerate.out)[0])["degenerate"] == true);

    const auto rot = run({"score", "--rotation", "--kind", "both", "--direction", "gen", "--sets", "1",
                          "--samples", "2000", "--format", "json"});
    REQUIRE(rot.code == 0);
    const auto rot_records = lines(rot.out);
    REQUIRE(rot_records.size() == 2);
    // Fixing z1 pins the angle reading, so every consistency numerator is 0.
    CHECK(nlohmann::json::parse(rot_records[0])["score"].get<double>() == 1.0);
    CHECK(nlohmann::json::parse(rot_records[1])["std_error"].get<double>() > 0.0);
  }

  TEST_CASE("calc") {
    const auto yes = run({"calc", "--n", "3", "--axioms", "C{1,2} & C{2,3}", "--query", "C{2}"});
    REQUIRE(yes.code == 0);
    const auto out = lines(yes.out);
    REQUIRE(out.size() >= 2);
    CHECK(out[0] == "YES");
    CHECK(yes.out.find("consistency-intersection") != std::string::npos);
    CHECK(lines(run({"calc", "--n", "3", "--axioms", "C{1,2} & C{2,3}", "--query", "R{2}"}).out)[0] == "NO");
    CHECK(lines(run({"calc", "--n", "3", "--axioms", "", "--query", "D{}"}).out)[0] == "YES");
    const auto j = run({"calc", "--n", "2", "--axioms", "C{1}", "--closure", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["atoms"].size() > 4);
    CHECK(run({"calc", "--n", "2", "--nuisance", "--axioms", "C{1,eta}", "--closure"}).code == 2);
  }

  TEST_CASE("verify") {
    const auto trivial = run({"verify", "--sweep", "--trials", "0"});
    CHECK(trivial.code == 0);
    const auto ce = run({"verify", "--counterexamples", "--rotation-samples", "20000", "--format", "json"});
    CHECK(ce.code == 0);
    const auto j = nlohmann::json::parse(ce.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() == 4);
    CHECK(run({"verify", "--sweep", "--trials", "50", "--n-max", "2"}).code == 0);
  }

  TEST_CASE("output does not depend on the thread count") {
    const std::vector<std::vector<std::string>> commands{
        {"score", "--rotation", "--kind", "both", "--direction", "both", "--samples", "3000", "--seed", "9"},
        {"verify", "--sweep", "--trials", "40", "--seed", "9"},
    };
    for (const auto& cmd : commands) {
      auto one = cmd, four = cmd;
      one.insert(one.end(), {"--threads", "1"});
      four.insert(four.end(), {"--threads", "4"});
      const auto a = run(one), b = run(four);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}
