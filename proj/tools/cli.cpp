#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsd/calculus.hpp"
#include "wsd/errors.hpp"
#include "wsd/metrics.hpp"
#include "wsd/parallel.hpp"
#include "wsd/supervision.hpp"
#include "wsd/verify.hpp"
#include "wsd/world_io.hpp"

namespace wsd::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "text";
  double tol = kMassTolerance;
};

ReportFormat report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return ReportFormat::Text;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad integer '" + item + "' in " + what);
    }
  }
  return out;
}

/// `1;2;1,3` or `{1};{2};{1,3}`; `{}` is the empty set.
std::vector<IndexSet> parse_sets(const std::string& text, int arity) {
  std::vector<IndexSet> out;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ';')) {
    std::string body;
    for (char c : item) {
      if (c != '{' && c != '}' && c != ' ') body += c;
    }
    IndexSet set;
    for (int i : parse_int_list(body, "--sets")) {
      if (i < 1 || i > arity) throw Error(Errc::ArityMismatch, "factor " + std::to_string(i) + " outside arity");
      set = set | IndexSet::singleton(i - 1);
    }
    out.push_back(set);
  }
  return out;
}

std::shared_ptr<const DiscreteWorld> load_world(const std::string& path) {
  return std::make_shared<const DiscreteWorld>(DiscreteWorld::build(read_world_spec_file(path)));
}

std::string tuple_text(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") out << text;
  else write_text_file(path, text);
}

// world ------------------------------------------------------------------

int world_gen(const Globals& g, int n, const std::string& cards_text, double correlation, const std::string& schematic,
              const std::string& output, std::ostream& out) {
  WorldSpec spec;
  if (!schematic.empty()) {
    const auto kind = parse_schematic_kind(schematic);
    if (!kind) throw Error(Errc::ParseError, "unknown schematic '" + schematic + "'");
    spec = schematic_world(*kind).world->spec();
  } else {
    std::vector<int> cards = parse_int_list(cards_text, "--cards");
    if (cards.empty()) cards.assign(n, 2);
    if (static_cast<int>(cards.size()) != n) throw Error(Errc::ArityMismatch, "--cards has wrong length for --n");
    spec = random_world(g.seed, n, cards, correlation).spec();
  }
  emit(out, output, write_world_spec(spec));
  return kOk;
}

int world_validate(const Globals& g, const std::string& path, std::ostream& out) {
  const WorldSpec spec = parse_world_spec(read_text_file(path));
  const AssumptionReport r = check_assumptions(spec);
  if (g.format == "json") {
    json j{{"normalized", r.normalized}, {"injective", r.injective}, {"inverse_exact", r.inverse_exact}};
    j["zigzag_failures"] = json::array();
    for (const auto& [a, b] : r.zigzag_failures) j["zigzag_failures"].push_back({a.to_string(), b.to_string()});
    j["messages"] = r.messages;
    out << j.dump() << '\n';
  } else {
    out << "normalized " << (r.normalized ? "yes" : "no") << '\n'
        << "injective " << (r.injective ? "yes" : "no") << '\n'
        << "inverse_exact " << (r.inverse_exact ? "yes" : "no") << '\n'
        << "zigzag_failures " << r.zigzag_failures.size() << '\n';
    for (const auto& m : r.messages) out << "warning: " << m << '\n';
  }
  return r.structural() ? kOk : kAssertion;
}

int world_inspect(const Globals& g, const std::string& path, std::ostream& out) {
  const auto world = load_world(path);
  const TabularProcess& p = world->process();
  const int n = world->arity();
  std::vector<std::vector<double>> marginals(n);
  for (int i = 0; i < n; ++i) marginals[i].assign(world->space().card(i), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (int i = 0; i < n; ++i) marginals[i][p.space.value(p.support[k], i)] += p.mass[k];
  }
  std::vector<std::vector<double>> mi(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mi[a][b] = factor_mutual_information(*world, IndexSet::singleton(a), IndexSet::singleton(b));
  }
  if (g.format == "json") {
    json j{{"n", n}, {"cards", world->space().cards()}, {"support", json::array()}};
    for (std::size_t k = 0; k < p.size(); ++k)
      j["support"].push_back({{"tuple", p.space.decode(p.support[k])}, {"mass", p.mass[k]}, {"x", p.observation[k]}});
    j["marginals"] = marginals;
    j["mutual_information"] = mi;
    out << j.dump() << '\n';
    return kOk;
  }
  out << "support " << p.size() << " of " << p.space.size() << '\n';
  for (std::size_t k = 0; k < p.size(); ++k)
    out << "  " << tuple_text(p.space.decode(p.support[k])) << " mass=" << p.mass[k] << " x=" << p.observation[k] << '\n';
  for (int i = 0; i < n; ++i) {
    out << "marginal " << i + 1 << ':';
    for (double m : marginals[i]) out << ' ' << m;
    out << '\n';
  }
  out << "mutual information (nats)\n";
  for (int a = 0; a < n; ++a) {
    out << ' ';
    for (int b = 0; b < n; ++b) out << ' ' << std::fixed << std::setprecision(6) << mi[a][b];
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
  return kOk;
}

// dataset ----------------------------------------------------------------

int dataset(const Globals& g, const std::string& world_path, const std::string& spec_text, std::size_t count,
            const std::string& output, std::ostream& out) {
  const auto world = load_world(world_path);
  const SupervisionSpec spec = parse_supervision(spec_text, world->arity());
  validate(spec, world->arity(), world->process().ordered);
  std::ostringstream text;
  write_dataset(text, spec, g.seed, sample(*world, spec, g.seed, count));
  emit(out, output, text.str());
  return kOk;
}

// score ------------------------------------------------------------------

struct ScoreRequest {
  std::string world, schematic, model, perm, sets, kind = "c", direction = "enc", mode = "exact";
  bool identity = false, rotation = false;
  std::size_t samples = 10000;
};

void print_reports(const Globals& g, const std::vector<ScoreReport>& reports, std::ostream& out) {
  if (g.format == "csv") out << "direction,kind,I,score,numerator,denominator,mode,samples,std_error,seed,degenerate\n";
  for (const auto& r : reports) {
    if (g.format == "json") {
      json j{{"direction", to_string(r.direction)},
             {"kind", to_string(r.kind)},
             {"I", r.set.to_string()},
             {"numerator", r.numerator},
             {"denominator", r.denominator},
             {"mode", to_string(r.mode)},
             {"samples", r.samples},
             {"std_error", r.std_error},
             {"seed", r.seed},
             {"degenerate", r.degenerate}};
      j["score"] = r.degenerate ? json(nullptr) : json(r.score);
      out << j.dump() << '\n';
    } else if (g.format == "csv") {
      out << to_string(r.direction) << ',' << to_string(r.kind) << ",\"" << r.set.to_string() << "\","
          << (r.degenerate ? std::string() : std::to_string(r.score)) << ',' << r.numerator << ',' << r.denominator
          << ',' << to_string(r.mode) << ',' << r.samples << ',' << r.std_error << ',' << r.seed << ','
          << (r.degenerate ? 1 : 0) << '\n';
    } else {
      out << to_string(r.direction) << ' ' << to_string(r.kind) << ' ' << r.set.to_string() << "  score=";
      if (r.degenerate) out << "degenerate";
      else out << std::fixed << std::setprecision(6) << r.score;
      out << " num=" << r.numerator << " den=" << r.denominator << std::defaultfloat << " mode=" << to_string(r.mode)
          << " samples=" << r.samples << " se=" << r.std_error << " seed=" << r.seed << '\n';
    }
  }
}

std::vector<Direction> directions(const std::string& text) {
  if (text == "gen" || text == "generator") return {Direction::GeneratorBased};
  if (text == "enc" || text == "encoder") return {Direction::EncoderBased};
  if (text == "both") return {Direction::GeneratorBased, Direction::EncoderBased};
  throw Error(Errc::ParseError, "--direction must be gen, enc or both");
}

std::vector<ScoreKind> kinds(const std::string& text) {
  if (text == "c") return {ScoreKind::Consistency};
  if (text == "r") return {ScoreKind::Restrictiveness};
  if (text == "both") return {ScoreKind::Consistency, ScoreKind::Restrictiveness};
  throw Error(Errc::ParseError, "--kind must be c, r or both");
}

std::vector<IndexSet> requested_sets(const std::string& text, int arity) {
  if (!text.empty()) return parse_sets(text, arity);
  std::vector<IndexSet> out;
  for (int i = 0; i < arity; ++i) out.push_back(IndexSet::singleton(i));
  return out;
}

int score(const Globals& g, const ScoreRequest& q, std::ostream& out) {
  const bool mc = q.mode == "mc" || q.mode == "montecarlo";
  if (!mc && q.mode != "exact") throw Error(Errc::ParseError, "--mode must be exact or mc");
  std::vector<ScoreReport> reports;
  std::uint64_t stream = 0;

  if (q.rotation) {
    const RotationSetup setup = rotation_world();
    for (Direction d : directions(q.direction)) {
      const ContinuousTarget target{&setup.world, &setup.candidate, d};
      for (ScoreKind k : kinds(q.kind)) {
        for (IndexSet s : requested_sets(q.sets, 3))
          reports.push_back(normalized_score_mc(target, k, s, derive_seed(g.seed, stream++), q.samples));
      }
    }
    print_reports(g, reports, out);
    return kOk;
  }

  std::shared_ptr<const DiscreteWorld> world;
  std::optional<CandidateModel> model;
  if (!q.schematic.empty()) {
    const auto kind = parse_schematic_kind(q.schematic);
    if (!kind) throw Error(Errc::ParseError, "unknown schematic '" + q.schematic + "'");
    Schematic s = schematic_world(*kind);
    world = s.world;
    model = std::move(s.model);
  } else {
    if (q.world.empty()) throw Error(Errc::ParseError, "score needs --world, --schematic or --rotation");
    world = load_world(q.world);
  }
  if (!q.model.empty()) model = CandidateModel::from_bijection(world, parse_model_permutation(read_text_file(q.model)));
  else if (!q.perm.empty()) model = CandidateModel::from_bijection(world, parse_int_list(q.perm, "--perm"));
  else if (q.identity || !model) model = CandidateModel::identity(world);

  for (Direction d : directions(q.direction)) {
    const EvaluationTarget target(*model, d);
    for (ScoreKind k : kinds(q.kind)) {
      for (IndexSet s : requested_sets(q.sets, world->arity())) {
        if (mc) {
          reports.push_back(normalized_score_mc(target, k, s, derive_seed(g.seed, stream++), q.samples));
          continue;
        }
        try {
          reports.push_back(normalized_score(target, k, s));
        } catch (const Error& e) {
          if (e.code() != Errc::DegenerateDenominator) throw;
          ScoreReport r;
          r.direction = d;
          r.kind = k;
          r.set = s;
          r.degenerate = true;
          r.score = std::numeric_limits<double>::quiet_NaN();
          reports.push_back(r);
        }
      }
    }
  }
  print_reports(g, reports, out);
  return kOk;
}

// calc -------------------------------------------------------------------

int calc(const Globals& g, int n, const std::string& axioms_text, const std::string& query_text, bool closure_only,
         bool nuisance, std::ostream& out) {
  const Universe universe{n, nuisance};
  const std::vector<WrittenFact> written = parse_facts(axioms_text, universe);
  FactSet closed = nuisance ? nuisance_closure(written, n) : closure(expand(written, universe), universe);

  if (closure_only || query_text.empty()) {
    const std::vector<Fact> atoms = closed.facts();
    const std::vector<Fact> d = closed.disentangled();
    if (g.format == "json") {
      json j{{"atoms", json::array()}, {"disentangled", json::array()}};
      for (const auto& f : atoms) j["atoms"].push_back(to_string(f, universe));
      for (const auto& f : d) j["disentangled"].push_back(to_string(f, universe));
      out << j.dump() << '\n';
    } else {
      for (const auto& f : atoms) {
        const auto* derivation = closed.derivation(f);
        out << to_string(f, universe) << "  [" << to_string(derivation->rule) << "]\n";
      }
      for (const auto& f : d) out << to_string(f, universe) << '\n';
    }
    return kOk;
  }

  const std::vector<Fact> query = expand(parse_facts(query_text, universe), universe);
  const bool yes = closed.contains(query);
  std::vector<std::string> trace;
  for (const auto& q : query) {
    for (auto& line : closed.trace(q)) {
      if (std::find(trace.begin(), trace.end(), line) == trace.end()) trace.push_back(std::move(line));
    }
  }
  if (g.format == "json") {
    out << json{{"query", query_text}, {"entailed", yes}, {"trace", trace}}.dump() << '\n';
  } else {
    out << (yes ? "YES" : "NO") << '\n';
    for (const auto& line : trace) out << "  " << line << '\n';
  }
  return kOk;
}

// verify -----------------------------------------------------------------

struct VerifyRequest {
  bool sweep = false, counterexamples = false, theorems = false;
  std::size_t trials = 1000;
  int n_max = 3, card_max = 3, support_max = 6;
  std::size_t rotation_samples = kRotationSamples;
};

int verify(const Globals& g, VerifyRequest q, std::ostream& out) {
  if (!q.sweep && !q.counterexamples && !q.theorems) q.sweep = q.counterexamples = q.theorems = true;
  VerificationReport report;
  if (q.sweep && q.trials > 0) {
    const SweepReport exhaustive = exhaustive_sweep(tabulated_world({2, 2}, std::vector<double>(4, 0.25)));
    report.checks.push_back({"soundness-exhaustive-2x2", exhaustive.passed(),
                             static_cast<double>(exhaustive.violations.size()), g.seed,
                             "models=" + std::to_string(exhaustive.models)});
    const SweepReport random = soundness_sweep(g.seed, q.trials, q.n_max, q.card_max);
    std::string detail = "trials=" + std::to_string(random.trials) + " derived=" + std::to_string(random.derived);
    if (!random.violations.empty()) {
      const Violation& v = random.violations.front();
      detail += " first=" + to_string(v.fact, Universe{kMaxClosureFactors, false}) + " " + v.context;
    }
    report.checks.push_back({"soundness-sweep", random.passed(), static_cast<double>(random.violations.size()),
                             g.seed, detail});
  }
  if (q.counterexamples) report.append(run_counterexample_suite(g.seed, q.rotation_samples));
  if (q.theorems) {
    report.append(theorem_universality(q.support_max));
    report.append(full_disentanglement_checks(q.support_max));
    report.append(nuisance_checks(4));
  }
  out << format_report(report, report_format(g.format));
  return report.passed() ? kOk : kAssertion;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak-supervision disentanglement toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Globals g;
  auto global = [&](CLI::App* sub) {
    sub->add_option("--seed", g.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", g.threads, "worker cap, 0 = hardware concurrency");
    sub->add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--tol", g.tol, "exact-mode tolerance")->capture_default_str();
  };
  global(&app);

  // world
  auto* world_cmd = app.add_subcommand("world", "generate, validate or inspect world specs");
  world_cmd->require_subcommand(1);
  int gen_n = 2;
  std::string gen_cards, gen_schematic, gen_output, world_path;
  double gen_corr = 0.0;
  auto* gen = world_cmd->add_subcommand("gen", "write a random or schematic world spec");
  global(gen);
  gen->add_option("--n", gen_n, "number of factors")->check(CLI::Range(1, 16));
  gen->add_option("--cards", gen_cards, "comma-separated cardinalities");
  gen->add_option("--correlation", gen_corr, "prior correlation in [0,1]")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--schematic", gen_schematic, "consistent-not-restrictive | restrictive-not-consistent | zigzag-violation");
  gen->add_option("-o,--output", gen_output, "output file (default stdout)");
  auto* validate_cmd = world_cmd->add_subcommand("validate", "check the modelling assumptions of a world");
  global(validate_cmd);
  validate_cmd->add_option("--world,world", world_path, "world spec file")->required();
  auto* inspect = world_cmd->add_subcommand("inspect", "print support, marginals and factor MI");
  global(inspect);
  inspect->add_option("--world,world", world_path, "world spec file")->required();

  // dataset
  auto* dataset_cmd = app.add_subcommand("dataset", "sample a weakly supervised dataset");
  global(dataset_cmd);
  std::string ds_world, ds_spec, ds_output;
  std::size_t ds_count = 1000;
  dataset_cmd->add_option("--world", ds_world, "world spec file")->required();
  dataset_cmd->add_option("--spec", ds_spec, "label:I | match:I | share:i | change:i | rank:i | none")->required();
  dataset_cmd->add_option("--n", ds_count, "record count")->capture_default_str();
  dataset_cmd->add_option("-o,--output", ds_output, "output file (default stdout)");

  // score
  auto* score_cmd = app.add_subcommand("score", "normalized consistency / restrictiveness scores");
  global(score_cmd);
  ScoreRequest sq;
  score_cmd->add_option("--world", sq.world, "world spec file");
  score_cmd->add_option("--schematic", sq.schematic, "built-in counterexample world and model");
  score_cmd->add_flag("--rotation", sq.rotation, "continuous rotation candidate (Monte-Carlo)");
  score_cmd->add_option("--model", sq.model, "model file with a support permutation");
  score_cmd->add_option("--perm", sq.perm, "support permutation, comma-separated");
  score_cmd->add_flag("--identity", sq.identity, "identity model");
  score_cmd->add_option("--sets", sq.sets, "index sets, e.g. '1;2;1,2' (default: singletons)");
  score_cmd->add_option("--kind", sq.kind, "c | r | both")->capture_default_str();
  score_cmd->add_option("--direction", sq.direction, "gen | enc | both")->capture_default_str();
  score_cmd->add_option("--mode", sq.mode, "exact | mc")->capture_default_str();
  score_cmd->add_option("--samples", sq.samples, "Monte-Carlo sample count")->capture_default_str();

  // calc
  auto* calc_cmd = app.add_subcommand("calc", "closure and entailment in the fact calculus");
  global(calc_cmd);
  int calc_n = 0;
  std::string calc_axioms, calc_query;
  bool calc_closure = false, calc_nuisance = false;
  calc_cmd->add_option("--n", calc_n, "number of factors")->required();
  calc_cmd->add_option("--axioms", calc_axioms, "conjunction such as 'C{1,2} & R{3}'");
  calc_cmd->add_option("--query", calc_query, "fact conjunction to decide");
  calc_cmd->add_flag("--closure", calc_closure, "print the whole closure");
  calc_cmd->add_flag("--nuisance", calc_nuisance, "add the nuisance index eta");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  global(verify_cmd);
  VerifyRequest vq;
  verify_cmd->add_flag("--sweep", vq.sweep, "calculus soundness sweep");
  verify_cmd->add_flag("--counterexamples", vq.counterexamples, "named counterexample suite");
  verify_cmd->add_flag("--theorems", vq.theorems, "matched-set guarantees");
  verify_cmd->add_option("--trials", vq.trials, "random sweep trials")->capture_default_str();
  verify_cmd->add_option("--n-max", vq.n_max, "largest factor count in the sweep")->capture_default_str();
  verify_cmd->add_option("--card-max", vq.card_max, "largest cardinality in the sweep")->capture_default_str();
  verify_cmd->add_option("--support-max", vq.support_max, "largest support enumerated")->capture_default_str();
  verify_cmd->add_option("--rotation-samples", vq.rotation_samples, "Monte-Carlo samples for the rotation check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_max_threads(g.threads);
    if (gen->parsed()) return world_gen(g, gen_n, gen_cards, gen_corr, gen_schematic, gen_output, out);
    if (validate_cmd->parsed()) return world_validate(g, world_path, out);
    if (inspect->parsed()) return world_inspect(g, world_path, out);
    if (dataset_cmd->parsed()) return dataset(g, ds_world, ds_spec, ds_count, ds_output, out);
    if (score_cmd->parsed()) return score(g, sq, out);
    if (calc_cmd->parsed()) return calc(g, calc_n, calc_axioms, calc_query, calc_closure, calc_nuisance, out);
    if (verify_cmd->parsed()) return verify(g, vq, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace wsd::cli
