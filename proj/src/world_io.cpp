#include "wsd/world_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wsd/errors.hpp"

namespace wsd {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw Error(Errc::ParseError, std::string("missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("field '") + name + "': " + e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace

WorldSpec parse_world_spec(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw Error(Errc::ParseError, "world spec must be a JSON object");
  WorldSpec spec;
  spec.version = field<int>(doc, "version");
  if (spec.version != 1) throw Error(Errc::ParseError, "unsupported version " + std::to_string(spec.version));
  spec.n = field<int>(doc, "n");
  spec.cards = field<std::vector<int>>(doc, "cards");
  spec.prior = field<std::vector<double>>(doc, "prior");
  spec.gen = field<std::vector<std::int64_t>>(doc, "gen");
  spec.ordered = field<std::vector<bool>>(doc, "ordered");
  return spec;
}

std::string write_world_spec(const WorldSpec& spec) {
  json doc;
  doc["version"] = spec.version;
  doc["n"] = spec.n;
  doc["cards"] = spec.cards;
  doc["prior"] = spec.prior;
  doc["gen"] = spec.gen;
  doc["ordered"] = spec.ordered;
  return doc.dump() + "\n";
}

WorldSpec read_world_spec_file(const std::string& path) { return parse_world_spec(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

std::vector<int> parse_model_permutation(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw Error(Errc::ParseError, "model file must be a JSON object");
  if (field<int>(doc, "version") != 1) throw Error(Errc::ParseError, "unsupported model version");
  return field<std::vector<int>>(doc, "permutation");
}

std::string write_model_permutation(const std::vector<int>& permutation) {
  json doc;
  doc["version"] = 1;
  doc["permutation"] = permutation;
  return doc.dump() + "\n";
}

}  // namespace wsd
