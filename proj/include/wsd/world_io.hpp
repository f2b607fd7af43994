#pragma once

#include <string>
#include <vector>

#include "wsd/world.hpp"

namespace wsd {

/// World-spec documents are JSON objects
/// `{version, n, cards, prior, gen, ordered}`. Doubles are written in
/// shortest round-trip form, so write(read(write(spec))) is byte-identical.
WorldSpec parse_world_spec(const std::string& text);
std::string write_world_spec(const WorldSpec& spec);

WorldSpec read_world_spec_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Model files: `{version, permutation}` with positions into the support.
std::vector<int> parse_model_permutation(const std::string& text);
std::string write_model_permutation(const std::vector<int>& permutation);

}  // namespace wsd
