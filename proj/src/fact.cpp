#include "wsd/fact.hpp"

#include <cctype>

#include "wsd/errors.hpp"

namespace wsd {

namespace {

class FactParser {
 public:
  FactParser(const std::string& text, const Universe& universe) : text_(text), universe_(universe) {}

  std::vector<WrittenFact> parse() {
    std::vector<WrittenFact> out;
    skip_space();
    if (at_end()) return out;
    out.push_back(atom());
    skip_space();
    while (!at_end()) {
      expect('&');
      out.push_back(atom());
      skip_space();
    }
    return out;
  }

 private:
  WrittenFact atom() {
    skip_space();
    if (at_end()) fail("expected a fact");
    WrittenFact fact{};
    switch (text_[pos_]) {
      case 'C': fact.kind = FactKind::C; break;
      case 'R': fact.kind = FactKind::R; break;
      case 'D': fact.kind = FactKind::D; break;
      default: fail("expected C, R or D");
    }
    ++pos_;
    if (text_.compare(pos_, 3, "eta") == 0) {
      if (!universe_.nuisance) fail("eta facts require the nuisance extension");
      fact.eta = true;
      pos_ += 3;
    }
    expect('{');
    skip_space();
    if (peek() != '}') {
      fact.set = fact.set | element();
      skip_space();
      while (peek() == ',') {
        ++pos_;
        fact.set = fact.set | element();
        skip_space();
      }
    }
    expect('}');
    return fact;
  }

  IndexSet element() {
    skip_space();
    if (text_.compare(pos_, 3, "eta") == 0) {
      if (!universe_.nuisance) fail("'eta' requires the nuisance extension");
      pos_ += 3;
      return universe_.eta();
    }
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a factor index");
    const int index = std::stoi(text_.substr(start, pos_ - start));
    if (index < 1 || index > universe_.factors) {
      fail("factor index " + std::to_string(index) + " outside 1.." + std::to_string(universe_.factors));
    }
    return IndexSet::singleton(index - 1);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(Errc::ParseError, message + " at column " + std::to_string(pos_ + 1) + " in \"" + text_ + "\"");
  }

  const std::string& text_;
  const Universe& universe_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<WrittenFact> parse_facts(const std::string& text, const Universe& universe) {
  return FactParser(text, universe).parse();
}

std::vector<Fact> expand(const WrittenFact& fact, const Universe& universe) {
  if (!fact.eta) return {Fact{fact.kind, fact.set}};
  const IndexSet with_eta = fact.set | universe.eta();
  switch (fact.kind) {
    case FactKind::C: return {Fact{FactKind::C, fact.set}};
    case FactKind::R: return {Fact{FactKind::R, with_eta}};
    case FactKind::D: return {Fact{FactKind::C, fact.set}, Fact{FactKind::R, with_eta}};
  }
  return {};
}

std::vector<Fact> expand(std::span<const WrittenFact> facts, const Universe& universe) {
  std::vector<Fact> out;
  for (const auto& f : facts) {
    auto part = expand(f, universe);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

char kind_letter(FactKind kind) {
  switch (kind) {
    case FactKind::C: return 'C';
    case FactKind::R: return 'R';
    case FactKind::D: return 'D';
  }
  return '?';
}

std::string to_string(const Fact& fact, const Universe& universe) {
  const int eta = universe.nuisance_index();
  if (fact.kind == FactKind::R && eta >= 0 && fact.set.contains(eta)) {
    return "Reta" + (fact.set - universe.eta()).to_string();
  }
  return std::string(1, kind_letter(fact.kind)) + fact.set.to_string(eta);
}

std::string to_string(std::span<const Fact> conjunction, const Universe& universe) {
  std::string out;
  for (std::size_t i = 0; i < conjunction.size(); ++i) {
    if (i) out += " & ";
    out += to_string(conjunction[i], universe);
  }
  return out;
}

}  // namespace wsd
