#include "wsd/index_set.hpp"

namespace wsd {

IndexSet::IndexSet(std::initializer_list<int> indices) {
  for (int i : indices) mask_ |= std::uint32_t{1} << i;
}

std::vector<int> IndexSet::indices() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string IndexSet::to_string(int nuisance_index) const {
  std::string out = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) out += ',';
    first = false;
    out += (i == nuisance_index) ? std::string("eta") : std::to_string(i + 1);
  }
  return out + "}";
}

}  // namespace wsd
