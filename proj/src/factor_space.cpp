#include "wsd/factor_space.hpp"

#include <limits>

#include "wsd/errors.hpp"

namespace wsd {

FactorSpace::FactorSpace(std::vector<int> cards) : cards_(std::move(cards)) {
  if (cards_.empty() || cards_.size() > 16) {
    throw Error(Errc::ArityMismatch, "factor count must be in [1, 16]");
  }
  strides_.assign(cards_.size(), 1);
  for (int i = arity() - 1; i >= 0; --i) {
    if (cards_[i] < 1) throw Error(Errc::ArityMismatch, "factor cardinality must be positive");
    strides_[i] = size_;
    if (size_ > std::numeric_limits<std::int32_t>::max() / cards_[i]) {
      throw Error(Errc::SupportTooLarge, "factor space exceeds 2^31 tuples");
    }
    size_ *= cards_[i];
  }
}

std::int64_t FactorSpace::encode(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity()) throw Error(Errc::ArityMismatch, "tuple arity");
  std::int64_t index = 0;
  for (int i = 0; i < arity(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= cards_[i]) throw Error(Errc::ArityMismatch, "tuple value out of range");
    index += tuple[i] * strides_[i];
  }
  return index;
}

Tuple FactorSpace::decode(std::int64_t index) const {
  Tuple out(cards_.size());
  for (int i = 0; i < arity(); ++i) out[i] = value(index, i);
  return out;
}

std::int64_t FactorSpace::project(std::int64_t index, IndexSet factors) const {
  std::int64_t sub = 0;
  for (int i : factors.indices()) sub = sub * cards_[i] + value(index, i);
  return sub;
}

FactorSpace FactorSpace::subspace(IndexSet factors) const {
  std::vector<int> cards;
  for (int i : factors.indices()) cards.push_back(cards_[i]);
  if (cards.empty()) cards.push_back(1);
  return FactorSpace(std::move(cards));
}

int FactorSpace::hamming(std::int64_t a, std::int64_t b, IndexSet factors) const {
  int d = 0;
  for (int i : factors.indices()) d += value(a, i) != value(b, i);
  return d;
}

}  // namespace wsd
