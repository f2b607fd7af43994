#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wsd/index_set.hpp"

namespace wsd {

using Tuple = std::vector<int>;

/// Finite product space of factor values, enumerated row-major (the last
/// factor varies fastest). A tuple is addressed by its flat index.
class FactorSpace {
 public:
  FactorSpace() = default;
  explicit FactorSpace(std::vector<int> cards);

  int arity() const { return static_cast<int>(cards_.size()); }
  int card(int factor) const { return cards_[factor]; }
  const std::vector<int>& cards() const { return cards_; }
  std::int64_t size() const { return size_; }

  std::int64_t encode(std::span<const int> tuple) const;
  Tuple decode(std::int64_t index) const;
  int value(std::int64_t index, int factor) const {
    return static_cast<int>((index / strides_[factor]) % cards_[factor]);
  }

  /// Flat index of the sub-tuple on `factors` within `subspace(factors)`.
  std::int64_t project(std::int64_t index, IndexSet factors) const;
  FactorSpace subspace(IndexSet factors) const;

  /// Number of coordinates in `factors` on which two tuples differ.
  int hamming(std::int64_t a, std::int64_t b, IndexSet factors) const;

  friend bool operator==(const FactorSpace& a, const FactorSpace& b) { return a.cards_ == b.cards_; }

 private:
  std::vector<int> cards_;
  std::vector<std::int64_t> strides_;
  std::int64_t size_ = 1;
};

}  // namespace wsd
