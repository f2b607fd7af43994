#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace wsd {

/// A subset of factor indices, stored as a bitmask.
///
/// Indices are zero-based in the C++ API; the textual form `{1,2}` is
/// one-based. When a nuisance variable is enabled it occupies index `n`
/// (one past the last ordinary factor) and prints as `eta`.
class IndexSet {
 public:
  static constexpr int kMaxIndices = 32;

  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint32_t mask) : mask_(mask) {}
  IndexSet(std::initializer_list<int> indices);

  static constexpr IndexSet singleton(int i) { return IndexSet(std::uint32_t{1} << i); }
  static constexpr IndexSet full(int universe) {
    return IndexSet(universe >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << universe) - 1);
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int i) const { return (mask_ >> i) & 1u; }
  constexpr bool subset_of(IndexSet other) const { return (mask_ & ~other.mask_) == 0; }
  /// Largest index + 1, or 0 for the empty set.
  constexpr int span() const { return 32 - std::countl_zero(mask_); }

  constexpr IndexSet complement(int universe) const { return IndexSet(~mask_ & full(universe).mask_); }

  std::vector<int> indices() const;

  /// `{1,3}` (one-based); `nuisance_index` prints as `eta` when >= 0.
  std::string to_string(int nuisance_index = -1) const;

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.mask_ | b.mask_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.mask_ & b.mask_); }
  friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
  friend constexpr auto operator<=>(IndexSet a, IndexSet b) { return a.mask_ <=> b.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

}  // namespace wsd
