#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace walras {

// Markets hold at most this many items; bundles are 64-bit masks.
inline constexpr int kMaxItems = 64;

// A bundle of items, 0-indexed. Ordering is by mask value, which is the
// "subset-bitmask order" used for deterministic tie-breaking.
class ItemSet {
 public:
  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint64_t mask) : mask_(mask) {}
  ItemSet(std::initializer_list<int> items);

  static ItemSet FromItems(const std::vector<int>& items);
  // {0, 1, ..., count - 1}.
  static constexpr ItemSet FirstN(int count) {
    return ItemSet(count >= 64 ? ~std::uint64_t{0}
                               : (std::uint64_t{1} << count) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int item) const { return (mask_ >> item) & 1; }
  constexpr bool IsSubsetOf(ItemSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool Intersects(ItemSet other) const {
    return (mask_ & other.mask_) != 0;
  }
  // Highest item index plus one; 0 for the empty set.
  constexpr int bound() const { return 64 - std::countl_zero(mask_); }

  constexpr ItemSet With(int item) const {
    return ItemSet(mask_ | (std::uint64_t{1} << item));
  }
  constexpr ItemSet Without(int item) const {
    return ItemSet(mask_ & ~(std::uint64_t{1} << item));
  }

  constexpr ItemSet operator|(ItemSet o) const { return ItemSet(mask_ | o.mask_); }
  constexpr ItemSet operator&(ItemSet o) const { return ItemSet(mask_ & o.mask_); }
  // Set difference.
  constexpr ItemSet operator-(ItemSet o) const { return ItemSet(mask_ & ~o.mask_); }
  ItemSet& operator|=(ItemSet o) { mask_ |= o.mask_; return *this; }

  constexpr bool operator==(const ItemSet&) const = default;
  constexpr auto operator<=>(const ItemSet&) const = default;

  // Ascending item indices.
  std::vector<int> Items() const;

  template <typename F>
  void ForEach(F&& f) const {
    for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
      f(std::countr_zero(rest));
    }
  }

  // "{0,2,5}" with 0-based indices; for diagnostics.
  std::string DebugString() const;

 private:
  std::uint64_t mask_ = 0;
};

// Calls f(subset) for every subset of `universe` with at most `max_size`
// elements, ordered by size, then lexicographically by sorted item list.
// The empty set comes first. f returns false to stop early.
void ForEachSubsetUpTo(ItemSet universe, int max_size,
                       const std::function<bool(ItemSet)>& f);

// Calls f(subset) for every subset of `universe` with exactly `size`
// elements, in lexicographic order of sorted item lists. f returns false to
// stop early; the return value is false iff stopped.
bool ForEachSubsetOfSize(ItemSet universe, int size,
                         const std::function<bool(ItemSet)>& f);

// Number of subsets of an `n`-element universe with size <= max_size,
// saturating at UINT64_MAX.
std::uint64_t CountSubsetsUpTo(int n, int max_size);

// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t Binomial(int n, int k);

}  // namespace walras

template <>
struct std::hash<walras::ItemSet> {
  std::size_t operator()(walras::ItemSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask());
  }
};
