#include "walras/item_set.h"

#include <limits>
#include <numeric>

namespace walras {

ItemSet::ItemSet(std::initializer_list<int> items) {
  for (int item : items) mask_ |= std::uint64_t{1} << item;
}

ItemSet ItemSet::FromItems(const std::vector<int>& items) {
  ItemSet result;
  for (int item : items) result = result.With(item);
  return result;
}

std::vector<int> ItemSet::Items() const {
  std::vector<int> items;
  items.reserve(size());
  ForEach([&](int item) { items.push_back(item); });
  return items;
}

std::string ItemSet::DebugString() const {
  std::string out = "{";
  bool first = true;
  ForEach([&](int item) {
    if (!first) out += ',';
    out += std::to_string(item);
    first = false;
  });
  return out + "}";
}

bool ForEachSubsetOfSize(ItemSet universe, int size,
                         const std::function<bool(ItemSet)>& f) {
  const std::vector<int> items = universe.Items();
  const int n = static_cast<int>(items.size());
  if (size < 0 || size > n) return true;
  std::vector<int> pick(size);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    ItemSet subset;
    for (int idx : pick) subset = subset.With(items[idx]);
    if (!f(subset)) return false;
    int pos = size - 1;
    while (pos >= 0 && pick[pos] == n - size + pos) --pos;
    if (pos < 0) return true;
    ++pick[pos];
    for (int j = pos + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

void ForEachSubsetUpTo(ItemSet universe, int max_size,
                       const std::function<bool(ItemSet)>& f) {
  for (int size = 0; size <= max_size && size <= universe.size(); ++size) {
    if (!ForEachSubsetOfSize(universe, size, f)) return;
  }
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t CountSubsetsUpTo(int n, int max_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (int k = 0; k <= max_size && k <= n; ++k) {
    const std::uint64_t c = Binomial(n, k);
    if (c > kMax - total) return kMax;
    total += c;
  }
  return total;
}

}  // namespace walras
