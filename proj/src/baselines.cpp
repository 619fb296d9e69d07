#include "bsm/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>

namespace bsm {
namespace {

void require_size(const Instance& instance, std::size_t limit, const char* name) {
  if (instance.size() > limit) {
    std::string msg = std::string(name) + " supports n <= " + std::to_string(limit) + ", got n = " +
                      std::to_string(instance.size());
    if (limit == kBruteForceMaxN) msg += "; use the mitm baseline instead";
    throw SizeLimitError(msg);
  }
}

Solution from_mask(const std::vector<Value>& elements, std::uint64_t mask, std::size_t offset = 0) {
  std::vector<Value> values;
  while (mask) {
    values.push_back(elements[offset + std::countr_zero(mask)]);
    mask &= mask - 1;
  }
  return Solution::from_values(std::move(values));
}

// Visits every nonempty subset of `elements` in Gray-code order, one
// element toggled per step.
template <typename Visit>
void for_each_subset(const std::vector<Value>& elements, Visit&& visit) {
  const std::size_t n = elements.size();
  std::uint64_t mask = 0;
  Value sum = 0;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    const int bit = std::countr_zero(i);
    mask ^= std::uint64_t{1} << bit;
    sum += (mask >> bit & 1U) ? elements[bit] : -elements[bit];
    visit(mask, sum);
  }
}

struct HalfEntry {
  Value sum;
  std::uint64_t mask;
};

std::vector<HalfEntry> half_sums(const std::vector<Value>& elements, std::size_t begin,
                                 std::size_t end) {
  const std::size_t k = end - begin;
  std::vector<HalfEntry> table(std::size_t{1} << k);
  table[0] = {0, 0};
  // Each mask extends the one without its top bit.
  for (std::uint64_t mask = 1; mask < table.size(); ++mask) {
    const int top = std::bit_width(mask) - 1;
    const std::uint64_t rest = mask ^ (std::uint64_t{1} << top);
    table[mask] = {table[rest].sum + elements[begin + top], mask};
  }
  return table;
}

}  // namespace

SolutionSet brute_force_enumerate(const Instance& instance) {
  require_size(instance, kBruteForceMaxN, "brute force");
  const auto& el = instance.elements();
  std::set<Solution> found;
  for_each_subset(el, [&](std::uint64_t mask, Value sum) {
    if (sum == instance.target()) found.insert(from_mask(el, mask));
  });
  return SolutionSet{{found.begin(), found.end()}, false};
}

ClosestResult brute_force_closest(const Instance& instance) {
  require_size(instance, kBruteForceMaxN, "brute force");
  const auto& el = instance.elements();
  const Value t = instance.target();
  std::optional<ClosestResult> best;
  for_each_subset(el, [&](std::uint64_t mask, Value sum) {
    const Value dev = std::abs(sum - t);
    if (best) {
      if (dev > best->deviation) return;
      if (dev == best->deviation) {
        const bool below = sum < t;
        const bool best_below = best->solution.sum < t;
        if (best_below && !below) return;
        if (below == best_below) {
          Solution s = from_mask(el, mask);
          if (s < best->solution) best->solution = std::move(s);
          return;
        }
      }
    }
    best = ClosestResult{from_mask(el, mask), dev};
  });
  return *best;
}

SolutionSet mitm_enumerate(const Instance& instance, MitmStats* stats) {
  require_size(instance, kMitmMaxN, "meet-in-the-middle");
  const auto& el = instance.elements();
  const std::size_t n = el.size();
  const std::size_t split = (n + 1) / 2;
  const std::vector<HalfEntry> left = half_sums(el, 0, split);
  std::vector<HalfEntry> right = half_sums(el, split, n);
  if (stats) *stats = {left.size(), right.size()};

  std::sort(right.begin(), right.end(), [](const HalfEntry& a, const HalfEntry& b) {
    return a.sum < b.sum || (a.sum == b.sum && a.mask < b.mask);
  });

  std::set<Solution> found;
  const Value t = instance.target();
  for (const HalfEntry& l : left) {
    const Value need = t - l.sum;
    auto lo = std::lower_bound(right.begin(), right.end(), need,
                               [](const HalfEntry& e, Value v) { return e.sum < v; });
    for (auto it = lo; it != right.end() && it->sum == need; ++it) {
      if (l.mask == 0 && it->mask == 0) continue;
      std::vector<Value> values = from_mask(el, l.mask).expanded();
      const std::vector<Value> rv = from_mask(el, it->mask, split).expanded();
      values.insert(values.end(), rv.begin(), rv.end());
      found.insert(Solution::from_values(std::move(values)));
    }
  }
  return SolutionSet{{found.begin(), found.end()}, false};
}

}  // namespace bsm
