#pragma once

#include <compare>
#include <iosfwd>
#include <vector>

#include "bsm/instance.hpp"

namespace bsm {

struct Pick {
  Value value = 0;
  int multiplicity = 0;

  auto operator<=>(const Pick&) const = default;
};

/// A selected sub-multiset, stored as (value, multiplicity) ascending by value.
struct Solution {
  std::vector<Pick> picks;
  Value sum = 0;

  /// Builds from a list of values in any order; repeats become multiplicity.
  static Solution from_values(std::vector<Value> values);

  int cardinality() const;
  std::vector<Value> expanded() const;

  bool operator==(const Solution& other) const { return picks == other.picks; }
  /// Canonical order: fewer picks first, then lexicographic on picks.
  std::strong_ordering operator<=>(const Solution& other) const;
};

struct SolutionSet {
  std::vector<Solution> solutions;  // canonical order, no repeats
  bool truncated = false;

  bool empty() const { return solutions.empty(); }
  std::size_t size() const { return solutions.size(); }
  /// Sorts and drops repeated value-multisets.
  void normalize();

  bool operator==(const SolutionSet& other) const { return solutions == other.solutions; }
};

/// Number of index-level subsets realizing `s` (product of binomials over
/// the instance multiplicities). Saturates at UINT64_MAX.
std::uint64_t realizations(const Solution& s, const Instance& instance);

/// One line per solution, values ascending and space-separated.
void write_solution_line(std::ostream& out, const Solution& s);

}  // namespace bsm
