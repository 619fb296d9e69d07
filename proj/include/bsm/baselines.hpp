#pragma once

// Reference solvers: exhaustive enumeration (the correctness oracle) and
// Horowitz-Sahni meet-in-the-middle (the O(2^{n/2}) comparator).

#include <cstdint>
#include <stdexcept>

#include "bsm/instance.hpp"
#include "bsm/solution.hpp"

namespace bsm {

inline constexpr std::size_t kBruteForceMaxN = 30;
inline constexpr std::size_t kMitmMaxN = 48;

/// The instance is too large for the requested baseline.
class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All nonempty index subsets summing to t, as value multisets.
SolutionSet brute_force_enumerate(const Instance& instance);

struct ClosestResult {
  Solution solution;
  Value deviation = 0;
};

/// Nonempty subset minimizing |sum - t|; ties prefer sums below t, then the
/// canonically smallest subset.
ClosestResult brute_force_closest(const Instance& instance);

struct MitmStats {
  std::uint64_t left_entries = 0;   // 2^ceil(n/2)
  std::uint64_t right_entries = 0;  // 2^floor(n/2)
};

/// First ceil(n/2) elements form the left half. Both halves are enumerated
/// with their subset masks; the right table is sorted and every left sum is
/// matched against it by binary search.
SolutionSet mitm_enumerate(const Instance& instance, MitmStats* stats = nullptr);

}  // namespace bsm
