#pragma once

// A candidate is one surviving coefficient combination: how many elements to
// take from each still-open interval, plus what has already been decided.

#include <compare>
#include <variant>
#include <vector>

#include "bsm/instance.hpp"
#include "bsm/partition.hpp"

namespace bsm {

struct ActiveEntry {
  IntervalIndex interval = 0;
  int coefficient = 0;

  auto operator<=>(const ActiveEntry&) const = default;
};

/// Closed interval of sums the open intervals must still contribute.
/// Starts as [t, t]; fixed picks shift it, block choices widen it.
struct ResidualTarget {
  Value lo = 0;
  Value hi = 0;

  bool contains(Value v) const { return lo <= v && v <= hi; }
  void shift(Value by) {
    lo -= by;
    hi -= by;
  }

  auto operator<=>(const ResidualTarget&) const = default;
};

/// `multiplicity` copies of `value` are taken.
struct Fixed {
  Value value = 0;
  int multiplicity = 0;

  auto operator<=>(const Fixed&) const = default;
};

/// `count` distinct values are taken from the run [run_lo, run_hi], every
/// integer of which occurs exactly once in the instance. Which ones is left
/// open: any sum in [min_sum(), max_sum()] is reachable.
struct BlockChoice {
  Value run_lo = 0;
  Value run_hi = 0;
  int count = 0;

  Value min_sum() const { return count * run_lo + Value{count} * (count - 1) / 2; }
  Value max_sum() const { return count * run_hi - Value{count} * (count - 1) / 2; }

  auto operator<=>(const BlockChoice&) const = default;
};

using Commitment = std::variant<Fixed, BlockChoice>;

struct Candidate {
  Value scale = 0;
  std::vector<ActiveEntry> active;  // ascending by interval, coefficients >= 1
  ResidualTarget residual;
  std::vector<Commitment> commitments;

  bool resolved() const { return active.empty(); }

  /// Active coefficients plus committed picks; constant along a lineage.
  int subset_size() const;

  bool operator==(const Candidate&) const = default;
};

/// Order used to process a stage: by active map, then residual, then
/// commitments.
bool canonical_less(const Candidate& a, const Candidate& b);

}  // namespace bsm
