#pragma once

// Early-termination rules. Each one closes an active interval whose
// contribution is already known (a constant, or a contiguous range of sums)
// and folds it into the residual target.

#include <optional>

#include "bsm/candidate.hpp"
#include "bsm/metrics.hpp"
#include "bsm/partition.hpp"

namespace bsm {

/// Unit-scale resolution is not optional: the stage loop relies on it to
/// finish at scale 1.
struct ReductionOptions {
  bool filled = true;
  bool block = true;
  bool singleton = true;

  /// bit 0 filled, bit 1 block, bit 2 singleton.
  unsigned mask() const;
  static ReductionOptions from_mask(unsigned mask);
  static ReductionOptions none() { return {false, false, false}; }

  bool operator==(const ReductionOptions&) const = default;
};

/// Population equals diameter and every integer of the interval occurs
/// exactly once.
bool detect_block(const IntervalView& interval);

// The single-rule operations below require `interval` to be active in
// `candidate` and throw std::invalid_argument when their preconditions fail.

Candidate apply_block(const Candidate& candidate, const IntervalView& interval, int count);
Candidate apply_filled(const Candidate& candidate, const IntervalView& interval);
Candidate apply_singleton(const Candidate& candidate, const IntervalView& interval);
Candidate resolve_unit(const Candidate& candidate, const IntervalView& interval);

/// Runs the rules over every active interval (unit, then filled, block,
/// singleton) without re-testing the result.
Candidate apply_rules(const Candidate& candidate, const IntervalPartition& partition,
                      const ReductionOptions& options, Metrics* metrics = nullptr);

/// apply_rules followed by the target-envelope test; empty when the reduced
/// candidate can no longer come within `slack` of its residual target
/// (slack 0 is the exact-sum test).
std::optional<Candidate> reduce(const Candidate& candidate, const IntervalPartition& partition,
                                const ReductionOptions& options, Metrics* metrics = nullptr,
                                Value slack = 0);

}  // namespace bsm
