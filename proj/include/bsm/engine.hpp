#pragma once

// The multi-scale stage loop. Candidates start as one coefficient per subset
// size on the single interval [1, R]; every stage halves the interval scale,
// splits each coefficient across the two child intervals, and keeps the
// combinations that pass the population and target-envelope tests.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bsm/candidate.hpp"
#include "bsm/instance.hpp"
#include "bsm/metrics.hpp"
#include "bsm/partition.hpp"
#include "bsm/reduction.hpp"
#include "bsm/solution.hpp"

namespace bsm {

enum class Mode { kDecision, kEnumerate, kOptimize };

struct EngineOptions {
  /// Run one stage loop per subset size instead of a shared one.
  bool per_size = false;
  ReductionOptions rules;
  std::uint64_t max_live_candidates = std::uint64_t{1} << 26;
  std::uint64_t max_evaluations = std::uint64_t{1} << 26;
  /// Cap on reported solutions; in optimize mode, on reconstructions
  /// examined for tie-breaking.
  std::uint64_t max_solutions = std::uint64_t{1} << 20;
  /// Use R > max element instead of R >= max element.
  bool range_strictly_greater = false;
  /// Worker threads for stage expansion. Results and counters do not depend
  /// on this.
  unsigned threads = 1;
  /// Called once per stage with the live candidates (canonical order) and
  /// the partition they were tested against.
  std::function<void(const std::vector<Candidate>&, const IntervalPartition&)> observer;
};

struct EngineOutcome {
  SolutionSet solutions;
  /// Optimize mode: |sum - t| of the reported solution.
  std::optional<Value> deviation;
  /// False when a capped optimize run reports its best-so-far.
  bool optimal = true;
  Metrics metrics;
};

/// A resource cap was hit. Carries whatever was found up to that point.
class CappedRunError : public std::runtime_error {
 public:
  CappedRunError(const std::string& what, EngineOutcome partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const EngineOutcome& partial() const noexcept { return partial_; }

 private:
  EngineOutcome partial_;
};

/// Interval-arithmetic hull of what the active intervals can contribute:
/// [sum of coefficient * lower, sum of coefficient * upper].
struct Envelope {
  Value lo = 0;
  Value hi = 0;
};

Envelope envelope(const Candidate& candidate, const IntervalPartition& partition);

/// Distance between the envelope and the residual target (0 when they
/// overlap).
Value envelope_gap(Value env_lo, Value env_hi, const ResidualTarget& residual);

bool population_test(const Candidate& candidate, const IntervalPartition& partition);
bool target_bound_test(const Candidate& candidate, const IntervalPartition& partition);

/// One candidate per subset size 1..n on [1, range] with residual [t, t],
/// kept if it passes both tests and survives reduction.
std::vector<Candidate> seed_candidates(const Instance& instance, Value range,
                                       const ReductionOptions& rules = {},
                                       Metrics* metrics = nullptr);

/// Splits every active coefficient C into (C1, C - C1) over the two child
/// intervals, C1 = 0..C, and returns the cross-product members passing both
/// tests at the child scale, in lexicographic order of the C1 choices.
/// `slack` relaxes the envelope test to "within slack of the residual".
std::vector<Candidate> split_candidate(const Candidate& candidate,
                                       const IntervalPartition& parent_partition,
                                       const IntervalPartition& child_partition,
                                       Metrics* metrics = nullptr, Value slack = 0);

EngineOutcome run_stages(const Instance& instance, Mode mode, const EngineOptions& options = {});

}  // namespace bsm
