#pragma once

// Turning resolved candidates into concrete subsets, and the two
// user-facing solve modes built on the stage loop.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bsm/candidate.hpp"
#include "bsm/engine.hpp"
#include "bsm/instance.hpp"
#include "bsm/solution.hpp"

namespace bsm {

/// No open intervals and 0 inside the residual target.
bool is_exact(const Candidate& candidate);

struct Reconstruction {
  std::vector<Solution> solutions;
  bool truncated = false;
};

/// Expands a resolved candidate into subsets summing to `sum`. Fixed picks
/// are taken as-is; the remaining `sum - fixed` is distributed over the
/// block choices in lexicographic order of per-block sums, and each block
/// sum is realized by every count-subset of its run in lexicographic order.
/// Stops after `cap` solutions.
Reconstruction reconstruct(const Candidate& candidate, Value sum, std::uint64_t cap);
/// Same, at the instance target.
Reconstruction reconstruct(const Candidate& candidate, const Instance& instance, std::uint64_t cap);

/// Every exact solution, deduplicated as value multisets, canonical order.
/// Throws CappedRunError when a resource cap is hit.
SolutionSet enumerate_all(const Instance& instance, const EngineOptions& options = {});

struct OptimizeResult {
  Solution solution;
  Value deviation = 0;
};

/// Subset minimizing |sum - t|. Ties prefer sums below the target, then the
/// canonically smallest subset.
OptimizeResult optimize(const Instance& instance, const EngineOptions& options = {});

/// Solutions text format; with `deviation` a final "deviation <d>" line.
void write_solutions(std::ostream& out, const SolutionSet& set,
                     std::optional<Value> deviation = std::nullopt);

}  // namespace bsm
