#include "bsm/metrics.hpp"

#include <algorithm>
#include <limits>

namespace bsm {

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::kUnit:
      return "unit";
    case Rule::kFilled:
      return "filled";
    case Rule::kBlock:
      return "block";
    case Rule::kSingleton:
      return "singleton";
  }
  return "unknown";
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t p = 0;
  if (__builtin_mul_overflow(a, b, &p)) return std::numeric_limits<std::uint64_t>::max();
  return p;
}

void Metrics::add_evaluations(std::uint64_t count) { evaluations = saturating_add(evaluations, count); }

void Metrics::merge(const Metrics& other) {
  add_evaluations(other.evaluations);
  peak_live_candidates = std::max(peak_live_candidates, other.peak_live_candidates);
  stages_executed += other.stages_executed;
  for (std::size_t i = 0; i < kRuleCount; ++i) rule_firings[i] += other.rule_firings[i];
  if (other.deepest_scale_reached != 0) {
    deepest_scale_reached = deepest_scale_reached == 0
                                ? other.deepest_scale_reached
                                : std::min(deepest_scale_reached, other.deepest_scale_reached);
  }
  solutions_found += other.solutions_found;
  wall_time += other.wall_time;
}

}  // namespace bsm
