#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <string_view>

#include "bsm/instance.hpp"

namespace bsm {

enum class Rule : std::size_t { kUnit = 0, kFilled, kBlock, kSingleton };
inline constexpr std::size_t kRuleCount = 4;

std::string_view rule_name(Rule rule);

using RuleFirings = std::array<std::uint64_t, kRuleCount>;

/// Engine instrumentation. Every counter is a pure function of the instance
/// and options; only wall_time depends on the machine.
struct Metrics {
  /// One per coefficient combination put through the population and
  /// target-envelope tests. Saturates at UINT64_MAX.
  std::uint64_t evaluations = 0;
  std::uint64_t peak_live_candidates = 0;
  std::uint64_t stages_executed = 0;
  RuleFirings rule_firings{};
  /// Finest scale at which any candidate was alive; 0 before the first stage.
  Value deepest_scale_reached = 0;
  std::uint64_t solutions_found = 0;
  std::chrono::nanoseconds wall_time{0};

  std::uint64_t firings(Rule r) const { return rule_firings[static_cast<std::size_t>(r)]; }
  void fire(Rule r) { ++rule_firings[static_cast<std::size_t>(r)]; }
  void add_evaluations(std::uint64_t count);

  /// Accumulates another run (per-size schedules): counters add, peaks and
  /// depths combine.
  void merge(const Metrics& other);
};

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace bsm
