#include "bsm/reduction.hpp"

#include <algorithm>
#include <stdexcept>

#include "bsm/engine.hpp"

namespace bsm {
namespace {

void commit_all(Candidate& c, const IntervalView& iv) {
  const auto& el = iv.elements;
  for (std::size_t i = 0; i < el.size();) {
    std::size_t j = i;
    while (j < el.size() && el[j] == el[i]) ++j;
    c.commitments.push_back(Fixed{el[i], static_cast<int>(j - i)});
    i = j;
  }
  c.residual.shift(iv.element_sum);
}

void commit_block(Candidate& c, const IntervalView& iv, int count) {
  const BlockChoice block{iv.lower, iv.upper, count};
  c.commitments.push_back(block);
  c.residual.lo -= block.max_sum();
  c.residual.hi -= block.min_sum();
}

void commit_unit(Candidate& c, const IntervalView& iv, int count) {
  c.commitments.push_back(Fixed{iv.lower, count});
  c.residual.shift(count * iv.lower);
}

std::vector<ActiveEntry>::iterator find_active(Candidate& c, IntervalIndex k) {
  auto it = std::lower_bound(c.active.begin(), c.active.end(), k,
                             [](const ActiveEntry& e, IntervalIndex key) { return e.interval < key; });
  if (it == c.active.end() || it->interval != k) {
    throw std::invalid_argument("interval " + std::to_string(k) + " is not active");
  }
  return it;
}

}  // namespace

unsigned ReductionOptions::mask() const {
  return (filled ? 1U : 0U) | (block ? 2U : 0U) | (singleton ? 4U : 0U);
}

ReductionOptions ReductionOptions::from_mask(unsigned mask) {
  return {(mask & 1U) != 0, (mask & 2U) != 0, (mask & 4U) != 0};
}

bool detect_block(const IntervalView& iv) {
  if (iv.population == 0 || iv.population != iv.diameter()) return false;
  // Sorted, so a full run means elements[i] == lower + i.
  for (std::size_t i = 0; i < iv.elements.size(); ++i) {
    if (iv.elements[i] != iv.lower + static_cast<Value>(i)) return false;
  }
  return true;
}

Candidate apply_block(const Candidate& candidate, const IntervalView& interval, int count) {
  if (!detect_block(interval)) throw std::invalid_argument("interval is not a sequence block");
  if (count < 1 || count > interval.diameter()) {
    throw std::invalid_argument("block count out of range");
  }
  Candidate out = candidate;
  auto it = find_active(out, interval.index);
  if (it->coefficient != count) throw std::invalid_argument("count differs from coefficient");
  out.active.erase(it);
  commit_block(out, interval, count);
  return out;
}

Candidate apply_filled(const Candidate& candidate, const IntervalView& interval) {
  Candidate out = candidate;
  auto it = find_active(out, interval.index);
  if (it->coefficient != interval.population) {
    throw std::invalid_argument("coefficient differs from population");
  }
  out.active.erase(it);
  commit_all(out, interval);
  return out;
}

Candidate apply_singleton(const Candidate& candidate, const IntervalView& interval) {
  Candidate out = candidate;
  auto it = find_active(out, interval.index);
  if (interval.population != 1 || it->coefficient != 1) {
    throw std::invalid_argument("singleton rule needs population 1 and coefficient 1");
  }
  out.active.erase(it);
  commit_all(out, interval);
  return out;
}

Candidate resolve_unit(const Candidate& candidate, const IntervalView& interval) {
  Candidate out = candidate;
  auto it = find_active(out, interval.index);
  if (interval.diameter() != 1 || it->coefficient < 1 || it->coefficient > interval.population) {
    throw std::invalid_argument("unit rule needs scale 1 and 1 <= coefficient <= population");
  }
  const int count = it->coefficient;
  out.active.erase(it);
  commit_unit(out, interval, count);
  return out;
}

Candidate apply_rules(const Candidate& candidate, const IntervalPartition& partition,
                      const ReductionOptions& options, Metrics* metrics) {
  Candidate out;
  out.scale = candidate.scale;
  out.residual = candidate.residual;
  out.commitments = candidate.commitments;
  out.active.reserve(candidate.active.size());
  const bool unit_scale = partition.scale() == 1;
  auto fire = [metrics](Rule r) {
    if (metrics) metrics->fire(r);
  };

  for (const ActiveEntry& e : candidate.active) {
    const IntervalView iv = partition.interval(e.interval);
    if (unit_scale) {
      commit_unit(out, iv, e.coefficient);
      fire(Rule::kUnit);
    } else if (options.filled && e.coefficient == iv.population) {
      commit_all(out, iv);
      fire(Rule::kFilled);
    } else if (options.block && detect_block(iv)) {
      commit_block(out, iv, e.coefficient);
      fire(Rule::kBlock);
    } else if (options.singleton && iv.population == 1 && e.coefficient == 1) {
      commit_all(out, iv);
      fire(Rule::kSingleton);
    } else {
      out.active.push_back(e);
    }
  }
  return out;
}

std::optional<Candidate> reduce(const Candidate& candidate, const IntervalPartition& partition,
                                const ReductionOptions& options, Metrics* metrics, Value slack) {
  Candidate out = apply_rules(candidate, partition, options, metrics);
  const Envelope env = envelope(out, partition);
  if (envelope_gap(env.lo, env.hi, out.residual) > slack) return std::nullopt;
  return out;
}

}  // namespace bsm
