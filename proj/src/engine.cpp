#include "bsm/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <span>
#include <thread>

#include "bsm/readout.hpp"

namespace bsm {

Envelope envelope(const Candidate& candidate, const IntervalPartition& partition) {
  Envelope env;
  for (const auto& e : candidate.active) {
    env.lo += e.coefficient * partition.lower(e.interval);
    env.hi += e.coefficient * partition.upper(e.interval);
  }
  return env;
}

Value envelope_gap(Value env_lo, Value env_hi, const ResidualTarget& residual) {
  return std::max({Value{0}, env_lo - residual.hi, residual.lo - env_hi});
}

bool population_test(const Candidate& candidate, const IntervalPartition& partition) {
  return std::all_of(candidate.active.begin(), candidate.active.end(), [&](const ActiveEntry& e) {
    return partition.population(e.interval) >= e.coefficient;
  });
}

bool target_bound_test(const Candidate& candidate, const IntervalPartition& partition) {
  const Envelope env = envelope(candidate, partition);
  return envelope_gap(env.lo, env.hi, candidate.residual) == 0;
}

namespace {

struct SplitEntry {
  IntervalIndex left = 0;  // right child is left + 1
  int coefficient = 0;
  int min_left = 0;  // feasible range of the left share under the population test
  int max_left = 0;
  Value left_lo = 0, left_hi = 0, right_lo = 0, right_hi = 0;

  Value env_lo(int c1) const { return c1 * left_lo + (coefficient - c1) * right_lo; }
  Value env_hi(int c1) const { return c1 * left_hi + (coefficient - c1) * right_hi; }
};

// Enumerates the cross product of per-interval splits. The population test
// is separable, so only population-feasible shares are visited; subtrees
// whose envelope hull already misses the residual are skipped whole. Every
// combination of the full (C+1)-per-interval product still counts as one
// evaluation.
template <typename Sink>
void split_into(const Candidate& candidate, const IntervalPartition& child, Value slack,
                Metrics* metrics, Sink&& sink) {
  std::uint64_t combinations = 1;
  for (const auto& e : candidate.active) {
    combinations = saturating_mul(combinations, static_cast<std::uint64_t>(e.coefficient) + 1);
  }
  if (metrics) metrics->add_evaluations(combinations);

  std::vector<SplitEntry> entries;
  entries.reserve(candidate.active.size());
  for (const auto& e : candidate.active) {
    SplitEntry s;
    s.left = 2 * e.interval - 1;
    s.coefficient = e.coefficient;
    const int left_pop = child.population(s.left);
    const int right_pop = child.population(s.left + 1);
    s.min_left = std::max(0, e.coefficient - right_pop);
    s.max_left = std::min(e.coefficient, left_pop);
    if (s.min_left > s.max_left) return;
    s.left_lo = child.lower(s.left);
    s.left_hi = child.upper(s.left);
    s.right_lo = child.lower(s.left + 1);
    s.right_hi = child.upper(s.left + 1);
    entries.push_back(s);
  }

  // Both envelope ends decrease as the left share grows, so the loosest hull
  // of entries [i, end) takes max_left for the low end and min_left for the
  // high end.
  const std::size_t m = entries.size();
  std::vector<Value> tail_lo(m + 1, 0), tail_hi(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) {
    tail_lo[i] = tail_lo[i + 1] + entries[i].env_lo(entries[i].max_left);
    tail_hi[i] = tail_hi[i + 1] + entries[i].env_hi(entries[i].min_left);
  }

  std::vector<int> shares(m, 0);
  const ResidualTarget& residual = candidate.residual;
  auto visit = [&](auto& self, std::size_t i, Value lo, Value hi) -> void {
    if (i == m) {
      Candidate c;
      c.scale = child.scale();
      c.residual = residual;
      c.commitments = candidate.commitments;
      c.active.reserve(2 * m);
      for (std::size_t k = 0; k < m; ++k) {
        const int c1 = shares[k];
        const int c2 = entries[k].coefficient - c1;
        if (c1 > 0) c.active.push_back({entries[k].left, c1});
        if (c2 > 0) c.active.push_back({entries[k].left + 1, c2});
      }
      sink(std::move(c));
      return;
    }
    const SplitEntry& e = entries[i];
    for (int c1 = e.min_left; c1 <= e.max_left; ++c1) {
      const Value nlo = lo + e.env_lo(c1);
      const Value nhi = hi + e.env_hi(c1);
      if (envelope_gap(nlo + tail_lo[i + 1], nhi + tail_hi[i + 1], residual) > slack) continue;
      shares[i] = c1;
      self(self, i + 1, nlo, nhi);
    }
  };
  visit(visit, 0, 0, 0);
}

// Seeds one candidate per subset size in [first_size, last_size] and keeps
// those within `slack` of the target after reduction.
void seed_into(const Instance& instance, const IntervalPartition& partition, int first_size,
               int last_size, const ReductionOptions& rules, Metrics* metrics, Value slack,
               std::vector<Candidate>& out) {
  for (int size = first_size; size <= last_size; ++size) {
    Candidate seed;
    seed.scale = partition.scale();
    seed.active = {{1, size}};
    seed.residual = {instance.target(), instance.target()};
    if (metrics) metrics->add_evaluations(1);
    if (!population_test(seed, partition)) continue;
    const Envelope env = envelope(seed, partition);
    if (envelope_gap(env.lo, env.hi, seed.residual) > slack) continue;
    if (auto reduced = reduce(seed, partition, rules, metrics, slack)) {
      out.push_back(std::move(*reduced));
    }
  }
}

struct StageChunk {
  std::vector<Candidate> next;
  Metrics metrics;
  bool over_cap = false;
};

StageChunk expand_chunk(std::span<const Candidate> live, const IntervalPartition& child,
                        const ReductionOptions& rules, Value slack, std::uint64_t live_cap) {
  StageChunk out;
  for (const Candidate& parent : live) {
    split_into(parent, child, slack, &out.metrics, [&](Candidate&& c) {
      if (auto reduced = reduce(c, child, rules, &out.metrics, slack)) {
        out.next.push_back(std::move(*reduced));
      }
    });
    if (out.next.size() > live_cap) {
      out.over_cap = true;
      break;
    }
  }
  return out;
}

class StageRunner {
 public:
  StageRunner(const Instance& instance, Mode mode, const EngineOptions& options)
      : instance_(instance),
        mode_(mode),
        options_(options),
        range_(compute_range(instance, options.range_strictly_greater)) {
    if (mode_ == Mode::kOptimize) {
      best_ = std::abs(instance.elements().front() - instance.target());
      for (Value e : instance.elements()) best_ = std::min(best_, std::abs(e - instance.target()));
    }
  }

  bool halted() const { return halted_; }

  void run(int first_size, int last_size) {
    IntervalPartition partition = build_partition(range_, range_, instance_.elements());
    std::vector<Candidate> live;
    seed_into(instance_, partition, first_size, last_size, options_.rules, &metrics_, slack(), live);
    check_caps(live.size());

    while (!live.empty()) {
      std::sort(live.begin(), live.end(), canonical_less);
      const Value scale = partition.scale();
      ++metrics_.stages_executed;
      metrics_.deepest_scale_reached =
          metrics_.deepest_scale_reached == 0 ? scale : std::min(metrics_.deepest_scale_reached, scale);
      metrics_.peak_live_candidates =
          std::max<std::uint64_t>(metrics_.peak_live_candidates, live.size());
      if (options_.observer) options_.observer(live, partition);

      // Resolved candidates sort first (empty active map).
      auto open = std::find_if(live.begin(), live.end(),
                               [](const Candidate& c) { return !c.resolved(); });
      for (auto it = live.begin(); it != open; ++it) {
        on_resolved(*it);
        if (halted_) return;
      }
      if (open == live.end()) break;

      // Unit-scale reduction resolves everything, so open candidates imply
      // scale > 1 here.
      IntervalPartition child = build_partition(range_, scale / 2, instance_.elements());
      live = expand(std::span<const Candidate>(&*open, static_cast<std::size_t>(live.end() - open)),
                    child);
      partition = std::move(child);
    }
  }

  EngineOutcome finish() {
    EngineOutcome out = snapshot();
    if (mode_ == Mode::kOptimize && out.solutions.empty()) {
      throw std::logic_error("optimize run ended without an incumbent");
    }
    return out;
  }

 private:
  Value slack() const { return mode_ == Mode::kOptimize ? best_ : 0; }

  std::vector<Candidate> expand(std::span<const Candidate> open, const IntervalPartition& child) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1U, options_.threads), open.size() / 256 + 1);
    std::vector<StageChunk> chunks(workers);
    if (workers == 1) {
      chunks[0] = expand_chunk(open, child, options_.rules, slack(), options_.max_live_candidates);
    } else {
      const std::size_t per = (open.size() + workers - 1) / workers;
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(open.size(), w * per);
        const std::size_t end = std::min(open.size(), begin + per);
        pool.emplace_back([&, w, begin, end] {
          chunks[w] = expand_chunk(open.subspan(begin, end - begin), child, options_.rules,
                                   slack(), options_.max_live_candidates);
        });
      }
      for (auto& t : pool) t.join();
    }

    std::vector<Candidate> next;
    std::size_t total = 0;
    bool over_cap = false;
    for (const auto& c : chunks) {
      total += c.next.size();
      over_cap = over_cap || c.over_cap;
    }
    next.reserve(total);
    for (auto& c : chunks) {
      metrics_.merge(c.metrics);
      std::move(c.next.begin(), c.next.end(), std::back_inserter(next));
    }
    check_caps(over_cap ? options_.max_live_candidates + 1 : next.size());
    return next;
  }

  void check_caps(std::size_t live) {
    if (live > options_.max_live_candidates) {
      throw CappedRunError("live candidate cap exceeded (" +
                               std::to_string(options_.max_live_candidates) + ")",
                           capped_snapshot());
    }
    if (metrics_.evaluations > options_.max_evaluations) {
      throw CappedRunError(
          "evaluation cap exceeded (" + std::to_string(options_.max_evaluations) + ")",
          capped_snapshot());
    }
  }

  void on_resolved(const Candidate& c) {
    if (mode_ == Mode::kOptimize) {
      const Value dev = envelope_gap(0, 0, c.residual);
      if (dev < best_) {
        best_ = dev;
        incumbents_.clear();
      }
      if (dev <= best_) incumbents_.push_back(c);
      return;
    }
    if (!is_exact(c)) return;
    const std::uint64_t room =
        mode_ == Mode::kDecision ? 1 : options_.max_solutions - solutions_.solutions.size();
    Reconstruction r = reconstruct(c, instance_, room);
    for (auto& s : r.solutions) solutions_.solutions.push_back(std::move(s));
    if (mode_ == Mode::kDecision && !solutions_.empty()) {
      halted_ = true;
    } else if (r.truncated || solutions_.solutions.size() >= options_.max_solutions) {
      solutions_.truncated = true;
      halted_ = true;
    }
  }

  // Best-deviation readout: prefer sums below the target, then the
  // canonically smallest subset among every reconstruction at that sum.
  std::optional<Solution> best_solution() const {
    if (incumbents_.empty()) return std::nullopt;
    const Value t = instance_.target();
    for (Value sum : {t - best_, t + best_}) {
      std::optional<Solution> pick;
      for (const Candidate& c : incumbents_) {
        if (!c.residual.contains(t - sum)) continue;
        for (auto& s : reconstruct(c, sum, options_.max_solutions).solutions) {
          if (!pick || s < *pick) pick = std::move(s);
        }
      }
      if (pick) return pick;
    }
    return std::nullopt;
  }

  EngineOutcome snapshot() const {
    EngineOutcome out;
    out.metrics = metrics_;
    if (mode_ == Mode::kOptimize) {
      if (auto s = best_solution()) {
        out.deviation = std::abs(s->sum - instance_.target());
        out.solutions.solutions.push_back(std::move(*s));
      }
    } else {
      out.solutions = solutions_;
      out.solutions.normalize();
    }
    out.metrics.solutions_found = out.solutions.size();
    return out;
  }

  EngineOutcome capped_snapshot() const {
    EngineOutcome out = snapshot();
    out.optimal = false;
    out.solutions.truncated = true;
    return out;
  }

  const Instance& instance_;
  Mode mode_;
  const EngineOptions& options_;
  Value range_;
  Metrics metrics_;
  SolutionSet solutions_;
  bool halted_ = false;
  Value best_ = 0;
  std::vector<Candidate> incumbents_;
};

}  // namespace

std::vector<Candidate> seed_candidates(const Instance& instance, Value range,
                                       const ReductionOptions& rules, Metrics* metrics) {
  if (range < instance.max_element()) throw std::invalid_argument("range below max element");
  const IntervalPartition partition = build_partition(range, range, instance.elements());
  std::vector<Candidate> out;
  seed_into(instance, partition, 1, static_cast<int>(instance.size()), rules, metrics, 0, out);
  return out;
}

std::vector<Candidate> split_candidate(const Candidate& candidate,
                                       const IntervalPartition& parent_partition,
                                       const IntervalPartition& child_partition, Metrics* metrics,
                                       Value slack) {
  if (candidate.scale != parent_partition.scale() ||
      child_partition.scale() * 2 != parent_partition.scale() ||
      child_partition.range() != parent_partition.range()) {
    throw std::invalid_argument("split needs a candidate at the parent scale and a child at half of it");
  }
  std::vector<Candidate> out;
  split_into(candidate, child_partition, slack, metrics,
             [&](Candidate&& c) { out.push_back(std::move(c)); });
  return out;
}

EngineOutcome run_stages(const Instance& instance, Mode mode, const EngineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  StageRunner runner(instance, mode, options);
  const int n = static_cast<int>(instance.size());
  if (options.per_size) {
    for (int size = 1; size <= n && !runner.halted(); ++size) runner.run(size, size);
  } else {
    runner.run(1, n);
  }
  EngineOutcome out = runner.finish();
  out.metrics.wall_time = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace bsm
