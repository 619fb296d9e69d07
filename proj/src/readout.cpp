#include "bsm/readout.hpp"

#include <ostream>
#include <stdexcept>

namespace bsm {

bool is_exact(const Candidate& candidate) {
  return candidate.resolved() && candidate.residual.contains(0);
}

namespace {

class Expander {
 public:
  Expander(const Candidate& candidate, std::uint64_t cap) : cap_(cap) {
    for (const auto& c : candidate.commitments) {
      if (const auto* f = std::get_if<Fixed>(&c)) {
        fixed_.insert(fixed_.end(), f->multiplicity, f->value);
        fixed_sum_ += f->value * f->multiplicity;
      } else {
        blocks_.push_back(std::get<BlockChoice>(c));
      }
    }
    tail_min_.assign(blocks_.size() + 1, 0);
    tail_max_.assign(blocks_.size() + 1, 0);
    for (std::size_t i = blocks_.size(); i-- > 0;) {
      tail_min_[i] = tail_min_[i + 1] + blocks_[i].min_sum();
      tail_max_[i] = tail_max_[i + 1] + blocks_[i].max_sum();
    }
  }

  Reconstruction run(Value sum) {
    const Value rest = sum - fixed_sum_;
    if (cap_ > 0 && rest >= tail_min_[0] && rest <= tail_max_[0]) {
      picked_ = fixed_;
      distribute(0, rest);
    }
    return std::move(out_);
  }

 private:
  // Per-block sums in lexicographic order; each must leave the remaining
  // blocks a reachable total.
  bool distribute(std::size_t k, Value rest) {
    if (k == blocks_.size()) return emit();
    const BlockChoice& b = blocks_[k];
    const Value lo = std::max(b.min_sum(), rest - tail_max_[k + 1]);
    const Value hi = std::min(b.max_sum(), rest - tail_min_[k + 1]);
    for (Value s = lo; s <= hi; ++s) {
      if (!choose(k, b.run_lo, b.count, s, rest - s)) return false;
    }
    return true;
  }

  // Picks `count` increasing values from [from, run_hi] summing to `need`.
  bool choose(std::size_t k, Value from, int count, Value need, Value rest_after) {
    if (count == 0) return need == 0 ? distribute(k + 1, rest_after) : true;
    const Value hi = blocks_[k].run_hi;
    const Value r = count - 1;
    for (Value x = from; x <= hi - r; ++x) {
      const Value min_rest = r * (x + 1) + r * (r - 1) / 2;
      const Value max_rest = r * hi - r * (r - 1) / 2;
      if (need - x < min_rest) break;
      if (need - x > max_rest) continue;
      picked_.push_back(x);
      const bool go_on = choose(k, x + 1, count - 1, need - x, rest_after);
      picked_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  bool emit() {
    if (out_.solutions.size() >= cap_) {
      out_.truncated = true;
      return false;
    }
    out_.solutions.push_back(Solution::from_values(picked_));
    return true;
  }

  std::uint64_t cap_;
  std::vector<Value> fixed_;
  Value fixed_sum_ = 0;
  std::vector<BlockChoice> blocks_;
  std::vector<Value> tail_min_, tail_max_;
  std::vector<Value> picked_;
  Reconstruction out_;
};

}  // namespace

Reconstruction reconstruct(const Candidate& candidate, Value sum, std::uint64_t cap) {
  if (!candidate.resolved()) throw std::invalid_argument("candidate still has open intervals");
  return Expander(candidate, cap).run(sum);
}

Reconstruction reconstruct(const Candidate& candidate, const Instance& instance,
                           std::uint64_t cap) {
  return reconstruct(candidate, instance.target(), cap);
}

SolutionSet enumerate_all(const Instance& instance, const EngineOptions& options) {
  return run_stages(instance, Mode::kEnumerate, options).solutions;
}

OptimizeResult optimize(const Instance& instance, const EngineOptions& options) {
  EngineOutcome out = run_stages(instance, Mode::kOptimize, options);
  return {std::move(out.solutions.solutions.front()), *out.deviation};
}

void write_solutions(std::ostream& out, const SolutionSet& set, std::optional<Value> deviation) {
  for (const auto& s : set.solutions) write_solution_line(out, s);
  if (deviation) out << "deviation " << *deviation << '\n';
}

}  // namespace bsm
