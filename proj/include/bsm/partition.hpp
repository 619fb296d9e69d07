#pragma once

// Partition of [1, R] into R / scale equal intervals, each carrying the
// elements that fall into it. Only non-empty intervals are stored, so a unit
// scale over a 2^40 range costs O(n) memory.

#include <cstdint>
#include <span>
#include <vector>

#include "bsm/instance.hpp"

namespace bsm {

using IntervalIndex = std::uint64_t;

/// Interval k (1-based) at scale j covers [(k-1)*j + 1, k*j].
struct IntervalView {
  IntervalIndex index = 0;
  Value lower = 0;
  Value upper = 0;
  int population = 0;
  Value element_sum = 0;
  std::span<const Value> elements;  // ascending, repeats kept

  Value diameter() const { return upper - lower + 1; }
};

class IntervalPartition {
 public:
  IntervalPartition(Value range, Value scale, std::span<const Value> elements);

  Value range() const noexcept { return range_; }
  Value scale() const noexcept { return scale_; }
  IntervalIndex interval_count() const noexcept {
    return static_cast<IntervalIndex>(range_ / scale_);
  }

  /// Any index in [1, interval_count()]; empty intervals come back with
  /// population 0.
  IntervalView interval(IntervalIndex k) const;
  int population(IntervalIndex k) const;
  Value lower(IntervalIndex k) const { return static_cast<Value>(k - 1) * scale_ + 1; }
  Value upper(IntervalIndex k) const { return static_cast<Value>(k) * scale_; }

  /// Non-empty intervals in ascending index order.
  std::vector<IntervalView> occupied() const;
  std::size_t occupied_count() const noexcept { return slots_.size(); }

 private:
  struct Slot {
    IntervalIndex index;
    std::size_t begin;  // into sorted_
    std::size_t end;
    Value sum;
  };
  const Slot* find(IntervalIndex k) const;
  IntervalView view(const Slot& s) const;

  Value range_;
  Value scale_;
  std::vector<Value> sorted_;
  std::vector<Slot> slots_;
};

/// Throws std::invalid_argument unless both are powers of two with
/// scale <= range, and every element lies in [1, range].
IntervalPartition build_partition(Value range, Value scale, std::span<const Value> elements);

}  // namespace bsm
