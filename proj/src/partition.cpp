#include "bsm/partition.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace bsm {
namespace {

bool is_power_of_two(Value v) { return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v)); }

}  // namespace

IntervalPartition::IntervalPartition(Value range, Value scale, std::span<const Value> elements)
    : range_(range), scale_(scale), sorted_(elements.begin(), elements.end()) {
  if (!is_power_of_two(range) || !is_power_of_two(scale) || scale > range) {
    throw std::invalid_argument("partition needs power-of-two scale dividing range, got range=" +
                                std::to_string(range) + " scale=" + std::to_string(scale));
  }
  std::sort(sorted_.begin(), sorted_.end());
  if (!sorted_.empty() && (sorted_.front() < 1 || sorted_.back() > range)) {
    throw std::invalid_argument("element outside [1, range]");
  }
  std::size_t i = 0;
  while (i < sorted_.size()) {
    const auto k = static_cast<IntervalIndex>((sorted_[i] - 1) / scale_ + 1);
    const Value hi = upper(k);
    Slot slot{k, i, i, 0};
    while (i < sorted_.size() && sorted_[i] <= hi) slot.sum += sorted_[i++];
    slot.end = i;
    slots_.push_back(slot);
  }
}

const IntervalPartition::Slot* IntervalPartition::find(IntervalIndex k) const {
  auto it = std::lower_bound(slots_.begin(), slots_.end(), k,
                             [](const Slot& s, IntervalIndex key) { return s.index < key; });
  return (it != slots_.end() && it->index == k) ? &*it : nullptr;
}

IntervalView IntervalPartition::view(const Slot& s) const {
  return IntervalView{s.index,
                      lower(s.index),
                      upper(s.index),
                      static_cast<int>(s.end - s.begin),
                      s.sum,
                      std::span<const Value>(sorted_).subspan(s.begin, s.end - s.begin)};
}

IntervalView IntervalPartition::interval(IntervalIndex k) const {
  if (k < 1 || k > interval_count()) throw std::out_of_range("interval index out of range");
  if (const Slot* s = find(k)) return view(*s);
  return IntervalView{k, lower(k), upper(k), 0, 0, {}};
}

int IntervalPartition::population(IntervalIndex k) const {
  const Slot* s = find(k);
  return s ? static_cast<int>(s->end - s->begin) : 0;
}

std::vector<IntervalView> IntervalPartition::occupied() const {
  std::vector<IntervalView> out;
  out.reserve(slots_.size());
  for (const Slot& s : slots_) out.push_back(view(s));
  return out;
}

IntervalPartition build_partition(Value range, Value scale, std::span<const Value> elements) {
  return IntervalPartition(range, scale, elements);
}

}  // namespace bsm
