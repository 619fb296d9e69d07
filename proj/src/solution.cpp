#include "bsm/solution.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "bsm/metrics.hpp"

namespace bsm {

Solution Solution::from_values(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  Solution s;
  for (Value v : values) {
    if (!s.picks.empty() && s.picks.back().value == v) {
      ++s.picks.back().multiplicity;
    } else {
      s.picks.push_back({v, 1});
    }
    s.sum += v;
  }
  return s;
}

int Solution::cardinality() const {
  int c = 0;
  for (const auto& p : picks) c += p.multiplicity;
  return c;
}

std::vector<Value> Solution::expanded() const {
  std::vector<Value> out;
  for (const auto& p : picks) out.insert(out.end(), p.multiplicity, p.value);
  return out;
}

std::strong_ordering Solution::operator<=>(const Solution& other) const {
  if (auto c = cardinality() <=> other.cardinality(); c != 0) return c;
  return picks <=> other.picks;
}

void SolutionSet::normalize() {
  std::sort(solutions.begin(), solutions.end());
  solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());
}

std::uint64_t realizations(const Solution& s, const Instance& instance) {
  std::uint64_t total = 1;
  for (const auto& p : s.picks) {
    const int m = instance.multiplicity(p.value);
    // C(m, k) built incrementally; every intermediate is itself a binomial.
    unsigned __int128 binom = 1;
    for (int i = 1; i <= p.multiplicity && binom <= std::numeric_limits<std::uint64_t>::max(); ++i) {
      binom = binom * static_cast<unsigned>(m - p.multiplicity + i) / static_cast<unsigned>(i);
    }
    if (binom > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total = saturating_mul(total, static_cast<std::uint64_t>(binom));
  }
  return total;
}

void write_solution_line(std::ostream& out, const Solution& s) {
  bool first = true;
  for (Value v : s.expanded()) {
    if (!first) out << ' ';
    out << v;
    first = false;
  }
  out << '\n';
}

}  // namespace bsm
