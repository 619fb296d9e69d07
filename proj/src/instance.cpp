#include "bsm/instance.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace bsm {
namespace {

// Keeps every interval-arithmetic product (coefficient * bound, summed over
// all elements) inside int64.
constexpr Value kMaxElement = Value{1} << 52;
constexpr Value kMaxTotal = Value{1} << 60;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

Value parse_integer(std::string_view token, std::size_t line) {
  Value v = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line, "integer out of range: '" + std::string(token) + "'");
  }
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "malformed integer: '" + std::string(token) + "'");
  }
  return v;
}

// Unbiased draw from [lo, hi] using only the raw 64-bit engine output, so
// generated instances do not depend on the standard library's distribution
// implementation.
Value uniform_in(std::mt19937_64& rng, Value lo, Value hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<Value>(x % span);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Instance::Instance(std::vector<Value> elements, Value target)
    : elements_(std::move(elements)), target_(target) {
  if (elements_.empty()) throw DomainError("instance has no elements");
  if (target_ < 1) throw DomainError("target must be >= 1, got " + std::to_string(target_));
  for (Value e : elements_) {
    if (e < 1) throw DomainError("elements must be >= 1, got " + std::to_string(e));
    if (e > kMaxElement) throw DomainError("element too large: " + std::to_string(e));
    total_ += e;
    if (total_ > kMaxTotal) throw DomainError("element sum exceeds supported range");
    if (++multiplicities_[e] > 1) distinct_ = false;
  }
  if (target_ > kMaxTotal) throw DomainError("target too large: " + std::to_string(target_));
}

int Instance::multiplicity(Value v) const {
  auto it = multiplicities_.find(v);
  return it == multiplicities_.end() ? 0 : it->second;
}

Instance parse_instance(std::istream& in) {
  std::optional<Value> target;
  std::vector<Value> elements;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream tokens(line);
    std::string token;
    if (!target) {
      tokens >> token;
      target = parse_integer(token, line_no);
      if (tokens >> token) {
        throw ParseError(line_no, "target line must hold a single integer");
      }
      continue;
    }
    while (tokens >> token) elements.push_back(parse_integer(token, line_no));
  }
  if (!target) throw DomainError("instance has no target line");
  return Instance(std::move(elements), *target);
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << instance.target() << '\n';
  const auto& el = instance.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (i) out << ' ';
    out << el[i];
  }
  out << '\n';
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

Value GeneratorConfig::max_value() const { return (Value{1} << bits) - 1; }

Instance generate_instance(const GeneratorConfig& config) {
  if (config.n < 1) throw ConfigError("n must be >= 1");
  if (config.bits < 1 || config.bits > 52) throw ConfigError("bits must be in [1, 52]");
  const Value hi = config.max_value();
  if (config.require_distinct && config.n > hi) {
    throw ConfigError("cannot draw " + std::to_string(config.n) + " distinct values from [1, " +
                      std::to_string(hi) + "]");
  }
  if (config.subset_size && (*config.subset_size < 1 || *config.subset_size > config.n)) {
    throw ConfigError("planted subset size must be in [1, n]");
  }

  std::mt19937_64 rng(config.seed);
  std::vector<Value> elements;
  elements.reserve(config.n);
  if (!config.require_distinct) {
    for (int i = 0; i < config.n; ++i) elements.push_back(uniform_in(rng, 1, hi));
  } else if (2 * static_cast<Value>(config.n) > hi) {
    // Dense request: partial Fisher-Yates over the whole (small) range.
    std::vector<Value> pool(hi);
    std::iota(pool.begin(), pool.end(), Value{1});
    for (int i = 0; i < config.n; ++i) {
      std::swap(pool[i], pool[uniform_in(rng, i, hi - 1)]);
      elements.push_back(pool[i]);
    }
  } else {
    std::unordered_set<Value> seen;
    while (static_cast<int>(elements.size()) < config.n) {
      const Value v = uniform_in(rng, 1, hi);
      if (seen.insert(v).second) elements.push_back(v);
    }
  }

  Value target = 0;
  if (config.target_mode == TargetMode::kUniformRandom) {
    const Value total = std::accumulate(elements.begin(), elements.end(), Value{0});
    target = uniform_in(rng, 1, total);
  } else if (config.subset_size) {
    std::vector<int> idx(config.n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < *config.subset_size; ++i) {
      std::swap(idx[i], idx[uniform_in(rng, i, config.n - 1)]);
      target += elements[idx[i]];
    }
  } else {
    while (target == 0) {
      for (Value e : elements) {
        if (rng() & 1U) target += e;
      }
    }
  }
  return Instance(std::move(elements), target);
}

Value compute_range(const Instance& instance, bool strictly_greater) {
  const auto m = static_cast<std::uint64_t>(instance.max_element());
  auto r = std::bit_ceil(m);
  if (strictly_greater && r == m) r <<= 1;
  return static_cast<Value>(r);
}

int bit_length(Value v) { return std::bit_width(static_cast<std::uint64_t>(v)); }

}  // namespace bsm
