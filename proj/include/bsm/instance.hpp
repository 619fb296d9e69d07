#pragma once

// Subset sum problem input: a multiset of positive integers and a target.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bsm {

using Value = std::int64_t;

/// Malformed instance text. Carries the 1-based line where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates the problem domain (non-positive values,
/// empty element list, sums that would overflow).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generator configuration that cannot be satisfied.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Instance {
 public:
  /// Elements keep their input order; duplicates are allowed.
  Instance(std::vector<Value> elements, Value target);

  const std::vector<Value>& elements() const noexcept { return elements_; }
  Value target() const noexcept { return target_; }
  bool distinct() const noexcept { return distinct_; }
  std::size_t size() const noexcept { return elements_.size(); }

  Value max_element() const noexcept { return multiplicities_.rbegin()->first; }
  Value total() const noexcept { return total_; }

  /// value -> number of occurrences, ascending by value.
  const std::map<Value, int>& multiplicities() const noexcept { return multiplicities_; }
  int multiplicity(Value v) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.target_ == b.target_ && a.elements_ == b.elements_;
  }

 private:
  std::vector<Value> elements_;
  Value target_;
  Value total_ = 0;
  bool distinct_ = true;
  std::map<Value, int> multiplicities_;
};

/// Reads the instance text format: first non-comment line holds the target,
/// the remaining lines hold whitespace-separated elements. Lines starting
/// with '#' and blank lines are skipped.
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);

void write_instance(std::ostream& out, const Instance& instance);
std::string format_instance(const Instance& instance);

enum class TargetMode { kPlanted, kUniformRandom };

struct GeneratorConfig {
  int n = 10;
  int bits = 10;
  std::uint64_t seed = 0;
  TargetMode target_mode = TargetMode::kPlanted;
  /// Planted subset size; when empty every element joins the planted subset
  /// independently with probability 1/2 (redrawn if empty).
  std::optional<int> subset_size;
  bool require_distinct = false;

  /// n / bits.
  double density() const { return static_cast<double>(n) / bits; }
  Value max_value() const;
};

Instance generate_instance(const GeneratorConfig& config);

/// Smallest power of two >= max element, or > max element when
/// `strictly_greater` is set.
Value compute_range(const Instance& instance, bool strictly_greater = false);

/// Number of bits needed to represent `v` (v >= 1).
int bit_length(Value v);

}  // namespace bsm
