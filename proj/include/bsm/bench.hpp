#pragma once

// Benchmark harness: generates instances, runs the stage engine and the
// baselines on them, and records one CSV row per (instance, solver, rules)
// run.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsm/engine.hpp"
#include "bsm/instance.hpp"

namespace bsm {

enum class Solver { kBsm, kMitm, kBrute };

std::string_view solver_name(Solver s);
Solver parse_solver(std::string_view name);
std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view name);

struct BenchRow {
  std::string instance_id;
  int n = 0;
  int bits = 0;
  double density = 0.0;
  Mode mode = Mode::kEnumerate;
  unsigned rules = 0;  // ReductionOptions::mask(); 0 for baselines
  std::uint64_t evaluations = 0;
  std::uint64_t peak_live_candidates = 0;
  std::uint64_t stages_executed = 0;
  Value deepest_scale = 0;
  std::uint64_t solutions_found = 0;
  double wall_ms = 0.0;
  Solver solver = Solver::kBsm;
  bool capped = false;

  bool operator==(const BenchRow&) const = default;
};

/// Header comment of every bench/stats CSV file.
inline constexpr std::string_view kBenchCsvVersion = "# bsm-bench v1";

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
/// Throws ParseError on a missing version line, wrong header or bad field.
std::vector<BenchRow> parse_bench_csv(std::istream& in);

struct BenchConfig {
  int n_first = 12;
  int n_last = 20;
  int n_step = 2;
  /// Element bit length; empty means bits = n (density 1).
  std::optional<int> fixed_bits;
  int trials = 5;
  std::uint64_t seed = 1;
  std::vector<Solver> solvers = {Solver::kBsm, Solver::kMitm};
  /// Also run the engine with every optional rule disabled.
  bool ablate = false;
  Mode mode = Mode::kEnumerate;
  bool distinct = true;
  TargetMode target_mode = TargetMode::kPlanted;
  EngineOptions engine;
  /// Record wall time; off by default so files are byte-reproducible.
  bool timing = false;
};

/// Generator settings of trial `trial` at size `n`. Seeds are derived from
/// the master seed so every cell is reproducible on its own.
GeneratorConfig bench_instance_config(const BenchConfig& config, int n, int trial);
std::string bench_instance_id(int n, int trial);

/// Runs one solver on one instance and returns its row. Caps produce a row
/// with `capped` set instead of an exception.
BenchRow run_cell(const std::string& instance_id, const Instance& instance, Solver solver,
                  Mode mode, const EngineOptions& engine, bool timing);

std::vector<BenchRow> run_bench(const BenchConfig& config);

}  // namespace bsm
