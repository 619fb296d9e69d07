#include "bsm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bsm/baselines.hpp"
#include "bsm/bench.hpp"
#include "bsm/engine.hpp"
#include "bsm/instance.hpp"
#include "bsm/readout.hpp"

namespace bsm {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenArgs {
  int n = 0;
  int bits = 0;
  std::uint64_t seed = 0;
  bool planted = false;
  bool random_target = false;
  int subset_size = 0;
  bool distinct = false;
  std::string out;
};

struct SolveArgs {
  std::string input;
  std::string mode = "enumerate";
  bool no_block = false;
  bool no_filled = false;
  bool no_singleton = false;
  bool per_size = false;
  std::uint64_t max_solutions = std::uint64_t{1} << 20;
  std::uint64_t max_evals = std::uint64_t{1} << 26;
  std::uint64_t max_live = std::uint64_t{1} << 26;
  std::string stats;
  std::string baseline;
  bool realizations = false;
  bool timing = false;
  unsigned threads = 1;
};

struct BenchArgs {
  std::string n_range = "12:20:2";
  std::string bits = "match-n";
  int trials = 5;
  std::uint64_t seed = 1;
  std::string solvers = "bsm,mitm";
  bool ablate = false;
  std::string mode = "enumerate";
  bool random_target = false;
  bool allow_duplicates = false;
  std::uint64_t max_evals = std::uint64_t{1} << 26;
  std::uint64_t max_live = std::uint64_t{1} << 26;
  bool timing = false;
  unsigned threads = 1;
  std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("bad ") + what + ": '" + s + "'");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << content;
}

int run_gen(const GenArgs& a, std::ostream& out) {
  if (a.planted && a.random_target) throw UsageError("--planted and --random-target are exclusive");
  GeneratorConfig g;
  g.n = a.n;
  g.bits = a.bits;
  g.seed = a.seed;
  g.target_mode = a.random_target ? TargetMode::kUniformRandom : TargetMode::kPlanted;
  if (a.subset_size > 0) g.subset_size = a.subset_size;
  g.require_distinct = a.distinct;
  emit(a.out, format_instance(generate_instance(g)), out);
  return kExitOk;
}

Instance read_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "'");
  return parse_instance(f);
}

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Mode mode = parse_mode(a.mode);
  const Instance instance = read_instance(a.input);

  EngineOptions engine;
  engine.rules.block = !a.no_block;
  engine.rules.filled = !a.no_filled;
  engine.rules.singleton = !a.no_singleton;
  engine.per_size = a.per_size;
  engine.max_solutions = a.max_solutions;
  engine.max_evaluations = a.max_evals;
  engine.max_live_candidates = a.max_live;
  engine.threads = a.threads;

  SolutionSet set;
  std::optional<Value> deviation;
  bool capped = false;
  std::optional<BenchRow> stats;
  const std::string id = stem(a.input);

  if (!a.baseline.empty()) {
    const Solver solver = parse_solver(a.baseline);
    if (solver == Solver::kBsm) throw UsageError("--baseline takes brute or mitm");
    if (solver == Solver::kMitm && mode == Mode::kOptimize) {
      throw UsageError("the mitm baseline has no optimize mode");
    }
    if (mode == Mode::kOptimize) {
      ClosestResult r = brute_force_closest(instance);
      set.solutions.push_back(std::move(r.solution));
      deviation = r.deviation;
    } else {
      set = solver == Solver::kBrute ? brute_force_enumerate(instance) : mitm_enumerate(instance);
      if (mode == Mode::kDecision && set.size() > 1) set.solutions.resize(1);
    }
    if (!a.stats.empty()) stats = run_cell(id, instance, solver, mode, engine, a.timing);
  } else {
    EngineOutcome outcome;
    try {
      outcome = run_stages(instance, mode, engine);
    } catch (const CappedRunError& e) {
      err << "capped run: " << e.what() << '\n';
      outcome = e.partial();
      capped = true;
    }
    set = outcome.solutions;
    deviation = outcome.deviation;
    if (!a.stats.empty()) {
      BenchRow row;
      row.instance_id = id;
      row.n = static_cast<int>(instance.size());
      row.bits = bit_length(instance.max_element());
      row.density = static_cast<double>(row.n) / row.bits;
      row.mode = mode;
      row.rules = engine.rules.mask();
      row.evaluations = outcome.metrics.evaluations;
      row.peak_live_candidates = outcome.metrics.peak_live_candidates;
      row.stages_executed = outcome.metrics.stages_executed;
      row.deepest_scale = outcome.metrics.deepest_scale_reached;
      row.solutions_found = outcome.metrics.solutions_found;
      if (a.timing) {
        row.wall_ms = std::chrono::duration<double, std::milli>(outcome.metrics.wall_time).count();
      }
      row.solver = Solver::kBsm;
      row.capped = capped;
      stats = row;
    }
  }

  for (const auto& s : set.solutions) {
    std::ostringstream line;
    write_solution_line(line, s);
    std::string text = line.str();
    if (a.realizations) {
      text.pop_back();
      text += " # realizations " + std::to_string(realizations(s, instance)) + "\n";
    }
    out << text;
  }
  if (deviation) out << "deviation " << *deviation << '\n';
  if (set.truncated && !capped) err << "solution cap reached; output truncated\n";

  if (stats) {
    std::ostringstream csv;
    write_bench_csv(csv, {*stats});
    emit(a.stats, csv.str(), out);
  }

  if (capped) return kExitCapped;
  if (mode == Mode::kDecision && set.empty()) return kExitNoSolution;
  return kExitOk;
}

int run_bench_cmd(const BenchArgs& a, std::ostream& out) {
  BenchConfig c;
  const auto range = split(a.n_range, ':');
  if (range.size() < 2 || range.size() > 3) throw UsageError("--n takes A:B[:step]");
  c.n_first = to_int(range[0], "--n start");
  c.n_last = to_int(range[1], "--n end");
  c.n_step = range.size() == 3 ? to_int(range[2], "--n step") : 1;
  if (a.bits != "match-n") {
    const std::string v = a.bits.rfind("fixed:", 0) == 0 ? a.bits.substr(6) : a.bits;
    c.fixed_bits = to_int(v, "--bits");
  }
  c.trials = a.trials;
  c.seed = a.seed;
  c.solvers.clear();
  for (const auto& s : split(a.solvers, ',')) c.solvers.push_back(parse_solver(s));
  if (c.solvers.empty()) throw UsageError("--solvers is empty");
  c.ablate = a.ablate;
  c.mode = parse_mode(a.mode);
  c.distinct = !a.allow_duplicates;
  c.target_mode = a.random_target ? TargetMode::kUniformRandom : TargetMode::kPlanted;
  c.engine.max_evaluations = a.max_evals;
  c.engine.max_live_candidates = a.max_live;
  c.engine.threads = a.threads;
  c.timing = a.timing;

  std::ostringstream csv;
  write_bench_csv(csv, run_bench(c));
  emit(a.out, csv.str(), out);
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subset sum solver based on multi-scale interval refinement", "bsm"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.n, "Element count")->required();
  gen_cmd->add_option("--bits", gen.bits, "Elements drawn from [1, 2^bits - 1]")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  gen_cmd->add_flag("--planted", gen.planted, "Target is the sum of a random subset (default)");
  gen_cmd->add_flag("--random-target", gen.random_target, "Target uniform in [1, sum]");
  gen_cmd->add_option("--subset-size", gen.subset_size, "Size of the planted subset");
  gen_cmd->add_flag("--distinct", gen.distinct, "Require pairwise distinct elements");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("--input", solve.input, "Instance file")->required();
  solve_cmd->add_option("--mode", solve.mode, "decision | enumerate | optimize")
      ->check(CLI::IsMember({"decision", "enumerate", "optimize"}));
  solve_cmd->add_flag("--no-block", solve.no_block, "Disable the sequence-block rule");
  solve_cmd->add_flag("--no-filled", solve.no_filled, "Disable the filled-interval rule");
  solve_cmd->add_flag("--no-singleton", solve.no_singleton, "Disable the singleton rule");
  solve_cmd->add_flag("--per-size", solve.per_size, "One stage loop per subset size");
  solve_cmd->add_option("--max-solutions", solve.max_solutions, "Solution cap");
  solve_cmd->add_option("--max-evals", solve.max_evals, "Evaluation cap");
  solve_cmd->add_option("--max-live", solve.max_live, "Live candidate cap");
  solve_cmd->add_option("--stats", solve.stats, "Write run metrics as a bench CSV row");
  solve_cmd->add_option("--baseline", solve.baseline, "Solve with brute or mitm instead")
      ->check(CLI::IsMember({"brute", "mitm"}));
  solve_cmd->add_flag("--realizations", solve.realizations,
                      "Append the number of index-level subsets per solution");
  solve_cmd->add_flag("--timing", solve.timing, "Record wall time in --stats");
  solve_cmd->add_option("--threads", solve.threads, "Worker threads for stage expansion");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
  bench_cmd->add_option("--n", bench.n_range, "Sizes as A:B[:step]");
  bench_cmd->add_option("--bits", bench.bits, "match-n, or a fixed bit length (B or fixed:B)");
  bench_cmd->add_option("--trials", bench.trials, "Instances per size");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--solvers", bench.solvers, "Comma list of bsm, mitm, brute");
  bench_cmd->add_flag("--ablate", bench.ablate, "Also run bsm with all optional rules off");
  bench_cmd->add_option("--mode", bench.mode, "decision | enumerate | optimize")
      ->check(CLI::IsMember({"decision", "enumerate", "optimize"}));
  bench_cmd->add_flag("--random-target", bench.random_target, "Target uniform in [1, sum]");
  bench_cmd->add_flag("--allow-duplicates", bench.allow_duplicates,
                      "Do not force distinct elements");
  bench_cmd->add_option("--max-evals", bench.max_evals, "Per-run evaluation cap");
  bench_cmd->add_option("--max-live", bench.max_live, "Per-run live candidate cap");
  bench_cmd->add_flag("--timing", bench.timing, "Record wall time (output no longer reproducible)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads per run");
  bench_cmd->add_option("--out", bench.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*solve_cmd) return run_solve(solve, out, err);
    return run_bench_cmd(bench, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    // DomainError, ConfigError, SizeLimitError and bad option values.
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace bsm
