#include "bsm/bench.hpp"

#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>

#include "bsm/baselines.hpp"

namespace bsm {
namespace {

constexpr std::string_view kHeader =
    "instance_id,n,bits,density,mode,rules,evaluations,peak_live_candidates,stages_executed,"
    "deepest_scale,solutions_found,wall_ms,solver,capped";
constexpr std::size_t kColumns = 14;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, std::string_view column) {
  T v{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "bad " + std::string(column) + " field '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view solver_name(Solver s) {
  switch (s) {
    case Solver::kBsm:
      return "bsm";
    case Solver::kMitm:
      return "mitm";
    case Solver::kBrute:
      return "brute";
  }
  return "unknown";
}

Solver parse_solver(std::string_view name) {
  if (name == "bsm") return Solver::kBsm;
  if (name == "mitm") return Solver::kMitm;
  if (name == "brute") return Solver::kBrute;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kDecision:
      return "decision";
    case Mode::kEnumerate:
      return "enumerate";
    case Mode::kOptimize:
      return "optimize";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "decision") return Mode::kDecision;
  if (name == "enumerate") return Mode::kEnumerate;
  if (name == "optimize") return Mode::kOptimize;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvVersion << '\n' << kHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.n << ',' << r.bits << ',' << format_double(r.density) << ','
        << mode_name(r.mode) << ',' << r.rules << ',' << r.evaluations << ','
        << r.peak_live_candidates << ',' << r.stages_executed << ',' << r.deepest_scale << ','
        << r.solutions_found << ',' << format_double(r.wall_ms) << ',' << solver_name(r.solver)
        << ',' << (r.capped ? 1 : 0) << '\n';
  }
}

std::vector<BenchRow> parse_bench_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kBenchCsvVersion) {
    throw ParseError(line_no, "expected '" + std::string(kBenchCsvVersion) + "'");
  }
  ++line_no;
  if (!std::getline(in, line) || line != kHeader) throw ParseError(line_no, "unexpected header");

  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != kColumns) {
      throw ParseError(line_no, "expected " + std::to_string(kColumns) + " columns");
    }
    BenchRow r;
    r.instance_id = std::string(f[0]);
    r.n = parse_field<int>(f[1], line_no, "n");
    r.bits = parse_field<int>(f[2], line_no, "bits");
    r.density = parse_field<double>(f[3], line_no, "density");
    try {
      r.mode = parse_mode(f[4]);
      r.solver = parse_solver(f[12]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    r.rules = parse_field<unsigned>(f[5], line_no, "rules");
    r.evaluations = parse_field<std::uint64_t>(f[6], line_no, "evaluations");
    r.peak_live_candidates = parse_field<std::uint64_t>(f[7], line_no, "peak_live_candidates");
    r.stages_executed = parse_field<std::uint64_t>(f[8], line_no, "stages_executed");
    r.deepest_scale = parse_field<Value>(f[9], line_no, "deepest_scale");
    r.solutions_found = parse_field<std::uint64_t>(f[10], line_no, "solutions_found");
    r.wall_ms = parse_field<double>(f[11], line_no, "wall_ms");
    r.capped = parse_field<int>(f[13], line_no, "capped") != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

GeneratorConfig bench_instance_config(const BenchConfig& config, int n, int trial) {
  GeneratorConfig g;
  g.n = n;
  g.bits = config.fixed_bits.value_or(n);
  g.seed = splitmix64(config.seed ^ splitmix64((static_cast<std::uint64_t>(n) << 32) |
                                               static_cast<std::uint32_t>(trial)));
  g.target_mode = config.target_mode;
  g.require_distinct = config.distinct;
  return g;
}

std::string bench_instance_id(int n, int trial) {
  return "n" + std::to_string(n) + "-t" + std::to_string(trial);
}

BenchRow run_cell(const std::string& instance_id, const Instance& instance, Solver solver,
                  Mode mode, const EngineOptions& engine, bool timing) {
  BenchRow row;
  row.instance_id = instance_id;
  row.n = static_cast<int>(instance.size());
  row.bits = bit_length(instance.max_element());
  row.density = static_cast<double>(row.n) / row.bits;
  row.mode = mode;
  row.solver = solver;

  const auto start = std::chrono::steady_clock::now();
  switch (solver) {
    case Solver::kBsm: {
      row.rules = engine.rules.mask();
      Metrics m;
      try {
        m = run_stages(instance, mode, engine).metrics;
      } catch (const CappedRunError& e) {
        m = e.partial().metrics;
        row.capped = true;
      }
      row.evaluations = m.evaluations;
      row.peak_live_candidates = m.peak_live_candidates;
      row.stages_executed = m.stages_executed;
      row.deepest_scale = m.deepest_scale_reached;
      row.solutions_found = m.solutions_found;
      break;
    }
    case Solver::kBrute: {
      if (instance.size() > kBruteForceMaxN) {
        row.capped = true;
        break;
      }
      row.evaluations = (std::uint64_t{1} << instance.size()) - 1;
      if (mode == Mode::kOptimize) {
        brute_force_closest(instance);
        row.solutions_found = 1;
      } else {
        row.solutions_found = brute_force_enumerate(instance).size();
      }
      break;
    }
    case Solver::kMitm: {
      if (mode == Mode::kOptimize) {
        throw ConfigError("the mitm baseline has no optimize mode");
      }
      if (instance.size() > kMitmMaxN) {
        row.capped = true;
        break;
      }
      MitmStats stats;
      row.solutions_found = mitm_enumerate(instance, &stats).size();
      row.evaluations = stats.left_entries + stats.right_entries;
      break;
    }
  }
  if (mode == Mode::kDecision) row.solutions_found = std::min<std::uint64_t>(row.solutions_found, 1);
  if (timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
  }
  return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.n_first < 1 || config.n_last < config.n_first || config.n_step < 1) {
    throw ConfigError("bad n range");
  }
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.mode == Mode::kOptimize) {
    for (Solver s : config.solvers) {
      if (s == Solver::kMitm) throw ConfigError("the mitm baseline has no optimize mode");
    }
  }

  std::vector<BenchRow> rows;
  for (int n = config.n_first; n <= config.n_last; n += config.n_step) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const GeneratorConfig g = bench_instance_config(config, n, trial);
      const Instance instance = generate_instance(g);
      const std::string id = bench_instance_id(n, trial);
      auto record = [&](BenchRow row) {
        row.bits = g.bits;
        row.density = g.density();
        rows.push_back(std::move(row));
      };
      for (Solver s : config.solvers) {
        record(run_cell(id, instance, s, config.mode, config.engine, config.timing));
        if (s == Solver::kBsm && config.ablate) {
          EngineOptions off = config.engine;
          off.rules = ReductionOptions::none();
          record(run_cell(id, instance, s, config.mode, off, config.timing));
        }
      }
    }
  }
  return rows;
}

}  // namespace bsm
