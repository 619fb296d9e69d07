// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bsm/baselines.hpp"
#include "bsm/bench.hpp"
#include "bsm/engine.hpp"
#include "bsm/readout.hpp"

using namespace bsm;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  ["
            << detail << "]" << std::endl;
  if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Runs the CLI with stdout captured to `out`; returns the exit status.
int run_cli(const std::string& cli, const std::string& args, const fs::path& out) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

struct Suite {
  std::vector<Instance> small;   // n <= 14, elements <= 16
  std::vector<Instance> random;  // n <= 16, bits <= 12
  std::size_t exhaustive = 0;
};

Suite build_suite() {
  Suite s;
  // Exhaustive slice: every distinct element set drawn from 1..7 with every
  // target in [1, sum + 1].
  for (unsigned mask = 1; mask < (1U << 7); ++mask) {
    std::vector<Value> el;
    for (int b = 0; b < 7; ++b) {
      if (mask & (1U << b)) el.push_back(b + 1);
    }
    Value sum = 0;
    for (Value v : el) sum += v;
    for (Value t = 1; t <= sum + 1; ++t) s.small.emplace_back(el, t);
  }
  s.exhaustive = s.small.size();

  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + static_cast<int>(rng() % 14);
    std::vector<Value> el(n);
    for (auto& e : el) e = 1 + static_cast<Value>(rng() % 16);
    Value sum = 0;
    for (Value v : el) sum += v;
    s.small.emplace_back(el, 1 + static_cast<Value>(rng() % (sum + 1)));
  }

  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 16);
    const int bits = 1 + static_cast<int>(rng() % 12);
    std::vector<Value> el(n);
    for (auto& e : el) e = 1 + static_cast<Value>(rng() % ((Value{1} << bits) - 1));
    Value sum = 0;
    for (Value v : el) sum += v;
    s.random.emplace_back(el, 1 + static_cast<Value>(rng() % (sum + 1)));
  }
  return s;
}

void criterion_1(const std::string& cli, const fs::path& dir) {
  const fs::path in = dir / "intro.txt";
  std::ofstream(in) << "9\n2 5 6 7 8\n";
  const fs::path out = dir / "intro.out";
  const int code = run_cli(cli, "solve --mode enumerate --input \"" + in.string() + "\"", out);
  const std::string text = slurp(out);
  report(1, code == 0 && text == "2 7\n", "S={2,5,6,7,8}, t=9 enumerates exactly {2,7}",
         "exit " + std::to_string(code) + ", output \"" +
             text.substr(0, text.find('\n')) + "\"");
}

void criteria_2_to_4(const Suite& suite) {
  std::size_t enum_mismatch = 0, decision_mismatch = 0, opt_mismatch = 0, mitm_mismatch = 0;
  std::size_t cases = 0;
  auto check = [&](const Instance& inst, bool with_optimize) {
    ++cases;
    const SolutionSet brute = brute_force_enumerate(inst);
    if (enumerate_all(inst) != brute) ++enum_mismatch;
    if (run_stages(inst, Mode::kDecision).solutions.empty() != brute.empty()) ++decision_mismatch;
    if (mitm_enumerate(inst) != brute) ++mitm_mismatch;
    if (with_optimize) {
      const OptimizeResult r = optimize(inst);
      const ClosestResult ref = brute_force_closest(inst);
      Value sum = 0;
      for (Value v : r.solution.expanded()) sum += v;
      if (r.deviation != ref.deviation || std::abs(sum - inst.target()) != r.deviation) {
        ++opt_mismatch;
      }
    }
  };
  for (const auto& inst : suite.small) check(inst, true);
  const std::size_t small_cases = cases;
  for (const auto& inst : suite.random) check(inst, false);

  report(2, small_cases >= 2000 && enum_mismatch == 0 && decision_mismatch == 0,
         "enumerate and decision equal brute force",
         std::to_string(small_cases) + " small cases (" + std::to_string(suite.exhaustive) +
             " exhaustive) + " + std::to_string(suite.random.size()) + " random; " +
             std::to_string(enum_mismatch) + " enumerate / " + std::to_string(decision_mismatch) +
             " decision mismatches");
  report(3, opt_mismatch == 0, "optimize deviation equals brute-force closest",
         std::to_string(small_cases) + " cases, " + std::to_string(opt_mismatch) + " mismatches");
  report(4, mitm_mismatch == 0, "meet-in-the-middle equals brute force",
         std::to_string(cases) + " cases, " + std::to_string(mitm_mismatch) + " mismatches");
}

void criteria_5_and_6(const Suite& suite) {
  std::vector<BenchRow> rows;
  std::vector<bool> dense_distinct;  // per on/off pair
  auto grid = [&](std::optional<int> bits, bool distinct, TargetMode target) {
    BenchConfig c;
    c.n_first = 8;
    c.n_last = 20;
    c.n_step = 2;
    c.fixed_bits = bits;
    c.trials = 5;
    c.seed = 7;
    c.solvers = {Solver::kBsm};
    c.ablate = true;
    c.distinct = distinct;
    c.target_mode = target;
    c.engine.max_evaluations = std::uint64_t{1} << 36;
    c.engine.max_live_candidates = std::uint64_t{1} << 30;
    auto r = run_bench(c);
    rows.insert(rows.end(), r.begin(), r.end());
    dense_distinct.insert(dense_distinct.end(), r.size() / 2, distinct && !bits);
  };
  grid(std::nullopt, true, TargetMode::kPlanted);
  grid(std::nullopt, true, TargetMode::kUniformRandom);
  grid(std::nullopt, false, TargetMode::kPlanted);
  grid(24, true, TargetMode::kPlanted);

  std::size_t pairs = 0, violations = 0, dense = 0, strict = 0, capped = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    const BenchRow& on = rows[i];
    const BenchRow& off = rows[i + 1];
    ++pairs;
    if (on.capped || off.capped) ++capped;
    if (on.evaluations > off.evaluations) ++violations;
    if (dense_distinct[i / 2] && on.n >= 12) {
      ++dense;
      if (on.evaluations < off.evaluations) ++strict;
    }
  }
  const double frac = dense ? static_cast<double>(strict) / dense : 0.0;
  report(5, violations == 0 && capped == 0 && dense > 0 && frac >= 0.9,
         "rules on never evaluate more than rules off; strictly fewer on >= 90% dense distinct",
         std::to_string(pairs) + " instance pairs, " + std::to_string(violations) +
             " violations; strict on " + std::to_string(strict) + "/" + std::to_string(dense));

  // Early halt: every distinct instance of the equivalence suite and of
  // a dense bench grid.
  // A candidate alive below scale 2 was split there unless it is a seed
  // (R = 1). Runs where nothing survives seeding never reach a stage.
  std::size_t checked = 0, shallow = 0;
  auto depth_ok = [&](const Instance& inst) {
    if (!inst.distinct()) return;
    ++checked;
    const Value range = compute_range(inst);
    bool split_below = false;
    EngineOptions opt;
    opt.observer = [&](const std::vector<Candidate>& live, const IntervalPartition& p) {
      if (!live.empty() && p.scale() < 2 && p.scale() < range) split_below = true;
    };
    const Metrics m = run_stages(inst, Mode::kEnumerate, opt).metrics;
    const bool halted_early =
        m.stages_executed == 0 || m.deepest_scale_reached >= std::min<Value>(2, range);
    if (split_below || !halted_early) ++shallow;
  };
  for (const auto& inst : suite.small) depth_ok(inst);
  for (const auto& inst : suite.random) depth_ok(inst);
  BenchConfig c;
  c.n_first = 8;
  c.n_last = 20;
  c.n_step = 2;
  c.trials = 5;
  c.seed = 7;
  for (int n = c.n_first; n <= c.n_last; n += c.n_step) {
    for (int t = 0; t < c.trials; ++t) depth_ok(generate_instance(bench_instance_config(c, n, t)));
  }
  report(6, checked > 0 && shallow == 0, "distinct instances never split below scale 2",
         std::to_string(checked) + " distinct instances, " + std::to_string(shallow) +
             " split below scale 2");
}

void criterion_7() {
  BenchConfig c;
  c.seed = 1;
  c.distinct = true;
  c.target_mode = TargetMode::kPlanted;
  EngineOptions engine;
  engine.max_evaluations = std::uint64_t{1} << 44;
  engine.max_live_candidates = std::uint64_t{1} << 30;
  engine.threads = std::max(1U, std::thread::hardware_concurrency());

  std::vector<double> xs, ys;
  std::ostringstream detail;
  bool capped = false;
  for (int n = 12; n <= 30; n += 2) {
    std::uint64_t worst = 0;
    for (int trial = 0; trial < 5; ++trial) {
      const GeneratorConfig g = bench_instance_config(c, n, trial);
      const Instance inst = generate_instance(g);
      try {
        worst = std::max(worst, run_stages(inst, Mode::kEnumerate, engine).metrics.evaluations);
      } catch (const CappedRunError& e) {
        capped = true;
        worst = std::max(worst, e.partial().metrics.evaluations);
      }
    }
    xs.push_back(n);
    ys.push_back(std::log2(static_cast<double>(std::max<std::uint64_t>(worst, 1))));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%d:%.2f", n == 12 ? "" : " ", n, ys.back());
    detail << buf;
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  char head[64];
  std::snprintf(head, sizeof head, "slope %.3f (limit 0.6); log2 max evals ", slope);
  report(7, !capped && slope <= 0.6, "evaluation growth slope on dense distinct instances",
         head + detail.str() + (capped ? "; capped" : ""));
}

void criterion_8(const std::string& cli, const fs::path& dir) {
  const std::vector<std::string> invocations = {
      "gen --n 18 --bits 18 --seed 11 --distinct",
      "gen --n 25 --bits 40 --seed 3 --random-target",
      "solve --mode enumerate --input \"" + (dir / "det.txt").string() + "\" --stats \"" +
          (dir / "STATS").string() + "\"",
      "solve --mode decision --input \"" + (dir / "det.txt").string() + "\"",
      "solve --mode optimize --input \"" + (dir / "det.txt").string() + "\"",
      "solve --input \"" + (dir / "det.txt").string() + "\" --threads 4 --stats \"" +
          (dir / "STATS").string() + "\"",
      "bench --n 10:16:2 --trials 3 --seed 5 --solvers bsm,mitm,brute --ablate",
      "bench --n 12:14 --bits fixed:20 --trials 2 --seed 9 --mode decision",
  };
  if (run_cli(cli, "gen --n 18 --bits 18 --seed 4 --out \"" + (dir / "det.txt").string() + "\"",
              dir / "gen.log") != 0) {
    report(8, false, "repeated invocations are byte-identical", "could not generate input");
    return;
  }

  std::size_t identical = 0;
  std::string first_bad;
  for (const auto& inv : invocations) {
    std::string outputs[2];
    int codes[2];
    for (int rep = 0; rep < 2; ++rep) {
      std::string args = inv;
      const fs::path stats = dir / ("stats" + std::to_string(rep) + ".csv");
      if (args.find("STATS") != std::string::npos) {
        args.replace(args.find((dir / "STATS").string()), (dir / "STATS").string().size(),
                     stats.string());
      }
      const fs::path out = dir / ("det" + std::to_string(rep) + ".out");
      codes[rep] = run_cli(cli, args, out);
      outputs[rep] = slurp(out);
      if (inv.find("STATS") != std::string::npos) outputs[rep] += "\n--stats--\n" + slurp(stats);
    }
    if (codes[0] == codes[1] && codes[0] <= 1 && outputs[0] == outputs[1] && !outputs[0].empty()) {
      ++identical;
    } else if (first_bad.empty()) {
      first_bad = inv;
    }
  }
  report(8, identical == invocations.size(), "repeated invocations are byte-identical",
         std::to_string(identical) + "/" + std::to_string(invocations.size()) + " identical" +
             (first_bad.empty() ? "" : "; differs: " + first_bad));
}

void criterion_9() {
  std::size_t runs = 0, mismatches = 0;
  for (Value width = 1; width <= 8; ++width) {
    for (Value lo = 1; lo <= 17; ++lo) {
      // All count-subsets of the run, by bitmask.
      std::vector<std::set<Value>> sums(width + 1);
      for (unsigned mask = 0; mask < (1U << width); ++mask) {
        Value s = 0;
        for (Value b = 0; b < width; ++b) {
          if (mask & (1U << b)) s += lo + b;
        }
        sums[std::popcount(mask)].insert(s);
      }
      for (int count = 1; count <= width; ++count) {
        ++runs;
        const BlockChoice block{lo, lo + width - 1, count};
        std::set<Value> range;
        for (Value v = block.min_sum(); v <= block.max_sum(); ++v) range.insert(v);
        if (range != sums[count]) ++mismatches;

        // The reconstruction of every block sum is a genuine count-subset.
        Candidate c;
        c.scale = 1;
        c.commitments = {block};
        for (Value v = block.min_sum(); v <= block.max_sum(); ++v) {
          const Reconstruction r = reconstruct(c, v, 1);
          if (r.solutions.size() != 1 || r.solutions[0].cardinality() != count ||
              r.solutions[0].picks.front().value < lo ||
              r.solutions[0].picks.back().value > lo + width - 1) {
            ++mismatches;
          }
        }
      }
    }
  }
  report(9, mismatches == 0, "block sums are contiguous for runs of width <= 8",
         std::to_string(runs) + " (run, count) pairs, " + std::to_string(mismatches) +
             " mismatches");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bsm acceptance suite"};
  std::string cli;
  bool skip_growth = false;
  app.add_option("--cli", cli, "Path to the bsm executable")->required();
  app.add_flag("--skip-growth", skip_growth, "Skip the long growth-rate measurement");
  CLI11_PARSE(app, argc, argv);

  const fs::path dir = fs::temp_directory_path() / "bsm_acceptance";
  fs::create_directories(dir);

  criterion_1(cli, dir);
  const Suite suite = build_suite();
  criteria_2_to_4(suite);
  criteria_5_and_6(suite);
  if (skip_growth) {
    std::cout << "SKIP  criterion 7  evaluation growth slope on dense distinct instances"
              << std::endl;
  } else {
    criterion_7();
  }
  criterion_8(cli, dir);
  criterion_9();

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
