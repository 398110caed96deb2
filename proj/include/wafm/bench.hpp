#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wafm/analysis.hpp"

namespace wafm {

/// Benchmark plan, one directive per line (`#` comments):
///
///     automaton original fixtures/variants/original.wa
///     config {Team=2, Player=100, Solitaire=2}
///     suite multiplayer 100        # the generated 17-configuration suite
///     k 500 1000 1500
///     order Player,Team,ProcMod
///     problems nonempty universal lowerbound upperbound
///     repetitions 10
///     warmups 3
///
/// Relative automaton paths resolve against the plan file's directory.
struct BenchPlan {
  struct Entry {
    std::string name;
    std::string path;
  };
  std::vector<Entry> automata;
  std::vector<std::string> configs;
  std::vector<std::size_t> k_values;
  ExplorationOrder order;
  std::vector<std::string> problems{"nonempty", "universal", "lowerbound", "upperbound"};
  std::size_t repetitions = 10;
  std::size_t warmups = 3;
};

BenchPlan parse_bench_plan(std::string_view text, const std::string& base_dir = ".");
BenchPlan load_bench_plan(const std::string& path);

/// 17 configurations over the Multiplayer features. Three of them restrict
/// Player to small counts; the others allow `player_cap` players.
std::vector<std::string> multiplayer_config_suite(std::int64_t player_cap = 100);

/// Runs one analysis. `problem` is nonempty, universal, lowerbound or
/// upperbound (the last with the bounded method, so that it depends on k).
AnalysisVerdict run_problem(const WeightedAutomaton& a, const std::string& problem,
                            const std::optional<FeaturedMultiset>& config, std::size_t k, const ExplorationOrder& order);

/// Reference verdict from the ground-truth procedures.
bool truth_for(const WeightedAutomaton& a, const std::string& problem, const std::optional<FeaturedMultiset>& config);

inline bool is_global_problem(const std::string& problem) {
  return problem == "lowerbound" || problem == "upperbound";
}

/// Writes `automaton,problem,config,k,repetition,wall_time_ms,verdict,exact`
/// rows: one per recorded run, then a `mean` row per (automaton, problem, k)
/// with config `*`. All fixtures are loaded before timing starts.
void run_bench(const BenchPlan& plan, std::ostream& csv);

struct CorrectnessPoint {
  std::string automaton;
  std::size_t k;
  std::size_t correct;
  std::size_t total;
};

/// Fraction of analyses agreeing with the ground truth, per automaton and k.
std::vector<CorrectnessPoint> correctness_sweep(const BenchPlan& plan);

void write_correctness_csv(const std::vector<CorrectnessPoint>& points, std::ostream& csv);

}  // namespace wafm
