#include "wafm/bench.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "wafm/error.hpp"
#include "wafm/format.hpp"
#include "wafm/ground_truth.hpp"

namespace wafm {

namespace {

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t positive(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ParseError("expected a positive integer, found '" + s + "'", line, 1);
}

struct Loaded {
  std::string name;
  WeightedAutomaton automaton;
  std::vector<FeaturedMultiset> configs;
};

std::vector<Loaded> load_all(const BenchPlan& plan) {
  if (plan.automata.empty()) throw InvalidArgument("bench plan lists no automata");
  if (plan.k_values.empty()) throw InvalidArgument("bench plan lists no k values");
  std::vector<Loaded> out;
  for (const auto& e : plan.automata) {
    WeightedAutomaton a = load_automaton(e.path);
    std::vector<FeaturedMultiset> configs;
    for (const std::string& lit : plan.configs) configs.push_back(parse_configuration(lit, a.algebra().features()));
    out.push_back({e.name, std::move(a), std::move(configs)});
  }
  return out;
}

std::string compact(const std::optional<FeaturedMultiset>& m) {
  if (!m) return "-";
  return to_compact_string(*m);
}

}  // namespace

BenchPlan parse_bench_plan(std::string_view text, const std::string& base_dir) {
  BenchPlan plan;
  bool problems_set = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto w = words(line);
    if (w.empty()) continue;
    const std::string& kw = w[0];
    auto rest_of_line = [&] {
      const auto at = line.find(kw) + kw.size();
      std::string r = line.substr(at);
      r.erase(0, r.find_first_not_of(" \t"));
      r.erase(r.find_last_not_of(" \t\r") + 1);
      return r;
    };
    if (kw == "automaton") {
      if (w.size() != 3) throw ParseError("expected: automaton <name> <path>", line_no, 1);
      std::filesystem::path p(w[2]);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      plan.automata.push_back({w[1], p.string()});
    } else if (kw == "config") {
      std::string lit = rest_of_line();
      if (lit.empty()) throw ParseError("expected a configuration literal", line_no, 1);
      plan.configs.push_back(lit);
    } else if (kw == "suite") {
      if (w.size() < 2 || w[1] != "multiplayer") throw ParseError("unknown suite", line_no, 1);
      const std::int64_t cap = w.size() > 2 ? static_cast<std::int64_t>(positive(w[2], line_no)) : 100;
      for (std::string& c : multiplayer_config_suite(cap)) plan.configs.push_back(std::move(c));
    } else if (kw == "k") {
      for (std::size_t i = 1; i < w.size(); ++i) plan.k_values.push_back(positive(w[i], line_no));
    } else if (kw == "order") {
      plan.order = ExplorationOrder::parse(rest_of_line());
    } else if (kw == "problems") {
      if (!problems_set) plan.problems.clear();
      problems_set = true;
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] != "nonempty" && w[i] != "universal" && w[i] != "lowerbound" && w[i] != "upperbound")
          throw ParseError("unknown problem '" + w[i] + "'", line_no, 1);
        plan.problems.push_back(w[i]);
      }
    } else if (kw == "repetitions" || kw == "warmups") {
      if (w.size() != 2) throw ParseError("expected one count", line_no, 1);
      std::size_t v = 0;
      try {
        v = std::stoul(w[1]);
      } catch (const std::exception&) {
        throw ParseError("expected a count, found '" + w[1] + "'", line_no, 1);
      }
      (kw == "repetitions" ? plan.repetitions : plan.warmups) = v;
    } else {
      throw ParseError("unknown directive '" + kw + "'", line_no, 1);
    }
  }
  if (plan.automata.empty()) throw InvalidArgument("bench plan lists no automata");
  if (plan.k_values.empty()) throw InvalidArgument("bench plan lists no k values");
  return plan;
}

BenchPlan load_bench_plan(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_bench_plan(read_file(path), dir.empty() ? "." : dir);
}

std::vector<std::string> multiplayer_config_suite(std::int64_t player_cap) {
  const std::string p = std::to_string(player_cap);
  return {
      "{Team=1, Player=" + p + ", Solitaire=1, WiFi=3}",
      "{Team=1, Player=" + p + ", Solitaire=1, BT=1, ProcMod=1}",
      "{Team=2, Player=" + p + ", Chess=2, WiFi=3}",
      "{Team=2, Player=" + p + ", Solitaire=1, Chess=2, BT=1, ProcMod=1}",
      "{Team=2, Player=" + p + ", Solitaire=2, Chess=2, WiFi=3, BT=1, ProcMod=3}",
      "{Team=3, Player=" + p + ", Solitaire=1, Chess=2, BT=1, ProcMod=3}",
      "{Team=3, Player=" + p + ", Solitaire=3, Chess=3, WiFi=3, BT=1, ProcMod=6}",
      "{Team=4, Player=" + p + ", Solitaire=4, Chess=4, WiFi=3, BT=1, ProcMod=8}",
      "{Team=5, Player=" + p + ", Solitaire=5, Chess=5, WiFi=3, BT=1, ProcMod=10}",
      "{Team=2, Player=" + p + ", Solitaire=2, Chess=2, WiFi=3, BT=1, ProcMod=20}",
      "{Team=1, Player=" + p + "}",
      "{Player=" + p + ", WiFi=3, BT=1, ProcMod=1}",
      "{Team=1, Player=" + p + ", Solitaire=1, Chess=2, WiFi=3, BT=1, ProcMod=2}",
      "{Team=6, Player=" + p + ", Solitaire=6, Chess=6, WiFi=3, BT=1, ProcMod=12}",
      "{Team=2, Player=1, Solitaire=2, Chess=2, WiFi=3, BT=1, ProcMod=3}",
      "{Team=2, Player=2, Solitaire=2, Chess=2, WiFi=3, BT=1, ProcMod=3}",
      "{Team=3, Player=3, Solitaire=3, Chess=3, WiFi=3, BT=1, ProcMod=6}",
  };
}

AnalysisVerdict run_problem(const WeightedAutomaton& a, const std::string& problem,
                            const std::optional<FeaturedMultiset>& config, std::size_t k,
                            const ExplorationOrder& order) {
  if (problem == "nonempty" || problem == "universal") {
    if (!config) throw InvalidArgument(problem + " needs a configuration");
    return problem == "nonempty" ? non_emptiness(a, *config, k, order) : universality(a, *config, k, order);
  }
  if (problem == "lowerbound") return lower_boundedness(a, k, order);
  if (problem == "upperbound") return upper_boundedness(a, k, order, BoundednessMethod::Bounded);
  throw InvalidArgument("unknown problem '" + problem + "'");
}

bool truth_for(const WeightedAutomaton& a, const std::string& problem, const std::optional<FeaturedMultiset>& config) {
  if (problem == "nonempty") return truth_non_emptiness(a, *config);
  if (problem == "universal") return truth_universality(a, *config);
  if (problem == "lowerbound") return truth_lower_boundedness(a);
  if (problem == "upperbound") return truth_upper_boundedness(a);
  throw InvalidArgument("unknown problem '" + problem + "'");
}

void run_bench(const BenchPlan& plan, std::ostream& csv) {
  const std::vector<Loaded> loaded = load_all(plan);
  using Clock = std::chrono::steady_clock;
  csv << "automaton,problem,config,k,repetition,wall_time_ms,verdict,exact\n";
  auto field = [](const std::string& s) { return "\"" + s + "\""; };
  for (const Loaded& l : loaded) {
    for (const std::string& problem : plan.problems) {
      std::vector<std::optional<FeaturedMultiset>> configs;
      if (is_global_problem(problem)) configs.emplace_back();
      else configs.assign(l.configs.begin(), l.configs.end());
      for (std::size_t k : plan.k_values) {
        double sum = 0;
        std::size_t runs = 0;
        for (const auto& config : configs) {
          for (std::size_t w = 0; w < plan.warmups; ++w) run_problem(l.automaton, problem, config, k, plan.order);
          for (std::size_t r = 1; r <= plan.repetitions; ++r) {
            const auto start = Clock::now();
            AnalysisVerdict v = run_problem(l.automaton, problem, config, k, plan.order);
            const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
            sum += ms;
            ++runs;
            csv << l.name << ',' << problem << ',' << field(compact(config)) << ',' << k << ',' << r << ',' << ms << ','
                << (v.verdict ? "true" : "false") << ',' << (v.exact ? "true" : "false") << '\n';
          }
        }
        if (runs)
          csv << l.name << ',' << problem << ",*," << k << ",mean," << sum / static_cast<double>(runs) << ",-,-\n";
      }
    }
  }
}

std::vector<CorrectnessPoint> correctness_sweep(const BenchPlan& plan) {
  const std::vector<Loaded> loaded = load_all(plan);
  std::vector<CorrectnessPoint> out;
  for (const Loaded& l : loaded) {
    struct Case {
      std::string problem;
      std::optional<FeaturedMultiset> config;
      bool truth;
    };
    std::vector<Case> cases;
    for (const std::string& problem : plan.problems) {
      if (is_global_problem(problem)) {
        cases.push_back({problem, std::nullopt, truth_for(l.automaton, problem, std::nullopt)});
        continue;
      }
      for (const FeaturedMultiset& m : l.configs) cases.push_back({problem, m, truth_for(l.automaton, problem, m)});
    }
    for (std::size_t k : plan.k_values) {
      std::size_t correct = 0;
      for (const Case& c : cases) {
        if (run_problem(l.automaton, c.problem, c.config, k, plan.order).verdict == c.truth) ++correct;
      }
      out.push_back({l.name, k, correct, cases.size()});
    }
  }
  return out;
}

void write_correctness_csv(const std::vector<CorrectnessPoint>& points, std::ostream& csv) {
  csv << "automaton,k,correct,total,correctness\n";
  for (const CorrectnessPoint& p : points)
    csv << p.automaton << ',' << p.k << ',' << p.correct << ',' << p.total << ','
        << static_cast<double>(p.correct) / static_cast<double>(p.total) << '\n';
}

}  // namespace wafm
