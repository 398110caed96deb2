#include "wafm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

#include "wafm/bench.hpp"
#include "wafm/error.hpp"
#include "wafm/format.hpp"
#include "wafm/mapping.hpp"

namespace wafm {

namespace {

std::string weight_token(const WeightAlgebra& alg, const CompositeWeight& w) {
  std::string out;
  for (std::size_t c = 0; c < alg.size(); ++c) {
    if (c) out += '|';
    const FeaturedMultiset& part = w.parts[c];
    if (alg.is_scalar()) out += part[0].to_string();
    else out += to_compact_string(part.with_default(alg.components()[c].semiring.one()));
  }
  return out;
}

std::optional<Semiring> semiring_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return Semiring::from_name(name);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << content;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted automata over featured multisets"};
  app.require_subcommand(1);

  std::string wa_path, cfm_path, plan_path, word_text, config_text, order_text, semiring_name, output_path,
      correctness_path;
  std::size_t k = 1500;
  std::int64_t budget = 2;
  bool exact_cycles = false;

  auto add_automaton = [&](CLI::App* sub) {
    sub->add_option("automaton", wa_path, "automaton document")->required();
    sub->add_option("--semiring", semiring_name, "read the document under another semiring");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--k", k, "path bound")->check(CLI::PositiveNumber);
    sub->add_option("--order", order_text, "comma-separated features minimised first");
  };

  CLI::App* weight = app.add_subcommand("weight", "weight of a word");
  add_automaton(weight);
  weight->add_option("--word", word_text, "comma-separated symbols")->required();

  CLI::App* acc = app.add_subcommand("accepts", "whether a word is accepted");
  add_automaton(acc);
  acc->add_option("--word", word_text, "comma-separated symbols")->required();

  CLI::App* nonempty = app.add_subcommand("nonempty", "some accepted word satisfied by the configuration");
  add_automaton(nonempty);
  nonempty->add_option("--config", config_text, "configuration literal")->required();
  add_search(nonempty);

  CLI::App* universal = app.add_subcommand("universal", "every accepted word satisfied by the configuration");
  add_automaton(universal);
  universal->add_option("--config", config_text, "configuration literal")->required();
  add_search(universal);

  CLI::App* lower = app.add_subcommand("lowerbound", "some configuration admits no word");
  add_automaton(lower);
  add_search(lower);

  CLI::App* upper = app.add_subcommand("upperbound", "some configuration admits every word");
  add_automaton(upper);
  add_search(upper);
  upper->add_flag("--exact-cycles", exact_cycles, "decide by cycle analysis instead of bounded search");

  CLI::App* proj = app.add_subcommand("project", "drop transitions the configuration violates");
  add_automaton(proj);
  proj->add_option("--config", config_text, "configuration literal")->required();
  proj->add_option("-o,--output", output_path, "output document")->required();

  CLI::App* dot = app.add_subcommand("dot", "Graphviz rendering");
  add_automaton(dot);

  CLI::App* validate = app.add_subcommand("validate", "validate a configuration against a feature model");
  validate->add_option("model", cfm_path, "feature model")->required();
  validate->add_option("--config", config_text, "configuration literal")->required();

  CLI::App* consistency = app.add_subcommand("consistency", "relate feature model and automaton");
  consistency->add_option("model", cfm_path, "feature model")->required();
  consistency->add_option("automaton", wa_path, "automaton document")->required();
  auto* word_opt = consistency->add_option("--word", word_text, "find a valid configuration for this word");
  auto* config_opt = consistency->add_option("--config", config_text, "find a word for this configuration");
  word_opt->excludes(config_opt);
  consistency->add_option("--budget", budget, "extra instances per feature")->check(CLI::NonNegativeNumber);
  add_search(consistency);

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark plan");
  bench->add_option("plan", plan_path, "plan file")->required();
  bench->add_option("-o,--output", output_path, "timing CSV")->required();
  bench->add_option("--correctness", correctness_path, "also write correctness against ground truth");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (consistency->parsed() && word_opt->count() == 0 && config_opt->count() == 0) {
    err << "error: consistency needs --word or --config\n";
    return 2;
  }

  try {
    const ExplorationOrder order = ExplorationOrder::parse(order_text);
    auto automaton = [&] { return load_automaton(wa_path, semiring_option(semiring_name)); };
    auto verdict_code = [](bool v) { return v ? 0 : 1; };

    if (weight->parsed() || acc->parsed()) {
      const WeightedAutomaton a = automaton();
      const Word w = parse_word(a, word_text);
      if (weight->parsed()) {
        out << "WEIGHT=" << weight_token(a.algebra(), word_weight(a, w)) << '\n';
        return 0;
      }
      const bool yes = accepts(a, w);
      out << "ACCEPTED=" << (yes ? "true" : "false") << '\n';
      return verdict_code(yes);
    }
    if (nonempty->parsed() || universal->parsed()) {
      const WeightedAutomaton a = automaton();
      const FeaturedMultiset m = parse_configuration(config_text, a.algebra().features());
      const bool ne = nonempty->parsed();
      AnalysisVerdict v = ne ? non_emptiness(a, m, k, order) : universality(a, m, k, order);
      out << report_line(a, ne ? "nonemptiness" : "universality", m, v) << '\n';
      if (v.witness) out << "WITNESS_WEIGHT=" << weight_token(a.algebra(), v.witness->weight) << '\n';
      return verdict_code(v.verdict);
    }
    if (lower->parsed() || upper->parsed()) {
      const WeightedAutomaton a = automaton();
      const bool lo = lower->parsed();
      AnalysisVerdict v = lo ? lower_boundedness(a, k, order)
                             : upper_boundedness(a, k, order,
                                                 exact_cycles ? BoundednessMethod::Exact : BoundednessMethod::Bounded);
      out << report_line(a, lo ? "lower-boundedness" : "upper-boundedness", std::nullopt, v) << '\n';
      if (v.bound) out << "BOUND=" << to_compact_string(*v.bound) << '\n';
      return verdict_code(v.verdict);
    }
    if (proj->parsed()) {
      const WeightedAutomaton a = automaton();
      const FeaturedMultiset m = parse_configuration(config_text, a.algebra().features());
      const WeightedAutomaton p = project(a, m);
      write_file(output_path, serialize_automaton(p));
      out << "TRANSITIONS=" << p.transitions().size() << " REMOVED=" << a.transitions().size() - p.transitions().size()
          << '\n';
      return 0;
    }
    if (dot->parsed()) {
      out << to_dot(automaton());
      return 0;
    }
    if (validate->parsed()) {
      const CardinalityFeatureModel cm = parse_cfm(read_file(cfm_path));
      const FeaturedMultiset m = parse_configuration(config_text, cm.concrete_alphabet());
      const ValidationReport r = validate_config(cm, m);
      out << to_string(r);
      return verdict_code(r.valid);
    }
    if (consistency->parsed()) {
      const CardinalityFeatureModel cm = parse_cfm(read_file(cfm_path));
      const WeightedAutomaton a = load_automaton(wa_path);
      ConsistencyReport r = word_opt->count()
                                ? config_exists_for_word(cm, a, parse_word(a, word_text), budget)
                                : word_exists_for_config(cm, a, parse_configuration(config_text, cm.concrete_alphabet()),
                                                         k, order);
      out << report_line(a, r) << '\n';
      return verdict_code(r.verdict);
    }
    if (bench->parsed()) {
      const BenchPlan plan = load_bench_plan(plan_path);
      std::ofstream csv(output_path);
      if (!csv) throw InvalidArgument("cannot write '" + output_path + "'");
      run_bench(plan, csv);
      if (!correctness_path.empty()) {
        std::ofstream cc(correctness_path);
        if (!cc) throw InvalidArgument("cannot write '" + correctness_path + "'");
        write_correctness_csv(correctness_sweep(plan), cc);
      }
      out << "WROTE=" << output_path << '\n';
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace wafm
