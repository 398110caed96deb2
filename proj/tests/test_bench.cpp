#include <doctest.h>

#include <set>
#include <sstream>

#include "support.hpp"
#include "wafm/bench.hpp"
#include "wafm/error.hpp"
#include "wafm/ground_truth.hpp"

using namespace wafm;
using wafm::testing::load_fixture;

namespace {

const char* kVariants[] = {"original", "no-wifi", "no-wifi-chess", "no-wifi-chess-procmod"};

std::string small_plan(const std::string& k) {
  return "automaton original variants/original.wa\n"
         "automaton mutant variants/no-wifi-chess-procmod.wa\n"
         "config {Team=2, Player=3, Solitaire=2, WiFi=3, ProcMod=2}\n"
         "config {Team=1, Player=1, Solitaire=1, BT=1, ProcMod=1}\n"
         "k " + k + "\n"
         "order Player,Team,ProcMod\n"
         "repetitions 2\n"
         "warmups 1\n";
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted && c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.emplace_back();
      } else {
        cells.back() += c;
      }
    }
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("plan parsing") {
    const auto plan = parse_bench_plan(small_plan("100 200"), WAFM_FIXTURE_DIR);
    CHECK(plan.automata.size() == 2);
    CHECK(plan.configs.size() == 2);
    CHECK(plan.k_values == std::vector<std::size_t>{100, 200});
    CHECK(plan.order.to_string() == "Player,Team,ProcMod");
    CHECK(plan.repetitions == 2);
    CHECK(plan.warmups == 1);
    CHECK(plan.problems.size() == 4);

    const auto defaults = parse_bench_plan("automaton x a.wa\nk 5\n");
    CHECK(defaults.repetitions == 10);
    CHECK(defaults.warmups == 3);
  }

  TEST_CASE("plan errors") {
    CHECK_THROWS_AS(parse_bench_plan("automaton x a.wa\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_bench_plan("automaton x a.wa\nk\n"), InvalidArgument);
    CHECK_THROWS_AS(parse_bench_plan("automaton x a.wa\nk 0\n"), ParseError);
    CHECK_THROWS_AS(parse_bench_plan("automaton x a.wa\nk 5\nproblems sorting\n"), ParseError);
    CHECK_THROWS_AS(parse_bench_plan("automaton x a.wa\nk 5\nfrobnicate\n"), ParseError);
    auto missing = parse_bench_plan("automaton x does-not-exist.wa\nk 5\n", WAFM_FIXTURE_DIR);
    std::ostringstream csv;
    CHECK_THROWS(run_bench(missing, csv));
    CHECK(csv.str().empty());
  }

  TEST_CASE("the configuration suite") {
    const auto suite = multiplayer_config_suite();
    CHECK(suite.size() == 17);
    CHECK(std::set<std::string>(suite.begin(), suite.end()).size() == 17);
    const FeatureAlphabet f({"BT", "ProcMod", "Team", "Player", "Solitaire", "Chess", "WiFi"});
    int restricted = 0;
    for (const auto& c : suite) {
      const auto m = parse_configuration(c, f);
      if (m.at("Player").value() <= 3) ++restricted;
    }
    CHECK(restricted == 3);
  }

  TEST_CASE("csv schema and summary rows") {
    const auto plan = parse_bench_plan(small_plan("50 100"), WAFM_FIXTURE_DIR);
    std::ostringstream csv;
    run_bench(plan, csv);
    const auto table = rows(csv.str());
    REQUIRE(!table.empty());
    CHECK(table[0] == std::vector<std::string>{"automaton", "problem", "config", "k", "repetition", "wall_time_ms",
                                               "verdict", "exact"});
    std::size_t runs = 0, means = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
      REQUIRE(table[i].size() == 8);
      if (table[i][4] == "mean") {
        ++means;
        CHECK(table[i][2] == "*");
      } else {
        ++runs;
        CHECK(std::stod(table[i][5]) >= 0.0);
      }
    }
    // 2 automata x 2 k x (2 local problems x 2 configs + 2 global) x 2 repetitions.
    CHECK(runs == 2 * 2 * (2 * 2 + 2) * 2);
    CHECK(means == 2 * 2 * 4);
  }

  TEST_CASE("verdict columns are deterministic") {
    const auto plan = parse_bench_plan(small_plan("30"), WAFM_FIXTURE_DIR);
    auto verdicts = [&] {
      std::ostringstream csv;
      run_bench(plan, csv);
      std::vector<std::string> out;
      for (const auto& r : rows(csv.str())) {
        if (r.size() == 8 && r[4] != "mean") out.push_back(r[0] + r[1] + r[2] + r[3] + r[6] + r[7]);
      }
      return out;
    };
    CHECK(verdicts() == verdicts());
  }

  TEST_CASE("ground truth on the variants") {
    for (const char* n : kVariants) {
      CAPTURE(n);
      const auto a = load_fixture(std::string("variants/") + n + ".wa");
      REQUIRE(ground_truth_supported(a));
      CHECK(truth_lower_boundedness(a));
      CHECK(truth_upper_boundedness(a) == (std::string(n) == "no-wifi-chess-procmod"));
    }
    const auto a = load_fixture("variants/no-wifi.wa");
    const auto& f = a.algebra().features();
    CHECK(truth_non_emptiness(a, parse_configuration("{Team=1, Player=1, Solitaire=1, ProcMod=1, BT=1}", f)));
    CHECK_FALSE(truth_non_emptiness(a, parse_configuration("{Team=1, Player=1, Solitaire=1}", f)));
    CHECK_FALSE(ground_truth_supported(load_fixture("two-branch.wa")));
    CHECK_THROWS_AS(truth_lower_boundedness(load_fixture("two-branch.wa")), UnsupportedOperation);
  }

  TEST_CASE("ground truth matches brute force on short words") {
    for (const char* n : kVariants) {
      const auto a = load_fixture(std::string("variants/") + n + ".wa");
      const auto& f = a.algebra().features();
      for (const auto& literal : multiplayer_config_suite(4)) {
        const auto m = parse_configuration(literal, f);
        bool found = false;
        bool violated = false;
        for (const Word& w : wafm::testing::all_words(a.num_symbols(), 6)) {
          if (!accepts(a, w)) continue;
          (a.algebra().satisfies(m, word_weight(a, w)) ? found : violated) = true;
        }
        if (found) CHECK(truth_non_emptiness(a, m));
        if (violated) CHECK_FALSE(truth_universality(a, m));
      }
    }
  }
}
