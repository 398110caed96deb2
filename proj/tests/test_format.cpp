#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wafm/error.hpp"
#include "wafm/format.hpp"

using namespace wafm;
using wafm::testing::count;
using wafm::testing::load_fixture;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_automaton(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

WeightAlgebra random_algebra(std::mt19937& rng) {
  const Semiring s(kAllSemiringKinds[rng() % kAllSemiringKinds.size()]);
  if (rng() % 3 == 0) {
    const FeatureAlphabet all({"a", "b", "c"});
    const Semiring t(kAllSemiringKinds[rng() % kAllSemiringKinds.size()]);
    return WeightAlgebra(all, {{s, FeatureAlphabet({"a", "b"})}, {t, FeatureAlphabet({"b", "c"})}});
  }
  return wafm::testing::random_single_algebra(rng, s);
}

}  // namespace

TEST_SUITE("format") {
  TEST_CASE("shipped fixtures parse") {
    for (const char* name : {"two-branch.wa", "mpg.wa", "bt-wifi.wa", "variants/original.wa", "variants/no-wifi.wa",
                             "variants/no-wifi-chess.wa", "variants/no-wifi-chess-procmod.wa"}) {
      CAPTURE(name);
      CHECK_NOTHROW(load_fixture(name));
    }
    const auto bt_wifi = load_fixture("bt-wifi.wa");
    CHECK(bt_wifi.algebra().is_composite());
    CHECK(bt_wifi.algebra().describe() == "max-max over=ProcMod,BT,WiFi; min-min over=ProcMod,BT,WiFi");
  }

  TEST_CASE("scalar mode") {
    const auto a = parse_automaton(
        "semiring min-tropical\n"
        "alphabet a\n"
        "state q1 initial=2 final=0\n"
        "state q2 initial={1} final=5\n"
        "trans q1 q1 a 2\n"
        "trans q1 q2 a 1\n"
        "trans q2 q2 a 1\n");
    CHECK(a.algebra().is_scalar());
    CHECK(a == load_fixture("two-branch.wa"));
    CHECK(word_weight(a, Word(3, 0)).parts[0][0] == count(8));
  }

  TEST_CASE("weight literals") {
    const auto bt_wifi = load_fixture("bt-wifi.wa");
    const auto w = parse_weight(bt_wifi.algebra(), "{WiFi=3} | {WiFi=3, BT=0}");
    CHECK(weight_literal(bt_wifi.algebra(), w) == "{WiFi=3} | {BT=0, WiFi=3}");
    CHECK(parse_weight(bt_wifi.algebra(), weight_literal(bt_wifi.algebra(), w)) == w);
    CHECK_THROWS_AS(parse_weight(bt_wifi.algebra(), "{WiFi=3}"), ParseError);
    CHECK_THROWS_AS(parse_weight(bt_wifi.algebra(), "{WiFi=inf} | {}"), Error);
  }

  TEST_CASE("semiring override rereads the literals") {
    const auto a = load_fixture("mpg.wa", Semiring::min_min());
    CHECK(a.algebra().components()[0].semiring == Semiring::min_min());
    CHECK_THROWS(load_fixture("bt-wifi.wa", Semiring::max_max()));
  }

  TEST_CASE("errors carry line numbers") {
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nstate q initial\ntrans q q x {B=1}\n") == 5);
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nstate q\ntrans q r x {A=1}\n") == 5);
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nstate q\ntrans q q y\n") == 5);
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nstate q\ntrans q q x\ntrans q q x\n") == 6);
    CHECK(error_line("semiring nonsense\n") == 1);
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nstate q initial={A=1\n") == 4);
    CHECK(error_line("features A\nalphabet x\nstate q\n") != 0);
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nstate q\nstate q\n") == 5);
    CHECK(error_line("semiring max-tropical\nfeatures A\nalphabet x\nbogus line\n") == 4);
  }

  TEST_CASE("comments and blank lines are ignored") {
    const auto a = parse_automaton(
        "# leading comment\n\n"
        "semiring max-tropical   # trailing\n"
        "features A\nalphabet x\n"
        "state q initial final\n"
        "trans q q x {A=1}  # loop\n");
    CHECK(a.transitions().size() == 1);
  }

  TEST_CASE("serialisation round-trips random automata") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 100; ++i) {
      const auto alg = random_algebra(rng);
      const auto a = wafm::testing::random_automaton(rng, alg, {4, 3, 5, 0.3});
      const std::string text = serialize_automaton(a);
      CAPTURE(text);
      const auto b = parse_automaton(text);
      CHECK(b == a);
      CHECK(serialize_automaton(b) == text);
    }
  }

  TEST_CASE("graph export") {
    const auto dot = to_dot(load_fixture("bt-wifi.wa"));
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("addWiFi") != std::string::npos);
    CHECK(dot.find("q4") != std::string::npos);
  }
}
