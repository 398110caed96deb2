#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wafm/analysis.hpp"
#include "wafm/error.hpp"

using namespace wafm;
using wafm::testing::count;
using wafm::testing::load_fixture;

namespace {

const auto kOrder = ExplorationOrder::parse("Player,Team,ProcMod");

FeaturedMultiset cfg(const WeightedAutomaton& a, std::string_view text) {
  return parse_configuration(text, a.algebra().features());
}

// Accepts exactly the empty word, with every weight equal to one.
WeightedAutomaton empty_word_only(Semiring s) {
  WeightedAutomaton a(WeightAlgebra::single(s, FeatureAlphabet({"x", "y"})), {"a"});
  const StateId q = a.add_state("q");
  a.set_initial(q, a.algebra().one());
  a.set_final(q, a.algebra().one());
  return a;
}

void check_witness(const WeightedAutomaton& a, const FeaturedMultiset& m, const AnalysisVerdict& v,
                   bool expect_satisfied) {
  REQUIRE(v.witness);
  CHECK(accepts(a, v.witness->word));
  CHECK(word_weight(a, v.witness->word) == v.witness->weight);
  CHECK(a.algebra().satisfies(m, v.witness->weight) == expect_satisfied);
}

// Random configuration over the automaton's features with counts <= max.
FeaturedMultiset random_config(std::mt19937& rng, const WeightAlgebra& alg, int max) {
  FeaturedMultiset m(alg.features());
  std::uniform_int_distribution<int> v(0, max);
  for (FeatureIndex f = 0; f < alg.features().size(); ++f) m.set(f, count(v(rng)));
  return m;
}

// The same automaton with every component read as one max-tropical weight.
WeightedAutomaton flatten_to_max_tropical(const WeightedAutomaton& a) {
  const WeightAlgebra& from = a.algebra();
  const auto alg = WeightAlgebra::single(Semiring::max_tropical(), from.features());
  auto flat = [&](const CompositeWeight& w) {
    FeaturedMultiset m(from.features());
    for (std::size_t c = 0; c < from.size(); ++c) {
      for (FeatureIndex f = 0; f < from.components()[c].features.size(); ++f) {
        const FeatureIndex g = from.global_index(c, f);
        if (w.parts[c][f].is_finite()) m.set(g, m[g] + w.parts[c][f]);
      }
    }
    return CompositeWeight{{m}};
  };
  WeightedAutomaton out(alg, a.symbols());
  for (StateId q = 0; q < a.num_states(); ++q) {
    out.add_state(a.state_name(q));
    if (const CompositeWeight* w = a.initial_if_any(q)) out.set_initial(q, flat(*w));
    if (const CompositeWeight* w = a.final_if_any(q)) out.set_final(q, flat(*w));
  }
  for (const Transition& t : a.transitions()) out.add_transition(t.from, t.symbol, t.to, flat(t.weight));
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("non-emptiness on the multiplayer automaton") {
    const auto a = load_fixture("mpg.wa");
    const auto m = cfg(a, "{Team=1, Player=1, Solitaire=1, WiFi=3}");
    const auto v = non_emptiness(a, m, 1500, kOrder);
    CHECK(v.verdict);
    check_witness(a, m, v, true);
    CHECK(word_to_string(a, v.witness->word) == "addTeam,addSolitaire,addWiFi");

    const auto empty = non_emptiness(a, cfg(a, "{}"), 1500, kOrder);
    CHECK_FALSE(empty.verdict);
    CHECK(empty.exact);
    for (const Word& w : wafm::testing::all_words(a.num_symbols(), 4)) {
      if (accepts(a, w)) CHECK_FALSE(a.algebra().satisfies(cfg(a, "{}"), word_weight(a, w)));
    }
  }

  TEST_CASE("empty-word automata") {
    // min-tropical is left out: its unit 0 is an upper bound of 0.
    for (SemiringKind kind : {SemiringKind::MaxTropical, SemiringKind::MaxMax, SemiringKind::MinMin,
                              SemiringKind::Boolean}) {
      const auto a = empty_word_only(Semiring(kind));
      const auto m = cfg(a, "{x=3}");
      CHECK(non_emptiness(a, m, 10, {}).verdict);
      CHECK(universality(a, m, 10, {}).verdict);
      CHECK_FALSE(lower_boundedness(a, 10, {}).verdict);
      CHECK(upper_boundedness(a, 10, {}).verdict);
    }
  }

  TEST_CASE("configurations must be finite and known") {
    const auto a = load_fixture("mpg.wa");
    FeaturedMultiset inf(a.algebra().features());
    inf.set("Team", ExtendedCount::pos_inf());
    CHECK_THROWS_AS(non_emptiness(a, inf, 10, kOrder), DomainError);
    const FeatureAlphabet other({"Team", "Ghost"});
    CHECK_THROWS_AS(non_emptiness(a, parse_configuration("{Ghost=1}", other), 10, kOrder), InvalidArgument);
    CHECK_NOTHROW(non_emptiness(a, parse_configuration("{Team=1}", other), 10, kOrder));
  }

  TEST_CASE("universality on the multiplayer automaton") {
    const auto a = load_fixture("mpg.wa");
    const auto m = cfg(a, "{Team=1, Player=1, Solitaire=1, WiFi=3}");
    const auto v = universality(a, m, 1500, kOrder);
    CHECK_FALSE(v.verdict);
    CHECK(v.exact);
    check_witness(a, m, v, false);

    const auto doubled = load_fixture("variants/original.wa");
    const auto w = parse_word(doubled, "addTeam,addTeam,addChess,addWiFi");
    CHECK(accepts(doubled, w));
    CHECK_FALSE(doubled.algebra().satisfies(m, word_weight(doubled, w)));
  }

  TEST_CASE("universality on the smallest mutant") {
    const auto a = load_fixture("variants/no-wifi-chess-procmod.wa");
    const auto m = cfg(a, "{Team=2, Solitaire=2, WiFi=3, BT=1, ProcMod=1, Player=100}");
    const auto v = universality(a, m, 1500, kOrder);
    CHECK(v.verdict);
    for (const Word& w : wafm::testing::all_words(a.num_symbols(), 6)) {
      if (accepts(a, w)) CHECK(a.algebra().satisfies(m, word_weight(a, w)));
    }
  }

  TEST_CASE("lower boundedness") {
    CHECK(lower_boundedness(load_fixture("mpg.wa"), 1500, kOrder).verdict);
    CHECK(lower_boundedness(load_fixture("mpg.wa"), 1500, kOrder).exact);

    WeightedAutomaton none(WeightAlgebra::single(Semiring::max_tropical(), FeatureAlphabet({"x"})), {"a"});
    none.add_state("q");
    const auto v = lower_boundedness(none, 10, {});
    CHECK(v.verdict);
    CHECK(v.exact);
  }

  TEST_CASE("upper boundedness of the multiplayer automaton") {
    const auto a = load_fixture("mpg.wa");
    const auto exact = upper_boundedness(a, 1500, kOrder, BoundednessMethod::Exact);
    CHECK_FALSE(exact.verdict);
    CHECK(exact.exact);
    CHECK_FALSE(upper_boundedness(a, 1500, kOrder, BoundednessMethod::Bounded).verdict);
  }

  TEST_CASE("upper boundedness of the mutants") {
    const char* names[] = {"original", "no-wifi", "no-wifi-chess", "no-wifi-chess-procmod"};
    for (const char* n : names) {
      CAPTURE(n);
      const auto a = load_fixture(std::string("variants/") + n + ".wa");
      const bool expected = std::string(n) == "no-wifi-chess-procmod";
      const auto exact = upper_boundedness(a, 2500, kOrder, BoundednessMethod::Exact);
      const auto bounded = upper_boundedness(a, 2500, kOrder, BoundednessMethod::Bounded);
      CHECK(exact.verdict == expected);
      CHECK(bounded.verdict == expected);
      CHECK(exact.exact);
      CHECK_FALSE(bounded.exact);
      if (expected) {
        REQUIRE(exact.bound);
        CHECK(universality(a, *exact.bound, 2500, kOrder).verdict);
      }
    }
  }

  TEST_CASE("with Player accumulating, no mutant is upper bounded") {
    for (const char* n : {"original", "no-wifi", "no-wifi-chess", "no-wifi-chess-procmod"}) {
      CAPTURE(n);
      const auto a = flatten_to_max_tropical(load_fixture(std::string("variants/") + n + ".wa"));
      CHECK_FALSE(upper_boundedness(a, 2500, kOrder, BoundednessMethod::Exact).verdict);
      // The addPlayer loop alone pumps Player past any bound.
      const auto w = parse_word(a, "addTeam,addPlayer,addPlayer,addPlayer,addSolitaire,addBT");
      REQUIRE(accepts(a, w));
      CHECK(word_weight(a, w).parts[0].at("Player") == count(4));
    }
  }

  TEST_CASE("acyclic automata are upper bounded") {
    std::mt19937 rng(8);
    for (int i = 0; i < 40; ++i) {
      const auto alg = WeightAlgebra::single(Semiring::max_tropical(), FeatureAlphabet({"x", "y"}));
      WeightedAutomaton a(alg, {"a", "b"});
      for (int q = 0; q < 4; ++q) a.add_state("q" + std::to_string(q));
      a.set_initial(0, alg.one());
      a.set_final(3, wafm::testing::random_weight(rng, alg, 3));
      for (StateId q = 0; q < 4; ++q) {
        for (StateId r = q + 1; r < 4; ++r) {
          for (SymbolId s = 0; s < 2; ++s) {
            if (rng() % 2) a.add_transition(q, s, r, wafm::testing::random_weight(rng, alg, 3));
          }
        }
      }
      const auto v = upper_boundedness(a, 100, {}, BoundednessMethod::Exact);
      CHECK(v.verdict);
      CHECK(upper_boundedness(a, 100, {}, BoundednessMethod::Bounded).verdict);
    }
  }

  TEST_CASE("projection of the bluetooth fragment") {
    const auto a = load_fixture("bt-wifi.wa");
    const auto m = cfg(a, "{ProcMod=1, BT=1}");
    const auto p = project(a, m);
    const SymbolId bt = *a.find_symbol("addBT");
    const SymbolId wifi = *a.find_symbol("addWiFi");
    const StateId q4 = *a.find_state("q4");
    const StateId q5 = *a.find_state("q5");
    CHECK(p.find_transition(q4, bt, q5));
    CHECK_FALSE(p.find_transition(q4, wifi, q5));
    CHECK(p.num_states() == a.num_states());

    const auto wide = cfg(a, "{ProcMod=1, BT=0, WiFi=3}");
    const auto q = project(a, wide);
    CHECK(q.find_transition(q4, wifi, q5));
    CHECK_FALSE(q.find_transition(q4, bt, q5));

    CHECK_THROWS_AS(project(load_fixture("mpg.wa"), cfg(load_fixture("mpg.wa"), "{}")), UnsupportedOperation);
  }

  TEST_CASE("projection keeps everything a configuration satisfies") {
    const auto a = load_fixture("mpg.wa", Semiring::max_max());
    const auto m = cfg(a, "{BT=9, ProcMod=9, Team=9, Player=9, Solitaire=9, Chess=9, WiFi=9}");
    CHECK(project(a, m) == a);
  }

  TEST_CASE("report lines") {
    const auto a = load_fixture("mpg.wa");
    const auto m = cfg(a, "{Team=1, Player=1, Solitaire=1, WiFi=3}");
    const auto v = non_emptiness(a, m, 1500, kOrder);
    CHECK(report_line(a, "non-emptiness", m, v) ==
          "PROBLEM=non-emptiness CONFIG={Team=1,Player=1,Solitaire=1,WiFi=3} VERDICT=true EXACT=true K=1500 "
          "WITNESS=addTeam,addSolitaire,addWiFi");
    const auto lb = lower_boundedness(a, 10, kOrder);
    CHECK(report_line(a, "lower-boundedness", std::nullopt, lb).find("CONFIG=- ") != std::string::npos);
  }

  TEST_CASE("random instances agree with brute force") {
    std::mt19937 rng(101);
    const Semiring kinds[] = {Semiring::max_tropical(), Semiring::max_max(), Semiring::min_min(),
                              Semiring::min_tropical(), Semiring::boolean()};
    for (int i = 0; i < 150; ++i) {
      const Semiring s = kinds[i % 5];
      const auto alg = WeightAlgebra::single(s, FeatureAlphabet({"x", "y"}));
      const auto a = wafm::testing::random_automaton(rng, alg, {3, 2, 3, 0.35});
      const auto m = random_config(rng, alg, 4);
      const auto m2 = lift_sum(m, random_config(rng, alg, 2));
      const auto words = wafm::testing::all_words(a.num_symbols(), 8);
      bool some_ok = false, some_bad = false, nonempty_language = false;
      for (const Word& w : words) {
        if (!accepts(a, w)) continue;
        nonempty_language = true;
        (alg.satisfies(m, word_weight(a, w)) ? some_ok : some_bad) = true;
        // Lower-bounding weights: a larger configuration accepts more words.
        if (s.direction() == BoundDirection::Lower && alg.satisfies(m, word_weight(a, w)))
          CHECK(alg.satisfies(m2, word_weight(a, w)));
      }

      // Lexicographic orders can chase one feature forever; a small budget
      // keeps such instances cheap, and their verdicts are then inexact.
      SearchOptions opts = default_search_options(a);
      opts.max_expansions = 20000;
      const auto ne = non_emptiness(a, m, 2000, {}, opts);
      const auto un = universality(a, m, 2000, {}, opts);
      if (ne.witness) check_witness(a, m, ne, true);
      if (un.witness) check_witness(a, m, un, false);
      // A bounded search may miss a word, but never while claiming exactness.
      if (some_ok && !ne.verdict) CHECK_FALSE(ne.exact);
      if (some_bad && un.verdict) CHECK_FALSE(un.exact);
      if (ne.exact && !ne.verdict) CHECK_FALSE(some_ok);
      if (un.exact && un.verdict) CHECK_FALSE(some_bad);
      if (un.verdict && nonempty_language && un.exact) CHECK(ne.verdict);
    }
  }
}
