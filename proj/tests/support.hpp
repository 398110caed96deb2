#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wafm/automaton.hpp"
#include "wafm/format.hpp"

namespace wafm::testing {

inline std::string fixture(const std::string& name) { return std::string(WAFM_FIXTURE_DIR) + "/" + name; }

inline WeightedAutomaton load_fixture(const std::string& name, std::optional<Semiring> override = std::nullopt) {
  return load_automaton(fixture(name), override);
}

inline ExtendedCount count(std::int64_t n) { return ExtendedCount(n); }

/// Every word over `symbols` symbols with length <= max_len, shortest first.
inline std::vector<Word> all_words(std::size_t symbols, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (SymbolId s = 0; s < symbols; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

/// Random finite value inside the carrier of `s`, at most `max_value`.
inline ExtendedCount random_finite(std::mt19937& rng, Semiring s, std::int64_t max_value) {
  if (s.kind() == SemiringKind::Boolean) return count(std::uniform_int_distribution<int>(0, 1)(rng));
  return count(std::uniform_int_distribution<std::int64_t>(0, max_value)(rng));
}

inline CompositeWeight random_weight(std::mt19937& rng, const WeightAlgebra& alg, std::int64_t max_value,
                                     bool allow_zero = false) {
  for (;;) {
    CompositeWeight w;
    for (const SemiringComponent& c : alg.components()) {
      FeaturedMultiset m(c.features, c.semiring.one());
      for (FeatureIndex f = 0; f < c.features.size(); ++f) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
        m.set(f, random_finite(rng, c.semiring, max_value));
      }
      w.parts.push_back(std::move(m));
    }
    if (allow_zero || !alg.is_zero(w)) return w;
  }
}

struct RandomShape {
  std::size_t max_states = 4;
  std::size_t max_symbols = 3;
  std::int64_t max_value = 3;
  double transition_density = 0.3;
};

/// Random automaton over `alg`. Every triple (from, symbol, to) gets a
/// transition with probability `transition_density`.
inline WeightedAutomaton random_automaton(std::mt19937& rng, const WeightAlgebra& alg, const RandomShape& shape) {
  const std::size_t states = std::uniform_int_distribution<std::size_t>(1, shape.max_states)(rng);
  const std::size_t symbols = std::uniform_int_distribution<std::size_t>(1, shape.max_symbols)(rng);
  std::vector<std::string> names;
  for (std::size_t s = 0; s < symbols; ++s) names.push_back(std::string(1, static_cast<char>('a' + s)));
  WeightedAutomaton a(alg, names);
  for (std::size_t q = 0; q < states; ++q) a.add_state("q" + std::to_string(q));
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution edge(shape.transition_density);
  for (StateId q = 0; q < states; ++q) {
    if (q == 0 || coin(rng)) a.set_initial(q, coin(rng) ? alg.one() : random_weight(rng, alg, shape.max_value));
    if (coin(rng)) a.set_final(q, coin(rng) ? alg.one() : random_weight(rng, alg, shape.max_value));
    for (SymbolId s = 0; s < symbols; ++s) {
      for (StateId r = 0; r < states; ++r) {
        if (edge(rng)) a.add_transition(q, s, r, random_weight(rng, alg, shape.max_value));
      }
    }
  }
  return a;
}

/// Random single-semiring algebra over one or two features, or scalar mode.
inline WeightAlgebra random_single_algebra(std::mt19937& rng, Semiring s) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return WeightAlgebra::scalar(s);
    case 1:
      return WeightAlgebra::single(s, FeatureAlphabet({"x"}));
    default:
      return WeightAlgebra::single(s, FeatureAlphabet({"x", "y"}));
  }
}

/// Every path labelled `word`, by depth-first enumeration over the raw
/// transition list, keeping those whose transitions all pass `keep`.
inline std::vector<Path> labelled_paths(const WeightedAutomaton& a, const Word& word,
                                        const std::function<bool(const Transition&)>& keep = {}) {
  std::vector<Path> out;
  std::function<void(Path&)> walk = [&](Path& p) {
    if (p.symbols.size() == word.size()) {
      if (a.final_if_any(p.states.back())) out.push_back(p);
      return;
    }
    for (const Transition& t : a.transitions()) {
      if (t.from != p.states.back() || t.symbol != word[p.symbols.size()]) continue;
      if (keep && !keep(t)) continue;
      p.states.push_back(t.to);
      p.symbols.push_back(t.symbol);
      walk(p);
      p.states.pop_back();
      p.symbols.pop_back();
    }
  };
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!a.initial_if_any(q)) continue;
    Path p{{q}, {}};
    walk(p);
  }
  return out;
}

/// Classical NFA acceptance by subset construction, ignoring weights other
/// than presence.
inline bool subset_accepts(const Word& word, const std::vector<bool>& initial,
                           const std::vector<bool>& final,
                           const std::vector<std::vector<std::vector<StateId>>>& delta) {
  std::set<StateId> current;
  for (StateId q = 0; q < initial.size(); ++q) {
    if (initial[q]) current.insert(q);
  }
  for (SymbolId s : word) {
    std::set<StateId> next;
    for (StateId q : current) next.insert(delta[q][s].begin(), delta[q][s].end());
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(), [&](StateId q) { return final[q]; });
}

}  // namespace wafm::testing
