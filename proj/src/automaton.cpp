#include "wafm/automaton.hpp"

#include <algorithm>
#include <deque>

#include "wafm/error.hpp"

namespace wafm {

WeightedAutomaton::WeightedAutomaton(WeightAlgebra algebra, std::vector<std::string> symbols)
    : algebra_(std::move(algebra)), symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw InvalidArgument("symbol names must not be empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[i] == symbols_[j]) throw InvalidArgument("duplicate symbol '" + symbols_[i] + "'");
    }
  }
}

std::optional<SymbolId> WeightedAutomaton::find_symbol(std::string_view name) const {
  for (SymbolId s = 0; s < symbols_.size(); ++s) {
    if (symbols_[s] == name) return s;
  }
  return std::nullopt;
}

StateId WeightedAutomaton::add_state(std::string name) {
  if (name.empty()) throw InvalidArgument("state names must not be empty");
  if (find_state(name)) throw InvalidArgument("duplicate state '" + name + "'");
  state_names_.push_back(std::move(name));
  initial_.emplace_back();
  final_.emplace_back();
  outgoing_.emplace_back();
  return static_cast<StateId>(state_names_.size() - 1);
}

std::optional<StateId> WeightedAutomaton::find_state(std::string_view name) const {
  for (StateId q = 0; q < state_names_.size(); ++q) {
    if (state_names_[q] == name) return q;
  }
  return std::nullopt;
}

void WeightedAutomaton::check_state(StateId q) const {
  if (q >= state_names_.size()) throw InvalidArgument("state id out of range");
}

void WeightedAutomaton::set_initial(StateId q, CompositeWeight w) {
  check_state(q);
  algebra_.check(w);
  if (algebra_.is_zero(w))
    initial_[q].reset();
  else
    initial_[q] = std::move(w);
}

void WeightedAutomaton::set_final(StateId q, CompositeWeight w) {
  check_state(q);
  algebra_.check(w);
  if (algebra_.is_zero(w))
    final_[q].reset();
  else
    final_[q] = std::move(w);
}

CompositeWeight WeightedAutomaton::initial_weight(StateId q) const {
  check_state(q);
  return initial_[q] ? *initial_[q] : algebra_.zero();
}

CompositeWeight WeightedAutomaton::final_weight(StateId q) const {
  check_state(q);
  return final_[q] ? *final_[q] : algebra_.zero();
}

const CompositeWeight* WeightedAutomaton::initial_if_any(StateId q) const {
  check_state(q);
  return initial_[q] ? &*initial_[q] : nullptr;
}

const CompositeWeight* WeightedAutomaton::final_if_any(StateId q) const {
  check_state(q);
  return final_[q] ? &*final_[q] : nullptr;
}

void WeightedAutomaton::add_transition(StateId from, SymbolId symbol, StateId to, CompositeWeight w) {
  check_state(from);
  check_state(to);
  if (symbol >= symbols_.size()) throw InvalidArgument("symbol id out of range");
  algebra_.check(w);
  if (find_transition(from, symbol, to))
    throw InvalidArgument("duplicate transition " + state_names_[from] + " " + symbols_[symbol] + " " +
                          state_names_[to]);
  if (algebra_.is_zero(w)) return;
  outgoing_[from].push_back(static_cast<std::uint32_t>(transitions_.size()));
  transitions_.push_back(Transition{from, symbol, to, std::move(w)});
}

const Transition* WeightedAutomaton::find_transition(StateId from, SymbolId symbol, StateId to) const {
  for (std::uint32_t i : outgoing_.at(from)) {
    const Transition& t = transitions_[i];
    if (t.symbol == symbol && t.to == to) return &t;
  }
  return nullptr;
}

bool operator==(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  if (!(a.algebra_ == b.algebra_) || a.symbols_ != b.symbols_ || a.state_names_ != b.state_names_ ||
      a.initial_ != b.initial_ || a.final_ != b.final_ || a.transitions_.size() != b.transitions_.size())
    return false;
  for (const Transition& t : a.transitions_) {
    const Transition* u = b.find_transition(t.from, t.symbol, t.to);
    if (!u || !(u->weight == t.weight)) return false;
  }
  return true;
}

CompositeWeight path_weight(const WeightedAutomaton& a, const Path& p) {
  if (p.states.size() != p.symbols.size() + 1) throw InvalidArgument("malformed path");
  const WeightAlgebra& alg = a.algebra();
  CompositeWeight w = a.initial_weight(p.states.front());
  for (std::size_t i = 0; i < p.symbols.size(); ++i) {
    const Transition* t = a.find_transition(p.states[i], p.symbols[i], p.states[i + 1]);
    if (!t) throw InvalidArgument("path uses a missing transition at step " + std::to_string(i + 1));
    w = alg.times(w, t->weight);
  }
  return alg.times(w, a.final_weight(p.states.back()));
}

namespace {

void enumerate_paths(const WeightedAutomaton& a, const Word& word, std::size_t pos, StateId q,
                     const CompositeWeight& prefix, CompositeWeight& acc) {
  const WeightAlgebra& alg = a.algebra();
  if (pos == word.size()) {
    acc = alg.plus(acc, alg.times(prefix, a.final_weight(q)));
    return;
  }
  for (std::uint32_t i : a.outgoing(q)) {
    const Transition& t = a.transitions()[i];
    if (t.symbol != word[pos]) continue;
    enumerate_paths(a, word, pos + 1, t.to, alg.times(prefix, t.weight), acc);
  }
}

void check_word(const WeightedAutomaton& a, const Word& word) {
  for (SymbolId s : word) {
    if (s >= a.num_symbols()) throw InvalidArgument("word contains an unknown symbol");
  }
}

}  // namespace

CompositeWeight word_weight_exhaustive(const WeightedAutomaton& a, const Word& word) {
  check_word(a, word);
  CompositeWeight acc = a.algebra().zero();
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (const CompositeWeight* init = a.initial_if_any(q)) enumerate_paths(a, word, 0, q, *init, acc);
  }
  return acc;
}

CompositeWeight word_weight(const WeightedAutomaton& a, const Word& word) {
  check_word(a, word);
  const WeightAlgebra& alg = a.algebra();
  std::vector<std::optional<CompositeWeight>> current(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (const CompositeWeight* init = a.initial_if_any(q)) current[q] = *init;
  }
  for (SymbolId s : word) {
    std::vector<std::optional<CompositeWeight>> next(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
      if (!current[q]) continue;
      for (std::uint32_t i : a.outgoing(q)) {
        const Transition& t = a.transitions()[i];
        if (t.symbol != s) continue;
        CompositeWeight w = alg.times(*current[q], t.weight);
        next[t.to] = next[t.to] ? alg.plus(*next[t.to], w) : std::move(w);
      }
    }
    current = std::move(next);
  }
  CompositeWeight acc = alg.zero();
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (!current[q]) continue;
    if (const CompositeWeight* fin = a.final_if_any(q)) acc = alg.plus(acc, alg.times(*current[q], *fin));
  }
  return acc;
}

bool accepts(const WeightedAutomaton& a, const Word& word) { return !a.algebra().is_zero(word_weight(a, word)); }

bool is_deterministic(const WeightedAutomaton& a) {
  std::size_t initials = 0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.initial_if_any(q)) ++initials;
  }
  if (initials > 1) return false;
  for (StateId q = 0; q < a.num_states(); ++q) {
    std::vector<bool> used(a.num_symbols(), false);
    for (std::uint32_t i : a.outgoing(q)) {
      const SymbolId s = a.transitions()[i].symbol;
      if (used[s]) return false;
      used[s] = true;
    }
  }
  return true;
}

bool has_single_unit_initial(const WeightedAutomaton& a) {
  std::size_t units = 0;
  for (StateId q = 0; q < a.num_states(); ++q) {
    const CompositeWeight* init = a.initial_if_any(q);
    if (!init) continue;
    if (!a.algebra().is_one(*init)) return false;
    ++units;
  }
  return units == 1;
}

std::vector<bool> reachable_states(const WeightedAutomaton& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.initial_if_any(q)) {
      seen[q] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (std::uint32_t i : a.outgoing(q)) {
      const StateId r = a.transitions()[i].to;
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable_states(const WeightedAutomaton& a) {
  std::vector<std::vector<StateId>> incoming(a.num_states());
  for (const Transition& t : a.transitions()) incoming[t.to].push_back(t.from);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<StateId> queue;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (a.final_if_any(q)) {
      seen[q] = true;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (StateId p : incoming[q]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

Word to_word(const WeightedAutomaton& a, const std::vector<std::string>& names) {
  Word w;
  w.reserve(names.size());
  for (const auto& n : names) {
    auto s = a.find_symbol(n);
    if (!s) throw InvalidArgument("unknown symbol '" + n + "'");
    w.push_back(*s);
  }
  return w;
}

Word parse_word(const WeightedAutomaton& a, std::string_view text) {
  if (text == "<empty>") return {};
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) names.emplace_back(item);
    start = end + 1;
  }
  return to_word(a, names);
}

std::string word_to_string(const WeightedAutomaton& a, const Word& word) {
  if (word.empty()) return "<empty>";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ',';
    out += a.symbol_name(word[i]);
  }
  return out;
}

}  // namespace wafm
