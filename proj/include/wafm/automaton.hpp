#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wafm/composite.hpp"

namespace wafm {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
using Word = std::vector<SymbolId>;

struct Transition {
  StateId from;
  SymbolId symbol;
  StateId to;
  CompositeWeight weight;
};

/// q0 a1 q1 ... an qn; `states` has one more element than `symbols`.
struct Path {
  std::vector<StateId> states;
  std::vector<SymbolId> symbols;

  std::size_t length() const noexcept { return symbols.size(); }
  const Word& label() const noexcept { return symbols; }

  friend bool operator==(const Path&, const Path&) = default;
};

/// A weighted automaton over a featured multiset semiring.
///
/// Initial, final and transition weights are stored sparsely; an absent
/// entry denotes the semiring zero. Setting a zero weight removes the
/// entry, so a zero-weight transition is indistinguishable from a missing
/// one. The weight algebra is fixed at construction.
class WeightedAutomaton {
 public:
  WeightedAutomaton(WeightAlgebra algebra, std::vector<std::string> symbols);

  const WeightAlgebra& algebra() const noexcept { return algebra_; }

  std::size_t num_symbols() const noexcept { return symbols_.size(); }
  const std::string& symbol_name(SymbolId s) const { return symbols_.at(s); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::optional<SymbolId> find_symbol(std::string_view name) const;

  StateId add_state(std::string name);
  std::size_t num_states() const noexcept { return state_names_.size(); }
  const std::string& state_name(StateId q) const { return state_names_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const;

  void set_initial(StateId q, CompositeWeight w);
  void set_final(StateId q, CompositeWeight w);
  /// Zero when unset.
  CompositeWeight initial_weight(StateId q) const;
  CompositeWeight final_weight(StateId q) const;
  const CompositeWeight* initial_if_any(StateId q) const;
  const CompositeWeight* final_if_any(StateId q) const;

  /// Adds (from, symbol, to). Zero weights are dropped; a second
  /// transition on the same triple throws InvalidArgument.
  void add_transition(StateId from, SymbolId symbol, StateId to, CompositeWeight w);
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  /// Indices into transitions() of the transitions leaving `q`.
  std::span<const std::uint32_t> outgoing(StateId q) const { return outgoing_.at(q); }
  const Transition* find_transition(StateId from, SymbolId symbol, StateId to) const;

  /// Copy keeping only transitions for which `keep` returns true.
  template <class Pred>
  WeightedAutomaton filter_transitions(Pred keep) const;

  friend bool operator==(const WeightedAutomaton& a, const WeightedAutomaton& b);

 private:
  void check_state(StateId q) const;

  WeightAlgebra algebra_;
  std::vector<std::string> symbols_;
  std::vector<std::string> state_names_;
  std::vector<std::optional<CompositeWeight>> initial_;
  std::vector<std::optional<CompositeWeight>> final_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::uint32_t>> outgoing_;
};

template <class Pred>
WeightedAutomaton WeightedAutomaton::filter_transitions(Pred keep) const {
  WeightedAutomaton out(algebra_, symbols_);
  out.state_names_ = state_names_;
  out.initial_ = initial_;
  out.final_ = final_;
  out.outgoing_.assign(state_names_.size(), {});
  for (const Transition& t : transitions_) {
    if (!keep(t)) continue;
    out.outgoing_[t.from].push_back(static_cast<std::uint32_t>(out.transitions_.size()));
    out.transitions_.push_back(t);
  }
  return out;
}

/// w_i(q0) (x) product of transition weights (x) w_f(qn). Throws
/// InvalidArgument if a step of the path is not a transition.
CompositeWeight path_weight(const WeightedAutomaton& a, const Path& p);

/// Sum over every path labelled `word` of its weight, by explicit path
/// enumeration. Exponential in the word length; meant as a reference.
CompositeWeight word_weight_exhaustive(const WeightedAutomaton& a, const Word& word);

/// Same value as word_weight_exhaustive, computed by forward propagation
/// of per-state weights (relies on otimes distributing over oplus).
CompositeWeight word_weight(const WeightedAutomaton& a, const Word& word);

/// word weight != zero.
bool accepts(const WeightedAutomaton& a, const Word& word);

/// At most one state with non-zero initial weight, and at most one
/// transition per (state, symbol).
bool is_deterministic(const WeightedAutomaton& a);

/// Exactly one state has initial weight one and all others zero.
bool has_single_unit_initial(const WeightedAutomaton& a);

/// States reachable from a state with non-zero initial weight.
std::vector<bool> reachable_states(const WeightedAutomaton& a);
/// States from which a state with non-zero final weight is reachable.
std::vector<bool> coreachable_states(const WeightedAutomaton& a);

/// Symbol names to ids; throws InvalidArgument on an unknown symbol.
Word parse_word(const WeightedAutomaton& a, std::string_view comma_separated);
Word to_word(const WeightedAutomaton& a, const std::vector<std::string>& names);
/// Comma-separated symbol names; the empty word renders as "<empty>".
std::string word_to_string(const WeightedAutomaton& a, const Word& word);

}  // namespace wafm
