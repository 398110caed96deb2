#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wafm/automaton.hpp"

namespace wafm {

/// Reads the line-oriented automaton format:
///
///     semiring max-tropical          # or: semiring max-max over=A,B; min-min over=A,B
///     features Team Player           # omitted in scalar mode
///     alphabet addTeam addPlayer
///     state q1 initial               # initial/final weight one
///     state q2 final={Team=1}        # explicit weight
///     trans q1 q2 addTeam {Team=1}   # omitted weight = one
///
/// Weight literals list the features that differ from the semiring's one;
/// composite weights join one literal per component with `|`. In scalar
/// mode a weight is a bare count (`2`, `inf`) or `{2}`.
///
/// `semiring_override` replaces the declared single semiring, reading the
/// same literals under another algebra. Errors are ParseErrors carrying the
/// offending line and column.
WeightedAutomaton parse_automaton(std::string_view text, std::optional<Semiring> semiring_override = std::nullopt);

/// Reads a file; the file name is prefixed to error messages.
WeightedAutomaton load_automaton(const std::string& path, std::optional<Semiring> semiring_override = std::nullopt);

/// Canonical document; parse_automaton(serialize_automaton(a)) == a.
std::string serialize_automaton(const WeightedAutomaton& a);

/// Weight literal in document syntax.
std::string weight_literal(const WeightAlgebra& algebra, const CompositeWeight& w);

/// Parses a weight literal in document syntax for `algebra`.
CompositeWeight parse_weight(const WeightAlgebra& algebra, std::string_view text);

/// Graphviz rendering.
std::string to_dot(const WeightedAutomaton& a);

std::string read_file(const std::string& path);

}  // namespace wafm
