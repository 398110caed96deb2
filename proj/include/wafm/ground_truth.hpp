#pragma once

#include <optional>
#include <vector>

#include "wafm/automaton.hpp"

namespace wafm {

// Exact decision procedures used as the reference for benchmark
// correctness. They do not use the path search. Supported automata are
// deterministic with max-tropical (no -inf entries) or max-max components
// only; anything else throws UnsupportedOperation.

bool ground_truth_supported(const WeightedAutomaton& a);

/// Per global feature, the largest value any accepted word's weight takes
/// (nullopt when unbounded). Finite entries of an empty language are -inf.
std::vector<std::optional<ExtendedCount>> language_supremum(const WeightedAutomaton& a);

bool truth_non_emptiness(const WeightedAutomaton& a, const FeaturedMultiset& m);
bool truth_universality(const WeightedAutomaton& a, const FeaturedMultiset& m);
bool truth_lower_boundedness(const WeightedAutomaton& a);
bool truth_upper_boundedness(const WeightedAutomaton& a);

}  // namespace wafm
