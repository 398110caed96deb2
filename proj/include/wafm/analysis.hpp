#pragma once

#include <optional>
#include <string>

#include "wafm/pathsearch.hpp"

namespace wafm {

struct Witness {
  Word word;
  CompositeWeight weight;
};

struct AnalysisVerdict {
  bool verdict = false;
  std::optional<Witness> witness;
  /// For the boundedness problems: a configuration that realises the
  /// bound (the empty configuration, or the smallest universal one).
  std::optional<FeaturedMultiset> bound;
  std::size_t explored_paths = 0;
  std::size_t k_used = 0;
  /// The verdict does not depend on k.
  bool exact = false;
  StopReason stop = StopReason::FrontierExhausted;
};

/// Defaults for a search run by an analysis. The (state, weight) guard is
/// only sound for verdicts on deterministic automata, so it is enabled
/// exactly for those unless overridden.
SearchOptions default_search_options(const WeightedAutomaton& a);

/// Does some accepted word have a weight that `m` satisfies?
///
/// Complete paths are judged on their word weight (the oplus over every
/// path with that label). Partial paths are pruned once they violate `m`
/// in a component whose violations are permanent: max-max, max-tropical
/// without -inf entries (otimes never decreases an entry) and min-min
/// (otimes never increases one). Exhausting the frontier therefore proves
/// emptiness.
AnalysisVerdict non_emptiness(const WeightedAutomaton& a, const FeaturedMultiset& m, std::size_t k,
                              const ExplorationOrder& order, std::optional<SearchOptions> options = std::nullopt);

/// Is every accepted word's weight satisfied by `m`? Stops at the first
/// counterexample, which makes a false verdict exact.
AnalysisVerdict universality(const WeightedAutomaton& a, const FeaturedMultiset& m, std::size_t k,
                             const ExplorationOrder& order, std::optional<SearchOptions> options = std::nullopt);

/// Is there a configuration for which emptiness holds?
///
/// Without upper-bounding components satisfaction is monotone in the
/// configuration, so this is emptiness at the empty configuration. With
/// them, the empty configuration and one exceeding every finite weight
/// entry are both tried; a false verdict is then exact only for pure
/// min-min algebras.
AnalysisVerdict lower_boundedness(const WeightedAutomaton& a, std::size_t k, const ExplorationOrder& order,
                                  std::optional<SearchOptions> options = std::nullopt);

enum class BoundednessMethod { Auto, Exact, Bounded };

/// Is there a configuration for which universality holds?
///
/// Exact method: per feature, the oplus of every accepting path's entry,
/// by relaxation over the trimmed automaton. A max-tropical entry that
/// still grows after |Q| rounds lies on a positive cycle and is unbounded.
/// The verdict is true when every lower bound is finite and, where lower
/// and upper components share a feature, below the upper bound. Needs
/// every path to be accepting (no absorbing entries); Auto falls back to
/// the bounded method otherwise.
///
/// Bounded method: the candidate configuration joins the lower-bounding
/// parts of all paths of length <= 2|Q|, and universality is checked for it
/// with the k-bounded search. Never exact.
AnalysisVerdict upper_boundedness(const WeightedAutomaton& a, std::size_t k, const ExplorationOrder& order,
                                  BoundednessMethod method = BoundednessMethod::Auto,
                                  std::optional<SearchOptions> options = std::nullopt);

/// Copy of `a` without the transitions whose weight `m` does not satisfy.
/// Only defined when otimes is min or max in every component; throws
/// UnsupportedOperation for tropical components.
WeightedAutomaton project(const WeightedAutomaton& a, const FeaturedMultiset& m);

/// Re-expresses a configuration over the automaton's features, checking it
/// is finite and names only known features.
FeaturedMultiset align_configuration(const WeightAlgebra& algebra, const FeaturedMultiset& m);

/// `PROBLEM=universality CONFIG={..} VERDICT=false EXACT=true K=1500 WITNESS=a,b`
std::string report_line(const WeightedAutomaton& a, std::string_view problem,
                        const std::optional<FeaturedMultiset>& config, const AnalysisVerdict& v);

}  // namespace wafm
