#pragma once

#include <optional>
#include <string>
#include <variant>

#include "wafm/analysis.hpp"
#include "wafm/cfm.hpp"

namespace wafm {

enum class MappingDirection { WordToConfig, ConfigToWord };

struct ConsistencyReport {
  MappingDirection direction;
  std::variant<Word, FeaturedMultiset> subject;
  bool verdict = false;
  std::optional<std::variant<Word, FeaturedMultiset>> witness;
  bool exact = false;
};

/// Is there a valid configuration of `cm` that satisfies the weight of
/// `word`? Starts from the smallest configuration meeting the word's lower
/// bounds and tries completions breadth-first by the number of added
/// instances, at most `budget` per feature, so the first witness found adds
/// as few instances as possible. A false verdict is never exact.
///
/// Automaton features are matched to concrete CFM features by name. Throws
/// InvalidArgument if `word` is not accepted, if the automaton has an
/// upper-bounding component only, or if it uses a feature the model lacks.
ConsistencyReport config_exists_for_word(const CardinalityFeatureModel& cm, const WeightedAutomaton& a,
                                         const Word& word, std::int64_t budget);

/// Non-emptiness for a configuration that must first be valid for `cm`;
/// throws InvalidArgument listing the violations otherwise.
ConsistencyReport word_exists_for_config(const CardinalityFeatureModel& cm, const WeightedAutomaton& a,
                                         const FeaturedMultiset& m, std::size_t k, const ExplorationOrder& order);

/// `DIRECTION=word-to-config SUBJECT=.. VERDICT=.. EXACT=.. WITNESS=..`
std::string report_line(const WeightedAutomaton& a, const ConsistencyReport& r);

}  // namespace wafm
