#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wafm/automaton.hpp"

namespace wafm {

/// Explicit priority order over (weight, path) pairs for best-first search.
///
/// Weights are compared stage by stage on the listed features (in every
/// component that contains the feature), then lexicographically on the
/// remaining features in alphabet order, which refines the sub-multiset
/// order. Each value is compared in its semiring's search direction.
/// Remaining ties go to the shorter path, then to the lexicographically
/// smaller label (by symbol declaration order).
class ExplorationOrder {
 public:
  ExplorationOrder() = default;
  explicit ExplorationOrder(std::vector<std::string> stages);

  /// Parses "Player,Team,ProcMod"; an empty string means no stages.
  static ExplorationOrder parse(std::string_view comma_separated);

  const std::vector<std::string>& stages() const noexcept { return stages_; }

  /// Order-preserving integer key of a weight: compare keys lexicographically.
  /// Throws InvalidArgument if a stage names a feature the algebra lacks.
  std::vector<std::int64_t> key(const WeightAlgebra& algebra, const CompositeWeight& w) const;

  /// Strict weak ordering "a before b" on (weight, path) pairs.
  bool before(const WeightAlgebra& algebra, const CompositeWeight& wa, const Path& pa, const CompositeWeight& wb,
              const Path& pb) const;

  std::string to_string() const;

 private:
  std::vector<std::string> stages_;
};

enum class FilterDecision { Continue, SkipPath, TerminateSearch };

/// What the weight filter sees. `complete` paths carry the full weight
/// including the final weight of the last state; partial paths carry the
/// weight accumulated so far.
struct Candidate {
  const Path& path;
  const CompositeWeight& weight;
  bool complete;
};

/// Consulted each time the search takes a path off the frontier.
/// SkipPath drops it (a complete path is not recorded; a partial one is
/// not extended). TerminateSearch stops the search; a complete path is
/// recorded first. The engine cannot check it, but SkipPath must only be
/// returned when no extension of the path could change the caller's verdict.
using WeightFilter = std::function<FilterDecision(const Candidate&)>;

struct PathEntry {
  Path path;
  CompositeWeight weight;
};

/// At most k accepting paths, kept sorted by an exploration order.
class BoundedPathList {
 public:
  BoundedPathList(std::size_t k, const WeightAlgebra& algebra, ExplorationOrder order);

  std::size_t bound() const noexcept { return k_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool full() const noexcept { return entries_.size() >= k_; }
  const std::vector<PathEntry>& entries() const noexcept { return entries_; }

  /// Inserts in order; beyond k the worst entry is dropped.
  void insert(PathEntry entry);

 private:
  std::size_t k_;
  const WeightAlgebra* algebra_;
  ExplorationOrder order_;
  std::vector<PathEntry> entries_;
};

enum class StopReason { KReached, FrontierExhausted, Terminated, BudgetExhausted };

std::string_view to_string(StopReason reason) noexcept;

struct SearchOptions {
  /// Skip a partial path whose (state, weight) pair was already expanded.
  /// Keeps the set of reachable (state, weight) pairs, and therefore the set
  /// of accepting path weights, but not every path or word.
  bool cycle_guard = true;
  /// Hard cap on frontier expansions.
  std::size_t max_expansions = 2'000'000;
};

struct SearchResult {
  BoundedPathList paths;
  StopReason stop;
  /// Partial paths taken off the frontier and expanded.
  std::size_t expansions = 0;
};

/// Best-first enumeration of up to k accepting paths in `order`.
///
/// States that cannot reach a final state are never entered. With weights
/// that only move later in the order when extended (true for every
/// catalogue semiring over non-negative counts), paths come out sorted and
/// the result for k is a prefix of the result for any larger k.
SearchResult k_bounded_search(const WeightedAutomaton& a, std::size_t k, const ExplorationOrder& order,
                              const WeightFilter& filter = {}, const SearchOptions& options = {});

struct WordWeight {
  Word word;
  CompositeWeight weight;
};

/// The k-bounded search result grouped by label, oplus-ing the weights of
/// paths sharing a label. Words appear in order of their first path.
std::vector<WordWeight> accepted_words_stream(const WeightedAutomaton& a, std::size_t k,
                                              const ExplorationOrder& order, const WeightFilter& filter = {},
                                              const SearchOptions& options = {});

/// Groups already-computed search entries by label.
std::vector<WordWeight> group_by_word(const WeightAlgebra& algebra, const std::vector<PathEntry>& entries);

}  // namespace wafm
