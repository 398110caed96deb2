#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wafm/multiset.hpp"

namespace wafm {

/// ⟨lower, upper⟩ with an optional upper bound (absent means `*`).
struct CardinalityInterval {
  std::int64_t lower = 0;
  std::optional<std::int64_t> upper;

  CardinalityInterval() = default;
  CardinalityInterval(std::int64_t lo, std::optional<std::int64_t> hi);

  bool contains(std::int64_t n) const noexcept { return lower <= n && (!upper || n <= *upper); }
  /// `l..u` or `l..*`.
  static CardinalityInterval parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const CardinalityInterval&, const CardinalityInterval&) = default;
};

inline bool interval_contains(const CardinalityInterval& i, std::int64_t n) { return i.contains(n); }

enum class FeatureKind { Abstract, Concrete };

struct CfmFeature {
  std::string name;
  FeatureKind kind = FeatureKind::Concrete;
  std::optional<std::size_t> parent;
  CardinalityInterval card{1, 1};
};

/// Alternative group: the member counts sum to the parent's count.
struct AlternativeGroup {
  std::size_t parent;
  std::vector<std::size_t> members;
};

enum class CrossEdgeKind { Require, Exclude };

struct CrossEdge {
  CrossEdgeKind kind;
  std::size_t source;
  CardinalityInterval source_interval;
  std::size_t target;
  CardinalityInterval target_interval;
};

/// Cardinality-based feature model with a global (instance-count) reading.
class CardinalityFeatureModel {
 public:
  /// Validates the tree shape, group membership and cross-edge endpoints;
  /// throws InvalidArgument otherwise.
  CardinalityFeatureModel(std::vector<CfmFeature> features, std::vector<AlternativeGroup> groups,
                          std::vector<CrossEdge> edges);

  const std::vector<CfmFeature>& features() const noexcept { return features_; }
  const std::vector<AlternativeGroup>& groups() const noexcept { return groups_; }
  const std::vector<CrossEdge>& edges() const noexcept { return edges_; }
  std::size_t root() const noexcept { return root_; }
  std::optional<std::size_t> find(std::string_view name) const;
  const std::string& name(std::size_t f) const { return features_.at(f).name; }

  /// Concrete feature names in declaration order.
  FeatureAlphabet concrete_alphabet() const;

  /// Same model without require/exclude edges.
  CardinalityFeatureModel without_cross_edges() const;

 private:
  std::vector<CfmFeature> features_;
  std::vector<AlternativeGroup> groups_;
  std::vector<CrossEdge> edges_;
  std::size_t root_ = 0;
};

/// Line format: `feature`, `group`, `require`, `exclude` declarations.
/// Errors carry the line and column.
CardinalityFeatureModel parse_cfm(std::string_view text);

struct Violation {
  /// tree:<f>, group:<parent>, require:<src>-><tgt>, exclude:<a>-<b>
  std::string id;
  std::string description;
  std::vector<std::pair<std::string, std::int64_t>> counts;
};

struct ValidationReport {
  bool valid = false;
  std::vector<Violation> violations;
  /// Counts chosen for the abstract features (the valid assignment, or the
  /// one with the fewest violations).
  std::vector<std::pair<std::string, std::int64_t>> abstract_counts;
};

/// Is `m` (concrete feature counts, matched by name, absent = 0) a valid
/// configuration? Abstract counts are existential: every assignment with
/// root = 1 and each abstract count between l and u times its parent's
/// (unbounded upper ends capped at l*parent + 1 + the sum of the concrete
/// counts) is tried. Throws InvalidArgument if `m` names an unknown or
/// abstract feature with a non-zero count, DomainError for infinite counts.
ValidationReport validate_config(const CardinalityFeatureModel& cm, const FeaturedMultiset& m);

std::string to_string(const ValidationReport& r);

}  // namespace wafm
