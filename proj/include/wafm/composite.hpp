#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wafm/multiset.hpp"
#include "wafm/semiring.hpp"

namespace wafm {

/// One factor of a multi-weighted semiring: a numeric semiring lifted to
/// multisets over a subset of the model's features.
struct SemiringComponent {
  Semiring semiring;
  FeatureAlphabet features;
};

/// A weight of a multi-weighted automaton: one multiset per component.
/// A plain multiset semiring is the one-component case.
struct CompositeWeight {
  std::vector<FeaturedMultiset> parts;

  friend bool operator==(const CompositeWeight&, const CompositeWeight&) = default;
};

/// The (possibly composite) featured multiset semiring an automaton is
/// weighted over. Operations are component-wise.
///
/// Every component's feature subset must be drawn from `features`, and
/// together they must cover it. Subsets may overlap.
class WeightAlgebra {
 public:
  WeightAlgebra(FeatureAlphabet features, std::vector<SemiringComponent> components);

  /// Single semiring over all features.
  static WeightAlgebra single(Semiring semiring, FeatureAlphabet features);
  /// Scalar mode: the numeric semiring itself, modelled as a multiset
  /// over the one implicit feature `kScalarFeature`.
  static WeightAlgebra scalar(Semiring semiring);

  static constexpr std::string_view kScalarFeature = "value";

  const FeatureAlphabet& features() const noexcept { return features_; }
  const std::vector<SemiringComponent>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  bool is_scalar() const noexcept { return scalar_; }
  bool is_composite() const noexcept { return components_.size() > 1; }

  /// Global feature index of local feature `local` in component `c`.
  FeatureIndex global_index(std::size_t c, FeatureIndex local) const { return to_global_[c][local]; }

  CompositeWeight zero() const;
  CompositeWeight one() const;
  bool is_zero(const CompositeWeight& w) const;
  bool is_one(const CompositeWeight& w) const;

  CompositeWeight plus(const CompositeWeight& a, const CompositeWeight& b) const;
  CompositeWeight times(const CompositeWeight& a, const CompositeWeight& b) const;

  /// Throws unless `w` has one part per component, over the right subsets,
  /// with every value inside its semiring's carrier.
  void check(const CompositeWeight& w) const;

  /// Conjunction over components, each read in its semiring's direction.
  bool satisfies(const FeaturedMultiset& config, const CompositeWeight& w) const;

  /// Whether every component bounds configurations from below (or not at all).
  bool all_lower() const noexcept;
  bool any_upper() const noexcept;

  /// `semiring max-max over=A,B; min-min over=A,B` style declaration body.
  std::string describe() const;

  friend bool operator==(const WeightAlgebra& a, const WeightAlgebra& b);

 private:
  FeatureAlphabet features_;
  std::vector<SemiringComponent> components_;
  std::vector<std::vector<FeatureIndex>> to_global_;
  bool scalar_ = false;
};

/// Wraps a single-semiring multiset as a one-part composite weight.
inline CompositeWeight as_weight(FeaturedMultiset m) { return CompositeWeight{{std::move(m)}}; }

}  // namespace wafm
