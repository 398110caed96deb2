#include "wafm/composite.hpp"

#include <algorithm>

#include "wafm/error.hpp"

namespace wafm {

WeightAlgebra::WeightAlgebra(FeatureAlphabet features, std::vector<SemiringComponent> components)
    : features_(std::move(features)), components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("a weight algebra needs at least one semiring");
  std::vector<bool> covered(features_.size(), false);
  to_global_.reserve(components_.size());
  for (const auto& comp : components_) {
    std::vector<FeatureIndex> map;
    map.reserve(comp.features.size());
    for (const auto& name : comp.features.names()) {
      auto g = features_.find(name);
      if (!g) throw InvalidArgument("semiring component ranges over undeclared feature '" + name + "'");
      covered[*g] = true;
      map.push_back(*g);
    }
    to_global_.push_back(std::move(map));
  }
  for (FeatureIndex f = 0; f < features_.size(); ++f) {
    if (!covered[f])
      throw InvalidArgument("feature '" + features_.name(f) + "' is not covered by any semiring component");
  }
}

WeightAlgebra WeightAlgebra::single(Semiring semiring, FeatureAlphabet features) {
  return WeightAlgebra(features, {SemiringComponent{semiring, features}});
}

WeightAlgebra WeightAlgebra::scalar(Semiring semiring) {
  WeightAlgebra a = single(semiring, FeatureAlphabet({std::string(kScalarFeature)}));
  a.scalar_ = true;
  return a;
}

CompositeWeight WeightAlgebra::zero() const {
  CompositeWeight w;
  w.parts.reserve(components_.size());
  for (const auto& c : components_) w.parts.push_back(mzero(c.semiring, c.features));
  return w;
}

CompositeWeight WeightAlgebra::one() const {
  CompositeWeight w;
  w.parts.reserve(components_.size());
  for (const auto& c : components_) w.parts.push_back(mone(c.semiring, c.features));
  return w;
}

bool WeightAlgebra::is_zero(const CompositeWeight& w) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const FeaturedMultiset& part = w.parts[i];
    if (!(part == mzero(components_[i].semiring, components_[i].features))) return false;
  }
  return true;
}

bool WeightAlgebra::is_one(const CompositeWeight& w) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!(w.parts[i] == mone(components_[i].semiring, components_[i].features))) return false;
  }
  return true;
}

CompositeWeight WeightAlgebra::plus(const CompositeWeight& a, const CompositeWeight& b) const {
  CompositeWeight w;
  w.parts.reserve(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i)
    w.parts.push_back(mplus(components_[i].semiring, a.parts.at(i), b.parts.at(i)));
  return w;
}

CompositeWeight WeightAlgebra::times(const CompositeWeight& a, const CompositeWeight& b) const {
  CompositeWeight w;
  w.parts.reserve(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i)
    w.parts.push_back(mtimes(components_[i].semiring, a.parts.at(i), b.parts.at(i)));
  return w;
}

void WeightAlgebra::check(const CompositeWeight& w) const {
  if (w.parts.size() != components_.size())
    throw AlphabetMismatch("weight has " + std::to_string(w.parts.size()) + " components, expected " +
                           std::to_string(components_.size()));
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& part = w.parts[i];
    const auto& comp = components_[i];
    if (!(part.alphabet() == comp.features)) throw AlphabetMismatch("weight component over the wrong features");
    comp.semiring.check(part.default_value());
    for (const auto& entry : part.entries()) comp.semiring.check(entry.second);
  }
}

bool WeightAlgebra::satisfies(const FeaturedMultiset& config, const CompositeWeight& w) const {
  const bool aligned = config.alphabet() == features_;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const BoundDirection dir = components_[i].semiring.direction();
    if (dir == BoundDirection::None) continue;
    const FeaturedMultiset& part = w.parts.at(i);
    if (!aligned) {
      if (!wafm::satisfies(config, part, dir)) return false;
      continue;
    }
    const FeatureAlphabet& sub = components_[i].features;
    for (FeatureIndex f = 0; f < sub.size(); ++f) {
      const ExtendedCount c = config[to_global_[i][f]];
      const ExtendedCount v = part[f];
      if (dir == BoundDirection::Lower ? !(v <= c) : !(c <= v)) return false;
    }
  }
  return true;
}

bool WeightAlgebra::all_lower() const noexcept {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& c) { return c.semiring.direction() != BoundDirection::Upper; });
}

bool WeightAlgebra::any_upper() const noexcept { return !all_lower(); }

std::string WeightAlgebra::describe() const {
  if (components_.size() == 1 && components_[0].features == features_)
    return std::string(components_[0].semiring.name());
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += "; ";
    out += components_[i].semiring.name();
    out += " over=";
    const auto& names = components_[i].features.names();
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (j) out += ',';
      out += names[j];
    }
  }
  return out;
}

bool operator==(const WeightAlgebra& a, const WeightAlgebra& b) {
  if (!(a.features_ == b.features_) || a.scalar_ != b.scalar_ || a.components_.size() != b.components_.size())
    return false;
  for (std::size_t i = 0; i < a.components_.size(); ++i) {
    if (!(a.components_[i].semiring == b.components_[i].semiring) ||
        !(a.components_[i].features == b.components_[i].features))
      return false;
  }
  return true;
}

}  // namespace wafm
