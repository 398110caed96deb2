#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wafm/extended_count.hpp"
#include "wafm/semiring.hpp"

namespace wafm {

using FeatureIndex = std::uint32_t;

/// An ordered, non-empty list of distinct feature names. Cheap to copy;
/// copies share the same underlying list.
class FeatureAlphabet {
 public:
  explicit FeatureAlphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return impl_->names.size(); }
  const std::string& name(FeatureIndex i) const { return impl_->names.at(i); }
  const std::vector<std::string>& names() const noexcept { return impl_->names; }
  std::optional<FeatureIndex> find(std::string_view name) const;
  /// Throws InvalidArgument if the feature is not part of the alphabet.
  FeatureIndex index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  friend bool operator==(const FeatureAlphabet& a, const FeatureAlphabet& b) {
    return a.impl_ == b.impl_ || a.impl_->names == b.impl_->names;
  }

 private:
  struct Impl {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, FeatureIndex>> sorted;
  };
  std::shared_ptr<const Impl> impl_;
};

/// A map from features to extended counts with a declared default.
///
/// Storage is sparse: only features whose value differs from the default
/// are stored, sorted by feature index. Equality is semantic (compares
/// the value of every feature), so two multisets with different defaults
/// may still compare equal.
///
/// As a configuration the default is 0 and every value is finite. As a
/// transition weight the default is the otimes-identity of the governing
/// semiring, so omitted features are neutral along paths.
class FeaturedMultiset {
 public:
  using Entry = std::pair<FeatureIndex, ExtendedCount>;

  explicit FeaturedMultiset(FeatureAlphabet alphabet, ExtendedCount default_value = ExtendedCount(0));

  /// Builds from unordered, possibly redundant entries and canonicalises.
  static FeaturedMultiset from_entries(FeatureAlphabet alphabet, ExtendedCount default_value,
                                       std::vector<Entry> entries);

  /// Uniform multiset mapping every feature to `value`.
  static FeaturedMultiset constant(FeatureAlphabet alphabet, ExtendedCount value) {
    return FeaturedMultiset(std::move(alphabet), value);
  }

  const FeatureAlphabet& alphabet() const noexcept { return alphabet_; }
  ExtendedCount default_value() const noexcept { return default_; }
  std::span<const Entry> entries() const noexcept { return entries_; }

  ExtendedCount operator[](FeatureIndex i) const;
  ExtendedCount at(std::string_view feature) const;

  void set(FeatureIndex i, ExtendedCount value);
  void set(std::string_view feature, ExtendedCount value) { set(alphabet_.index_of(feature), value); }

  /// True when every value is finite and the default is 0.
  bool is_configuration() const noexcept;
  /// True when every feature maps to `value`.
  bool is_uniform(ExtendedCount value) const noexcept { return default_ == value && entries_.empty(); }

  /// Same semantics, re-expressed with another default.
  FeaturedMultiset with_default(ExtendedCount default_value) const;

  friend bool operator==(const FeaturedMultiset& a, const FeaturedMultiset& b);

  /// Element-wise combination; the result default is op(default_a, default_b).
  template <class Op>
  static FeaturedMultiset combine(const FeaturedMultiset& a, const FeaturedMultiset& b, Op op);

 private:
  void require_same_alphabet(const FeaturedMultiset& other) const;

  FeatureAlphabet alphabet_;
  ExtendedCount default_;
  std::vector<Entry> entries_;
};

template <class Op>
FeaturedMultiset FeaturedMultiset::combine(const FeaturedMultiset& a, const FeaturedMultiset& b, Op op) {
  a.require_same_alphabet(b);
  FeaturedMultiset out(a.alphabet_, op(a.default_, b.default_));
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto ia = a.entries_.begin();
  auto ib = b.entries_.begin();
  while (ia != a.entries_.end() || ib != b.entries_.end()) {
    FeatureIndex f;
    ExtendedCount va = a.default_;
    ExtendedCount vb = b.default_;
    if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
      f = ia->first;
      va = (ia++)->second;
    } else if (ia == a.entries_.end() || ib->first < ia->first) {
      f = ib->first;
      vb = (ib++)->second;
    } else {
      f = ia->first;
      va = (ia++)->second;
      vb = (ib++)->second;
    }
    ExtendedCount v = op(va, vb);
    if (v != out.default_) out.entries_.emplace_back(f, v);
  }
  return out;
}

/// Multiset semiring addition: element-wise s.plus.
FeaturedMultiset mplus(const Semiring& s, const FeaturedMultiset& a, const FeaturedMultiset& b);
/// Multiset semiring multiplication: element-wise s.times.
FeaturedMultiset mtimes(const Semiring& s, const FeaturedMultiset& a, const FeaturedMultiset& b);
/// The multiset semiring's zero and one over an alphabet.
FeaturedMultiset mzero(const Semiring& s, const FeatureAlphabet& alphabet);
FeaturedMultiset mone(const Semiring& s, const FeatureAlphabet& alphabet);

// Lifted set operations on configurations: element-wise max, min and +.
FeaturedMultiset lift_union(const FeaturedMultiset& a, const FeaturedMultiset& b);
FeaturedMultiset lift_intersection(const FeaturedMultiset& a, const FeaturedMultiset& b);
FeaturedMultiset lift_sum(const FeaturedMultiset& a, const FeaturedMultiset& b);

/// a(f) <= b(f) for every feature f.
bool submultiset(const FeaturedMultiset& a, const FeaturedMultiset& b);

/// Whether a configuration satisfies a single-semiring weight. The weight
/// may be over a subset of the configuration's features; features are
/// matched by name. Lower: weight <= config. Upper: config <= weight.
/// None: always satisfied.
bool satisfies(const FeaturedMultiset& config, const FeaturedMultiset& weight, BoundDirection direction);

/// Literal syntax `{Team=2, Player=inf}`; omitted features take `default_value`.
FeaturedMultiset parse_multiset(std::string_view text, const FeatureAlphabet& alphabet,
                                ExtendedCount default_value = ExtendedCount(0));
/// Convenience for configurations (default 0, finite values only).
FeaturedMultiset parse_configuration(std::string_view text, const FeatureAlphabet& alphabet);

/// Canonical literal: non-default entries in alphabet order, `{A=1, B=inf}`.
std::string to_string(const FeaturedMultiset& m);
/// Same without spaces, for single-token report fields.
std::string to_compact_string(const FeaturedMultiset& m);

}  // namespace wafm
