#pragma once

#include <array>
#include <string>
#include <string_view>

#include "wafm/extended_count.hpp"

namespace wafm {

enum class SemiringKind { MaxTropical, MinTropical, MinMin, MaxMax, Boolean };

/// How a weight constrains a configuration: "at least" (Lower),
/// "at most" (Upper), or not at all (None).
enum class BoundDirection { Lower, Upper, None };

/// One of the numeric semirings over extended counts.
///
///   max-tropical  (max, +,   -inf, 0)     carrier N0 + {-inf}
///   min-tropical  (min, +,   inf,  0)     carrier N0 + {inf}
///   min-min       (min, min, none, inf)   carrier N0 + {inf, none}
///   max-max       (max, max, none, -inf)  carrier N0 + {-inf, none}
///   boolean       (or,  and, 0,    1)     carrier {0, 1}
///
/// The two idempotent semirings would otherwise have zero equal to one, so
/// their zero is a separate `none` value that absorbs under times and is
/// neutral under plus.
///
/// Operands outside the carrier are rejected with DomainError.
class Semiring {
 public:
  constexpr explicit Semiring(SemiringKind kind) noexcept : kind_(kind) {}

  static Semiring max_tropical() noexcept { return Semiring(SemiringKind::MaxTropical); }
  static Semiring min_tropical() noexcept { return Semiring(SemiringKind::MinTropical); }
  static Semiring min_min() noexcept { return Semiring(SemiringKind::MinMin); }
  static Semiring max_max() noexcept { return Semiring(SemiringKind::MaxMax); }
  static Semiring boolean() noexcept { return Semiring(SemiringKind::Boolean); }

  /// Looks up a semiring by its format token, e.g. "max-tropical".
  static Semiring from_name(std::string_view name);

  constexpr SemiringKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept;

  ExtendedCount zero() const noexcept;
  ExtendedCount one() const noexcept;
  BoundDirection direction() const noexcept;

  bool admits(ExtendedCount a) const noexcept;
  /// Throws DomainError unless admits(a).
  void check(ExtendedCount a) const;

  ExtendedCount plus(ExtendedCount a, ExtendedCount b) const;
  ExtendedCount times(ExtendedCount a, ExtendedCount b) const;

  /// Whether otimes is plain addition (the tropical semirings).
  bool is_additive() const noexcept {
    return kind_ == SemiringKind::MaxTropical || kind_ == SemiringKind::MinTropical;
  }

  /// Whether extending a path can only move its weight later in search_order
  /// (a <= a (x) b for every b in the carrier except zero).
  bool descending_search() const noexcept {
    return kind_ == SemiringKind::MinMin || kind_ == SemiringKind::Boolean;
  }

  /// Strict total order used to prioritise paths: the direction in which
  /// otimes moves a weight. Ascending for max-tropical, min-tropical and
  /// max-max; descending for min-min and boolean.
  bool search_less(ExtendedCount a, ExtendedCount b) const noexcept {
    return descending_search() ? b < a : a < b;
  }

  friend constexpr bool operator==(Semiring a, Semiring b) noexcept = default;

 private:
  SemiringKind kind_;
};

inline constexpr std::array<SemiringKind, 5> kAllSemiringKinds = {
    SemiringKind::MaxTropical, SemiringKind::MinTropical, SemiringKind::MinMin,
    SemiringKind::MaxMax, SemiringKind::Boolean};

std::string_view to_string(BoundDirection direction) noexcept;

}  // namespace wafm
