#include "wafm/semiring.hpp"

#include <algorithm>

#include "wafm/error.hpp"

namespace wafm {

Semiring Semiring::from_name(std::string_view name) {
  for (SemiringKind kind : kAllSemiringKinds) {
    Semiring s(kind);
    if (s.name() == name) return s;
  }
  throw InvalidArgument("unknown semiring '" + std::string(name) + "'");
}

std::string_view Semiring::name() const noexcept {
  switch (kind_) {
    case SemiringKind::MaxTropical:
      return "max-tropical";
    case SemiringKind::MinTropical:
      return "min-tropical";
    case SemiringKind::MinMin:
      return "min-min";
    case SemiringKind::MaxMax:
      return "max-max";
    case SemiringKind::Boolean:
      return "boolean";
  }
  return "?";
}

ExtendedCount Semiring::zero() const noexcept {
  switch (kind_) {
    case SemiringKind::MaxTropical:
      return ExtendedCount::neg_inf();
    case SemiringKind::MinTropical:
      return ExtendedCount::pos_inf();
    case SemiringKind::MaxMax:
    case SemiringKind::MinMin:
      return ExtendedCount::none();
    case SemiringKind::Boolean:
      return ExtendedCount(0);
  }
  return ExtendedCount();
}

ExtendedCount Semiring::one() const noexcept {
  switch (kind_) {
    case SemiringKind::MaxTropical:
    case SemiringKind::MinTropical:
      return ExtendedCount(0);
    case SemiringKind::MinMin:
      return ExtendedCount::pos_inf();
    case SemiringKind::MaxMax:
      return ExtendedCount::neg_inf();
    case SemiringKind::Boolean:
      return ExtendedCount(1);
  }
  return ExtendedCount();
}

BoundDirection Semiring::direction() const noexcept {
  switch (kind_) {
    case SemiringKind::MaxTropical:
    case SemiringKind::MaxMax:
      return BoundDirection::Lower;
    case SemiringKind::MinTropical:
    case SemiringKind::MinMin:
      return BoundDirection::Upper;
    case SemiringKind::Boolean:
      return BoundDirection::None;
  }
  return BoundDirection::None;
}

bool Semiring::admits(ExtendedCount a) const noexcept {
  switch (kind_) {
    case SemiringKind::MaxTropical:
      return !a.is_pos_inf() && !a.is_none();
    case SemiringKind::MaxMax:
      return !a.is_pos_inf();
    case SemiringKind::MinTropical:
      return !a.is_neg_inf() && !a.is_none();
    case SemiringKind::MinMin:
      return !a.is_neg_inf();
    case SemiringKind::Boolean:
      return a == ExtendedCount(0) || a == ExtendedCount(1);
  }
  return false;
}

void Semiring::check(ExtendedCount a) const {
  if (!admits(a))
    throw DomainError("value " + a.to_string() + " is outside the carrier of " + std::string(name()));
}

ExtendedCount Semiring::plus(ExtendedCount a, ExtendedCount b) const {
  check(a);
  check(b);
  if (a.is_none()) return b;
  if (b.is_none()) return a;
  switch (kind_) {
    case SemiringKind::MaxTropical:
    case SemiringKind::MaxMax:
    case SemiringKind::Boolean:
      return std::max(a, b);
    case SemiringKind::MinTropical:
    case SemiringKind::MinMin:
      return std::min(a, b);
  }
  return a;
}

ExtendedCount Semiring::times(ExtendedCount a, ExtendedCount b) const {
  check(a);
  check(b);
  if (a.is_none() || b.is_none()) return ExtendedCount::none();
  switch (kind_) {
    case SemiringKind::MaxTropical:
    case SemiringKind::MinTropical:
      return a + b;
    case SemiringKind::MaxMax:
      return std::max(a, b);
    case SemiringKind::MinMin:
    case SemiringKind::Boolean:
      return std::min(a, b);
  }
  return a;
}

std::string_view to_string(BoundDirection direction) noexcept {
  switch (direction) {
    case BoundDirection::Lower:
      return "lower";
    case BoundDirection::Upper:
      return "upper";
    case BoundDirection::None:
      return "none";
  }
  return "?";
}

}  // namespace wafm
