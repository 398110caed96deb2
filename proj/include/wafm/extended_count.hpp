#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

namespace wafm {

/// A feature-instance count in N0 extended with -inf and +inf, plus a
/// `none` marker that serves as the absorbing zero of the max-max and
/// min-min semirings (where -inf and +inf are already the unit).
///
/// Ordered None < NegInf < 0 < 1 < ... < PosInf. Addition saturates at the
/// infinities; adding the two opposite infinities, or adding `none`,
/// throws DomainError.
class ExtendedCount {
 public:
  enum class Kind : std::uint8_t { None, NegInf, Finite, PosInf };

  static constexpr std::int64_t kMaxFinite = std::numeric_limits<std::int64_t>::max() - 1;

  constexpr ExtendedCount() noexcept = default;
  constexpr explicit ExtendedCount(std::int64_t n);

  static constexpr ExtendedCount neg_inf() noexcept { return ExtendedCount(kNegCode, Raw{}); }
  static constexpr ExtendedCount pos_inf() noexcept { return ExtendedCount(kPosCode, Raw{}); }
  static constexpr ExtendedCount none() noexcept { return ExtendedCount(kNoneCode, Raw{}); }

  constexpr Kind kind() const noexcept {
    if (code_ == kNoneCode) return Kind::None;
    if (code_ == kNegCode) return Kind::NegInf;
    if (code_ == kPosCode) return Kind::PosInf;
    return Kind::Finite;
  }
  constexpr bool is_finite() const noexcept { return kind() == Kind::Finite; }
  constexpr bool is_neg_inf() const noexcept { return code_ == kNegCode; }
  constexpr bool is_pos_inf() const noexcept { return code_ == kPosCode; }
  constexpr bool is_none() const noexcept { return code_ == kNoneCode; }

  /// The finite count; throws DomainError otherwise.
  std::int64_t value() const;

  /// Order-preserving integer encoding (-2 for none, -1 for -inf, INT64_MAX for +inf).
  constexpr std::int64_t code() const noexcept { return code_; }

  friend constexpr auto operator<=>(ExtendedCount a, ExtendedCount b) noexcept = default;
  friend constexpr bool operator==(ExtendedCount a, ExtendedCount b) noexcept = default;

  friend ExtendedCount operator+(ExtendedCount a, ExtendedCount b);

  std::string to_string() const;

  /// Parses "inf", "+inf", "-inf", "none" or a non-negative decimal count.
  static ExtendedCount parse(std::string_view text);

 private:
  struct Raw {};
  static constexpr std::int64_t kNoneCode = -2;
  static constexpr std::int64_t kNegCode = -1;
  static constexpr std::int64_t kPosCode = std::numeric_limits<std::int64_t>::max();

  constexpr ExtendedCount(std::int64_t code, Raw) noexcept : code_(code) {}

  std::int64_t code_ = 0;
};

std::ostream& operator<<(std::ostream& os, ExtendedCount c);

}  // namespace wafm

#include "wafm/error.hpp"

namespace wafm {

constexpr ExtendedCount::ExtendedCount(std::int64_t n) : code_(n) {
  if (n < 0 || n > kMaxFinite) throw DomainError("count out of range: " + std::to_string(n));
}

}  // namespace wafm
