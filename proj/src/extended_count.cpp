#include "wafm/extended_count.hpp"

#include <charconv>

namespace wafm {

std::int64_t ExtendedCount::value() const {
  if (!is_finite()) throw DomainError(to_string() + " has no finite value");
  return code_;
}

ExtendedCount operator+(ExtendedCount a, ExtendedCount b) {
  if (a.is_none() || b.is_none()) throw DomainError("none cannot be added");
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    throw DomainError("inf + -inf is undefined");
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtendedCount::pos_inf();
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtendedCount::neg_inf();
  if (a.code_ > ExtendedCount::kMaxFinite - b.code_) throw DomainError("count overflow");
  return ExtendedCount(a.code_ + b.code_);
}

std::string ExtendedCount::to_string() const {
  switch (kind()) {
    case Kind::None:
      return "none";
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "inf";
    case Kind::Finite:
      break;
  }
  return std::to_string(code_);
}

ExtendedCount ExtendedCount::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  if (text == "none") return none();
  if (text.empty()) throw ParseError("empty count literal");
  std::int64_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("malformed count literal '" + std::string(text) + "'");
  if (n < 0) throw ParseError("negative count literal '" + std::string(text) + "'");
  return ExtendedCount(n);
}

std::ostream& operator<<(std::ostream& os, ExtendedCount c) { return os << c.to_string(); }

}  // namespace wafm
