#include "wafm/multiset.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wafm/error.hpp"

namespace wafm {

FeatureAlphabet::FeatureAlphabet(std::vector<std::string> names) {
  if (names.empty()) throw InvalidArgument("feature alphabet must not be empty");
  auto impl = std::make_shared<Impl>();
  impl->sorted.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InvalidArgument("feature names must not be empty");
    impl->sorted.emplace_back(names[i], static_cast<FeatureIndex>(i));
  }
  std::sort(impl->sorted.begin(), impl->sorted.end());
  for (std::size_t i = 1; i < impl->sorted.size(); ++i) {
    if (impl->sorted[i].first == impl->sorted[i - 1].first)
      throw InvalidArgument("duplicate feature '" + impl->sorted[i].first + "'");
  }
  impl->names = std::move(names);
  impl_ = std::move(impl);
}

std::optional<FeatureIndex> FeatureAlphabet::find(std::string_view name) const {
  const auto& sorted = impl_->sorted;
  auto it = std::lower_bound(sorted.begin(), sorted.end(), name,
                             [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == sorted.end() || it->first != name) return std::nullopt;
  return it->second;
}

FeatureIndex FeatureAlphabet::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InvalidArgument("unknown feature '" + std::string(name) + "'");
}

FeaturedMultiset::FeaturedMultiset(FeatureAlphabet alphabet, ExtendedCount default_value)
    : alphabet_(std::move(alphabet)), default_(default_value) {}

FeaturedMultiset FeaturedMultiset::from_entries(FeatureAlphabet alphabet, ExtendedCount default_value,
                                                std::vector<Entry> entries) {
  FeaturedMultiset m(std::move(alphabet), default_value);
  for (const auto& [f, v] : entries) m.set(f, v);
  return m;
}

ExtendedCount FeaturedMultiset::operator[](FeatureIndex i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, FeatureIndex key) { return e.first < key; });
  if (it != entries_.end() && it->first == i) return it->second;
  return default_;
}

ExtendedCount FeaturedMultiset::at(std::string_view feature) const {
  return (*this)[alphabet_.index_of(feature)];
}

void FeaturedMultiset::set(FeatureIndex i, ExtendedCount value) {
  if (i >= alphabet_.size()) throw InvalidArgument("feature index out of range");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, FeatureIndex key) { return e.first < key; });
  const bool present = it != entries_.end() && it->first == i;
  if (value == default_) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->second = value;
  } else {
    entries_.insert(it, Entry{i, value});
  }
}

bool FeaturedMultiset::is_configuration() const noexcept {
  if (default_ != ExtendedCount(0)) return false;
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second.is_finite(); });
}

FeaturedMultiset FeaturedMultiset::with_default(ExtendedCount default_value) const {
  FeaturedMultiset out(alphabet_, default_value);
  for (FeatureIndex f = 0; f < alphabet_.size(); ++f) out.set(f, (*this)[f]);
  return out;
}

bool operator==(const FeaturedMultiset& a, const FeaturedMultiset& b) {
  if (!(a.alphabet_ == b.alphabet_)) return false;
  if (a.default_ == b.default_) return a.entries_ == b.entries_;
  for (FeatureIndex f = 0; f < a.alphabet_.size(); ++f) {
    if (a[f] != b[f]) return false;
  }
  return true;
}

void FeaturedMultiset::require_same_alphabet(const FeaturedMultiset& other) const {
  if (!(alphabet_ == other.alphabet_)) throw AlphabetMismatch("multisets are over different feature alphabets");
}

FeaturedMultiset mplus(const Semiring& s, const FeaturedMultiset& a, const FeaturedMultiset& b) {
  return FeaturedMultiset::combine(a, b, [&s](ExtendedCount x, ExtendedCount y) { return s.plus(x, y); });
}

FeaturedMultiset mtimes(const Semiring& s, const FeaturedMultiset& a, const FeaturedMultiset& b) {
  return FeaturedMultiset::combine(a, b, [&s](ExtendedCount x, ExtendedCount y) { return s.times(x, y); });
}

FeaturedMultiset mzero(const Semiring& s, const FeatureAlphabet& alphabet) {
  return FeaturedMultiset::constant(alphabet, s.zero());
}

FeaturedMultiset mone(const Semiring& s, const FeatureAlphabet& alphabet) {
  return FeaturedMultiset::constant(alphabet, s.one());
}

FeaturedMultiset lift_union(const FeaturedMultiset& a, const FeaturedMultiset& b) {
  return FeaturedMultiset::combine(a, b, [](ExtendedCount x, ExtendedCount y) { return std::max(x, y); });
}

FeaturedMultiset lift_intersection(const FeaturedMultiset& a, const FeaturedMultiset& b) {
  return FeaturedMultiset::combine(a, b, [](ExtendedCount x, ExtendedCount y) { return std::min(x, y); });
}

FeaturedMultiset lift_sum(const FeaturedMultiset& a, const FeaturedMultiset& b) {
  return FeaturedMultiset::combine(a, b, [](ExtendedCount x, ExtendedCount y) { return x + y; });
}

bool submultiset(const FeaturedMultiset& a, const FeaturedMultiset& b) {
  bool ok = true;
  FeaturedMultiset::combine(a, b, [&ok](ExtendedCount x, ExtendedCount y) {
    ok = ok && x <= y;
    return ExtendedCount();
  });
  return ok;
}

bool satisfies(const FeaturedMultiset& config, const FeaturedMultiset& weight, BoundDirection direction) {
  if (direction == BoundDirection::None) return true;
  const bool lower = direction == BoundDirection::Lower;
  if (config.alphabet() == weight.alphabet()) return lower ? submultiset(weight, config) : submultiset(config, weight);
  const FeatureAlphabet& wa = weight.alphabet();
  for (FeatureIndex f = 0; f < wa.size(); ++f) {
    auto ci = config.alphabet().find(wa.name(f));
    if (!ci) throw AlphabetMismatch("configuration lacks feature '" + wa.name(f) + "'");
    const ExtendedCount c = config[*ci];
    const ExtendedCount w = weight[f];
    if (lower ? !(w <= c) : !(c <= w)) return false;
  }
  return true;
}

namespace {

class LiteralScanner {
 public:
  explicit LiteralScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string_view token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '=' || c == ',' || c == '{' || c == '}') break;
      ++pos_;
    }
    if (start == pos_) fail("expected a name or value");
    return text_.substr(start, pos_ - start);
  }
  std::size_t column() const { return pos_ + 1; }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, column()); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FeaturedMultiset parse_multiset(std::string_view text, const FeatureAlphabet& alphabet,
                                ExtendedCount default_value) {
  LiteralScanner scan(text);
  FeaturedMultiset m(alphabet, default_value);
  std::vector<bool> seen(alphabet.size(), false);
  scan.expect('{');
  if (!scan.accept('}')) {
    do {
      const std::size_t name_col = (scan.skip_space(), scan.column());
      const std::string_view name = scan.token();
      auto f = alphabet.find(name);
      if (!f) throw ParseError("undeclared feature '" + std::string(name) + "'", 1, name_col);
      if (seen[*f]) throw ParseError("feature '" + std::string(name) + "' given twice", 1, name_col);
      seen[*f] = true;
      scan.expect('=');
      const std::size_t value_col = (scan.skip_space(), scan.column());
      ExtendedCount value;
      try {
        value = ExtendedCount::parse(scan.token());
      } catch (const Error& e) {
        throw ParseError(e.what(), 1, value_col);
      }
      m.set(*f, value);
    } while (scan.accept(','));
    scan.expect('}');
  }
  if (!scan.at_end()) scan.fail("trailing characters after multiset literal");
  return m;
}

FeaturedMultiset parse_configuration(std::string_view text, const FeatureAlphabet& alphabet) {
  FeaturedMultiset m = parse_multiset(text, alphabet, ExtendedCount(0));
  if (!m.is_configuration()) throw ParseError("configurations take finite counts only");
  return m;
}

namespace {

std::string render(const FeaturedMultiset& m, const char* separator) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [f, v] : m.entries()) {
    if (!first) os << separator;
    first = false;
    os << m.alphabet().name(f) << '=' << v;
  }
  os << '}';
  return os.str();
}

}  // namespace

std::string to_string(const FeaturedMultiset& m) { return render(m, ", "); }
std::string to_compact_string(const FeaturedMultiset& m) { return render(m, ","); }

}  // namespace wafm
