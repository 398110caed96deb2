#include "wafm/cfm.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <sstream>

#include "wafm/error.hpp"

namespace wafm {

namespace {

std::int64_t parse_count(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) throw ParseError("bad count '" + std::string(s) + "'");
  return v;
}

std::int64_t mul_sat(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::int64_t>::max() / b) return std::numeric_limits<std::int64_t>::max();
  return a * b;
}

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

}  // namespace

CardinalityInterval::CardinalityInterval(std::int64_t lo, std::optional<std::int64_t> hi) : lower(lo), upper(hi) {
  if (lo < 0 || (hi && *hi < lo)) throw InvalidArgument("invalid cardinality interval");
}

CardinalityInterval CardinalityInterval::parse(std::string_view text) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) throw ParseError("interval must look like l..u: '" + std::string(text) + "'");
  std::string_view lo = text.substr(0, dots);
  std::string_view hi = text.substr(dots + 2);
  std::optional<std::int64_t> upper;
  if (hi != "*") upper = parse_count(hi);
  std::int64_t lower = parse_count(lo);
  if (upper && *upper < lower) throw ParseError("interval lower bound exceeds upper: '" + std::string(text) + "'");
  return CardinalityInterval(lower, upper);
}

std::string CardinalityInterval::to_string() const {
  return std::to_string(lower) + ".." + (upper ? std::to_string(*upper) : std::string("*"));
}

CardinalityFeatureModel::CardinalityFeatureModel(std::vector<CfmFeature> features, std::vector<AlternativeGroup> groups,
                                                 std::vector<CrossEdge> edges)
    : features_(std::move(features)), groups_(std::move(groups)), edges_(std::move(edges)) {
  if (features_.empty()) throw InvalidArgument("feature model has no features");
  std::size_t roots = 0;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const CfmFeature& f = features_[i];
    for (std::size_t j = 0; j < i; ++j)
      if (features_[j].name == f.name) throw InvalidArgument("duplicate feature '" + f.name + "'");
    if (!f.parent) {
      ++roots;
      root_ = i;
    } else if (*f.parent >= features_.size()) {
      throw InvalidArgument("feature '" + f.name + "' has an unknown parent");
    }
  }
  if (roots != 1) throw InvalidArgument("feature model needs exactly one root");
  for (std::size_t i = 0; i < features_.size(); ++i) {
    std::size_t steps = 0;
    for (std::optional<std::size_t> p = features_[i].parent; p; p = features_[*p].parent) {
      if (++steps > features_.size()) throw InvalidArgument("parent links of '" + features_[i].name + "' form a cycle");
    }
  }
  for (const AlternativeGroup& g : groups_) {
    if (g.parent >= features_.size() || g.members.empty()) throw InvalidArgument("malformed group");
    for (std::size_t m : g.members) {
      if (m >= features_.size() || features_[m].parent != g.parent)
        throw InvalidArgument("group member is not a child of '" + features_[g.parent].name + "'");
    }
  }
  for (const CrossEdge& e : edges_) {
    if (e.source >= features_.size() || e.target >= features_.size()) throw InvalidArgument("malformed cross edge");
    if (features_[e.source].kind != FeatureKind::Concrete || features_[e.target].kind != FeatureKind::Concrete)
      throw InvalidArgument("cross edges must connect concrete features");
  }
}

std::optional<std::size_t> CardinalityFeatureModel::find(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i].name == name) return i;
  return std::nullopt;
}

FeatureAlphabet CardinalityFeatureModel::concrete_alphabet() const {
  std::vector<std::string> names;
  for (const CfmFeature& f : features_)
    if (f.kind == FeatureKind::Concrete) names.push_back(f.name);
  return FeatureAlphabet(std::move(names));
}

CardinalityFeatureModel CardinalityFeatureModel::without_cross_edges() const {
  return CardinalityFeatureModel(features_, groups_, {});
}

CardinalityFeatureModel parse_cfm(std::string_view text) {
  struct PendingFeature {
    CfmFeature feature;
    std::string parent;
    bool has_card = false;
    std::size_t line;
  };
  struct PendingRef {
    std::string name;
    std::size_t line, column;
  };
  std::vector<PendingFeature> pending;
  std::vector<std::pair<PendingRef, std::vector<PendingRef>>> pending_groups;
  struct PendingEdge {
    CrossEdgeKind kind;
    PendingRef source;
    CardinalityInterval si;
    PendingRef target;
    CardinalityInterval ti;
  };
  std::vector<PendingEdge> pending_edges;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    auto fail = [&](const Token& t, const std::string& msg) -> ParseError { return ParseError(msg, line_no, t.column); };
    auto interval = [&](const Token& t) {
      try {
        return CardinalityInterval::parse(t.text);
      } catch (const ParseError& e) {
        throw fail(t, e.what());
      }
    };
    const std::string_view kw = toks[0].text;
    if (kw == "feature") {
      if (toks.size() < 3) throw fail(toks[0], "expected: feature <name> abstract|concrete ...");
      PendingFeature pf;
      pf.line = line_no;
      pf.feature.name = std::string(toks[1].text);
      if (toks[2].text == "abstract")
        pf.feature.kind = FeatureKind::Abstract;
      else if (toks[2].text == "concrete")
        pf.feature.kind = FeatureKind::Concrete;
      else
        throw fail(toks[2], "expected abstract or concrete");
      bool root = false;
      for (std::size_t i = 3; i < toks.size(); ++i) {
        std::string_view t = toks[i].text;
        if (t == "root") {
          root = true;
        } else if (t.starts_with("parent=")) {
          pf.parent = std::string(t.substr(7));
          if (pf.parent.empty()) throw fail(toks[i], "empty parent name");
        } else if (t.starts_with("card=")) {
          std::string_view v = t.substr(5);
          pf.has_card = true;
          if (v == "mandatory")
            pf.feature.card = {1, 1};
          else if (v == "optional")
            pf.feature.card = {0, 1};
          else
            pf.feature.card = interval(Token{v, toks[i].column + 5});
        } else if (t == "mandatory" || t == "optional") {
          pf.has_card = true;
          pf.feature.card = t == "mandatory" ? CardinalityInterval{1, 1} : CardinalityInterval{0, 1};
        } else {
          throw fail(toks[i], "unknown feature attribute '" + std::string(t) + "'");
        }
      }
      if (root == !pf.parent.empty()) throw fail(toks[1], "a feature is either root or has a parent");
      pending.push_back(std::move(pf));
    } else if (kw == "group") {
      if (toks.size() < 4) throw fail(toks[0], "expected: group <parent> alternative <members...>");
      if (toks[2].text != "alternative") throw fail(toks[2], "only alternative groups are supported");
      std::vector<PendingRef> members;
      for (std::size_t i = 3; i < toks.size(); ++i) members.push_back({std::string(toks[i].text), line_no, toks[i].column});
      pending_groups.push_back({{std::string(toks[1].text), line_no, toks[1].column}, std::move(members)});
    } else if (kw == "require" || kw == "exclude") {
      // require A l..u -> B l..u ; exclude A l..u [<->] B l..u
      std::vector<Token> rest(toks.begin() + 1, toks.end());
      if (rest.size() == 5) {
        const std::string_view arrow = rest[2].text;
        if ((kw == "require" && arrow != "->") || (kw == "exclude" && arrow != "<->"))
          throw fail(rest[2], "unexpected token '" + std::string(arrow) + "'");
        rest.erase(rest.begin() + 2);
      }
      if (rest.size() != 4) throw fail(toks[0], "expected: " + std::string(kw) + " <feature> <l..u> <feature> <l..u>");
      pending_edges.push_back({kw == "require" ? CrossEdgeKind::Require : CrossEdgeKind::Exclude,
                               {std::string(rest[0].text), line_no, rest[0].column}, interval(rest[1]),
                               {std::string(rest[2].text), line_no, rest[2].column}, interval(rest[3])});
    } else {
      throw fail(toks[0], "unknown declaration '" + std::string(kw) + "'");
    }
  }

  auto index = [&](const PendingRef& r) -> std::size_t {
    for (std::size_t i = 0; i < pending.size(); ++i)
      if (pending[i].feature.name == r.name) return i;
    throw ParseError("undeclared feature '" + r.name + "'", r.line, r.column);
  };
  std::vector<bool> grouped(pending.size(), false);
  std::vector<AlternativeGroup> groups;
  for (const auto& [parent, members] : pending_groups) {
    AlternativeGroup g{index(parent), {}};
    for (const PendingRef& m : members) {
      g.members.push_back(index(m));
      grouped[g.members.back()] = true;
    }
    groups.push_back(std::move(g));
  }
  std::vector<CfmFeature> features;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    CfmFeature f = pending[i].feature;
    if (!pending[i].parent.empty()) f.parent = index({pending[i].parent, pending[i].line, 1});
    if (!pending[i].has_card && grouped[i]) f.card = {0, 1};
    features.push_back(std::move(f));
  }
  std::vector<CrossEdge> edges;
  for (const PendingEdge& e : pending_edges)
    edges.push_back({e.kind, index(e.source), e.si, index(e.target), e.ti});
  try {
    return CardinalityFeatureModel(std::move(features), std::move(groups), std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

namespace {

class Validator {
 public:
  Validator(const CardinalityFeatureModel& cm, std::vector<std::int64_t> counts) : cm_(cm), counts_(std::move(counts)) {}

  std::vector<Violation> check() const {
    std::vector<Violation> out;
    const auto& fs = cm_.features();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const CfmFeature& f = fs[i];
      const std::int64_t c = counts_[i];
      if (!f.parent) {
        if (c != 1)
          out.push_back({"tree:" + f.name, "the root " + f.name + " must have exactly 1 instance, not " + std::to_string(c),
                         {{f.name, c}}});
        continue;
      }
      const std::int64_t p = counts_[*f.parent];
      const std::int64_t lo = mul_sat(f.card.lower, p);
      const bool ok = lo <= c && (!f.card.upper || c <= mul_sat(*f.card.upper, p));
      if (!ok) {
        std::ostringstream d;
        d << c << " instances of " << f.name << " with " << p << " of " << fs[*f.parent].name << " violate ["
          << f.card.to_string() << "] per parent instance";
        out.push_back({"tree:" + f.name, d.str(), {{f.name, c}, {fs[*f.parent].name, p}}});
      }
    }
    for (const AlternativeGroup& g : cm_.groups()) {
      std::int64_t sum = 0;
      std::vector<std::pair<std::string, std::int64_t>> cs{{fs[g.parent].name, counts_[g.parent]}};
      for (std::size_t m : g.members) {
        sum += counts_[m];
        cs.emplace_back(fs[m].name, counts_[m]);
      }
      if (sum != counts_[g.parent]) {
        std::ostringstream d;
        d << "alternative group under " << fs[g.parent].name << " selects " << sum << " instances for "
          << counts_[g.parent] << " instances of " << fs[g.parent].name;
        out.push_back({"group:" + fs[g.parent].name, d.str(), std::move(cs)});
      }
    }
    for (const CrossEdge& e : cm_.edges()) {
      const std::int64_t s = counts_[e.source];
      const std::int64_t t = counts_[e.target];
      const bool si = e.source_interval.contains(s);
      const bool ti = e.target_interval.contains(t);
      const std::string& sn = fs[e.source].name;
      const std::string& tn = fs[e.target].name;
      std::ostringstream d;
      if (e.kind == CrossEdgeKind::Require && si && !ti) {
        d << s << " instances of " << sn << " require " << tn << " in " << e.target_interval.to_string() << ", but "
          << t << " are selected";
        out.push_back({"require:" + sn + "->" + tn, d.str(), {{sn, s}, {tn, t}}});
      } else if (e.kind == CrossEdgeKind::Exclude && si && ti) {
        d << t << " instances of " << tn << " are selected while " << sn << " has " << s << " (excluded: " << sn << " "
          << e.source_interval.to_string() << " with " << tn << " " << e.target_interval.to_string() << ")";
        out.push_back({"exclude:" + sn + "-" + tn, d.str(), {{sn, s}, {tn, t}}});
      }
    }
    return out;
  }

  std::vector<std::int64_t>& counts() { return counts_; }

 private:
  const CardinalityFeatureModel& cm_;
  std::vector<std::int64_t> counts_;
};

}  // namespace

ValidationReport validate_config(const CardinalityFeatureModel& cm, const FeaturedMultiset& m) {
  const auto& fs = cm.features();
  std::vector<std::int64_t> counts(fs.size(), 0);
  std::int64_t concrete_sum = 0;
  for (FeatureIndex i = 0; i < m.alphabet().size(); ++i) {
    const ExtendedCount v = m[i];
    const std::string& name = m.alphabet().name(i);
    if (!v.is_finite() || v.value() < 0) throw DomainError("count of " + name + " must be finite");
    auto f = cm.find(name);
    if (!f) {
      if (v.value() == 0) continue;
      throw InvalidArgument("configuration names unknown feature '" + name + "'");
    }
    if (fs[*f].kind == FeatureKind::Abstract) {
      if (v.value() == 0) continue;
      throw InvalidArgument("configuration assigns abstract feature '" + name + "'");
    }
    counts[*f] = v.value();
    concrete_sum += v.value();
  }

  // Abstract features in top-down order.
  std::vector<std::size_t> order;
  std::vector<std::size_t> queue{cm.root()};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t f = queue[qi];
    if (fs[f].kind == FeatureKind::Abstract) order.push_back(f);
    for (std::size_t c = 0; c < fs.size(); ++c)
      if (fs[c].parent == f) queue.push_back(c);
  }

  const std::int64_t slack = 1 + concrete_sum;
  Validator v(cm, counts);
  std::optional<std::vector<Violation>> best;
  std::vector<std::int64_t> best_counts;

  std::function<bool(std::size_t)> search = [&](std::size_t pos) {
    if (pos == order.size()) {
      auto viol = v.check();
      if (!best || viol.size() < best->size()) {
        best = std::move(viol);
        best_counts = v.counts();
      }
      return best->empty();
    }
    const std::size_t f = order[pos];
    if (!fs[f].parent) {
      v.counts()[f] = 1;
      return search(pos + 1);
    }
    const std::int64_t p = v.counts()[*fs[f].parent];
    const std::int64_t lo = mul_sat(fs[f].card.lower, p);
    const std::int64_t hi = fs[f].card.upper ? std::min(mul_sat(*fs[f].card.upper, p), lo + slack) : lo + slack;
    for (std::int64_t c = lo; c <= hi; ++c) {
      v.counts()[f] = c;
      if (search(pos + 1)) return true;
    }
    return false;
  };
  search(0);

  ValidationReport r;
  r.violations = std::move(*best);
  r.valid = r.violations.empty();
  for (std::size_t f : order) r.abstract_counts.emplace_back(fs[f].name, best_counts[f]);
  return r;
}

std::string to_string(const ValidationReport& r) {
  std::ostringstream out;
  out << (r.valid ? "VALID=true" : "VALID=false");
  if (!r.abstract_counts.empty()) {
    out << " ABSTRACT=";
    for (std::size_t i = 0; i < r.abstract_counts.size(); ++i)
      out << (i ? "," : "") << r.abstract_counts[i].first << "=" << r.abstract_counts[i].second;
  }
  out << '\n';
  for (const Violation& vi : r.violations) out << "VIOLATION " << vi.id << ": " << vi.description << '\n';
  return out.str();
}

}  // namespace wafm
