#include "wafm/format.hpp"

#include <fstream>
#include <sstream>

#include "wafm/error.hpp"

namespace wafm {

namespace {

bool is_name_char(char c) {
  return !(c == ' ' || c == '\t' || c == '\r' || c == '{' || c == '}' || c == '=' || c == '|' || c == '#' ||
           c == ',' || c == ';');
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Drops a trailing `#` comment that is not inside braces.
std::string_view strip_comment(std::string_view line) {
  int depth = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '{') ++depth;
    else if (line[i] == '}') --depth;
    else if (line[i] == '#' && depth <= 0) return line.substr(0, i);
  }
  return line;
}

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  char peek() {
    skip_space();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string_view name(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
    if (start == pos_) throw error(std::string("expected ") + what, start + 1);
    return line_.substr(start, pos_ - start);
  }

  // A weight expression: parts separated by `|`, each `{...}` or a bare token.
  std::pair<std::string_view, std::size_t> weight() {
    skip_space();
    const std::size_t start = pos_;
    for (;;) {
      skip_space();
      if (pos_ < line_.size() && line_[pos_] == '{') {
        const std::size_t close = line_.find('}', pos_);
        if (close == std::string_view::npos) throw error("unterminated weight literal", pos_ + 1);
        pos_ = close + 1;
      } else {
        const std::size_t s = pos_;
        while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
        if (s == pos_) throw error("expected a weight literal", s + 1);
      }
      const std::size_t save = pos_;
      skip_space();
      if (pos_ < line_.size() && line_[pos_] == '|') {
        ++pos_;
        continue;
      }
      pos_ = save;
      break;
    }
    return {line_.substr(start, pos_ - start), start + 1};
  }

  std::pair<std::string_view, std::size_t> rest() {
    skip_space();
    const std::size_t start = pos_;
    pos_ = line_.size();
    return {trim(line_.substr(start)), start + 1};
  }

  ParseError error(const std::string& msg, std::size_t column) const { return ParseError(msg, line_no_, column); }
  ParseError error(const std::string& msg) const { return ParseError(msg, line_no_, column()); }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

CompositeWeight parse_weight_at(const WeightAlgebra& alg, std::string_view text, std::size_t line,
                                std::size_t column) {
  std::vector<std::pair<std::string_view, std::size_t>> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '|') {
      std::string_view raw = text.substr(start, i - start);
      std::size_t lead = 0;
      while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t')) ++lead;
      parts.emplace_back(trim(raw), column + start + lead);
      start = i + 1;
    }
  }
  if (parts.size() != alg.size())
    throw ParseError("expected " + std::to_string(alg.size()) + " weight component(s), found " +
                         std::to_string(parts.size()),
                     line, column);
  CompositeWeight w;
  for (std::size_t c = 0; c < alg.size(); ++c) {
    const auto [part, col] = parts[c];
    const SemiringComponent& comp = alg.components()[c];
    try {
      if (alg.is_scalar() && (part.empty() || part.front() != '{' || part.find('=') == std::string_view::npos)) {
        std::string_view v = part;
        if (!v.empty() && v.front() == '{') {
          if (v.back() != '}') throw ParseError("unterminated weight literal", 1, 1);
          v = trim(v.substr(1, v.size() - 2));
        }
        w.parts.push_back(FeaturedMultiset(comp.features, comp.semiring.one()));
        w.parts.back().set(0, ExtendedCount::parse(v));
      } else {
        w.parts.push_back(parse_multiset(part, comp.features, comp.semiring.one()));
      }
      for (const auto& e : w.parts.back().entries()) comp.semiring.check(e.second);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line, col + (e.column() ? e.column() - 1 : 0));
    } catch (const Error& e) {
      throw ParseError(e.what(), line, col);
    }
  }
  return w;
}

std::vector<std::string> split_names(std::string_view list, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= list.size(); ++i) {
    if (i == list.size() || list[i] == sep) {
      std::string_view n = trim(list.substr(start, i - start));
      if (!n.empty()) out.emplace_back(n);
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

CompositeWeight parse_weight(const WeightAlgebra& algebra, std::string_view text) {
  return parse_weight_at(algebra, trim(text), 1, 1);
}

WeightedAutomaton parse_automaton(std::string_view text, std::optional<Semiring> semiring_override) {
  std::optional<std::pair<std::string, std::size_t>> semiring_decl;
  std::optional<std::vector<std::string>> features;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<WeightedAutomaton> a;

  std::size_t line_no = 0;
  std::size_t start = 0;

  auto build = [&](const LineScanner& sc) {
    if (!semiring_decl) throw sc.error("missing 'semiring' declaration", 1);
    if (!alphabet) throw sc.error("missing 'alphabet' declaration", 1);
    const auto& [decl, decl_line] = *semiring_decl;
    std::optional<WeightAlgebra> alg;
    try {
      if (decl.find("over=") == std::string::npos) {
        Semiring s = semiring_override.value_or(Semiring::from_name(trim(decl)));
        alg = features ? WeightAlgebra::single(s, FeatureAlphabet(*features)) : WeightAlgebra::scalar(s);
      } else {
        if (semiring_override) throw InvalidArgument("a composite semiring cannot be overridden");
        if (!features) throw InvalidArgument("a composite semiring needs a 'features' declaration");
        std::vector<SemiringComponent> comps;
        for (const std::string& item : split_names(decl, ';')) {
          const auto over = item.find("over=");
          if (over == std::string::npos) throw InvalidArgument("component '" + item + "' lacks over=");
          Semiring s = Semiring::from_name(trim(std::string_view(item).substr(0, over)));
          comps.push_back({s, FeatureAlphabet(split_names(std::string_view(item).substr(over + 5), ','))});
        }
        alg.emplace(FeatureAlphabet(*features), std::move(comps));
      }
      a.emplace(std::move(*alg), *alphabet);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), decl_line, 1);
    }
  };

  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    LineScanner sc(strip_comment(raw), line_no);
    if (sc.at_end()) continue;
    const std::size_t kw_col = sc.column();
    const std::string_view kw = sc.name("a declaration");

    if (kw == "semiring" || kw == "features" || kw == "alphabet") {
      if (a) throw sc.error("'" + std::string(kw) + "' must precede states and transitions", kw_col);
      if (kw == "semiring") {
        if (semiring_decl) throw sc.error("duplicate 'semiring' declaration", kw_col);
        auto [body, col] = sc.rest();
        if (body.empty()) throw sc.error("expected a semiring name", col);
        if (body.find("over=") == std::string_view::npos) {
          try {
            Semiring::from_name(trim(body));
          } catch (const Error& e) {
            throw sc.error(e.what(), col);
          }
        }
        semiring_decl = {std::string(body), line_no};
      } else {
        auto& target = kw == "features" ? features : alphabet;
        if (target) throw sc.error("duplicate '" + std::string(kw) + "' declaration", kw_col);
        target.emplace();
        while (!sc.at_end()) {
          const std::size_t col = sc.column();
          std::string n(sc.name("a name"));
          for (const std::string& seen : *target)
            if (seen == n) throw sc.error("'" + n + "' declared twice", col);
          target->push_back(std::move(n));
        }
        if (target->empty()) throw sc.error("empty '" + std::string(kw) + "' declaration", kw_col);
      }
      continue;
    }
    if (!a) build(sc);

    if (kw == "state") {
      const std::size_t name_col = sc.column();
      std::string name(sc.name("a state name"));
      if (a->find_state(name)) throw sc.error("duplicate state '" + name + "'", name_col);
      const StateId q = a->add_state(name);
      while (!sc.at_end()) {
        const std::size_t col = sc.column();
        const std::string_view attr = sc.name("initial or final");
        if (attr != "initial" && attr != "final") throw sc.error("unknown state attribute '" + std::string(attr) + "'", col);
        CompositeWeight w = a->algebra().one();
        if (sc.accept('=')) {
          auto [lit, lcol] = sc.weight();
          w = parse_weight_at(a->algebra(), lit, line_no, lcol);
        }
        if (attr == "initial") a->set_initial(q, std::move(w));
        else a->set_final(q, std::move(w));
      }
    } else if (kw == "trans") {
      auto state = [&]() {
        const std::size_t col = sc.column();
        std::string_view n = sc.name("a state name");
        auto q = a->find_state(n);
        if (!q) throw sc.error("undeclared state '" + std::string(n) + "'", col);
        return *q;
      };
      const StateId from = state();
      const StateId to = state();
      const std::size_t sym_col = sc.column();
      std::string_view sym_name = sc.name("a symbol");
      auto sym = a->find_symbol(sym_name);
      if (!sym) throw sc.error("undeclared symbol '" + std::string(sym_name) + "'", sym_col);
      CompositeWeight w = a->algebra().one();
      auto [lit, lcol] = sc.rest();
      if (!lit.empty()) w = parse_weight_at(a->algebra(), lit, line_no, lcol);
      if (a->find_transition(from, *sym, to)) throw sc.error("duplicate transition", kw_col);
      a->add_transition(from, *sym, to, std::move(w));
    } else {
      throw sc.error("unknown declaration '" + std::string(kw) + "'", kw_col);
    }
  }
  if (!a) {
    LineScanner sc("", line_no);
    build(sc);
  }
  return std::move(*a);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WeightedAutomaton load_automaton(const std::string& path, std::optional<Semiring> semiring_override) {
  const std::string text = read_file(path);
  try {
    return parse_automaton(text, semiring_override);
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.what());
  }
}

std::string weight_literal(const WeightAlgebra& alg, const CompositeWeight& w) {
  std::string out;
  for (std::size_t c = 0; c < alg.size(); ++c) {
    if (c) out += " | ";
    const FeaturedMultiset& part = w.parts.at(c);
    if (alg.is_scalar()) {
      out += part[0].to_string();
      continue;
    }
    out += to_string(part.with_default(alg.components()[c].semiring.one()));
  }
  return out;
}

std::string serialize_automaton(const WeightedAutomaton& a) {
  const WeightAlgebra& alg = a.algebra();
  std::ostringstream out;
  out << "semiring " << alg.describe() << '\n';
  if (!alg.is_scalar()) {
    out << "features";
    for (const std::string& f : alg.features().names()) out << ' ' << f;
    out << '\n';
  }
  out << "alphabet";
  for (const std::string& s : a.symbols()) out << ' ' << s;
  out << '\n';
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "state " << a.state_name(q);
    auto attr = [&](const char* name, const CompositeWeight* w) {
      if (!w) return;
      out << ' ' << name;
      if (!alg.is_one(*w)) out << '=' << weight_literal(alg, *w);
    };
    attr("initial", a.initial_if_any(q));
    attr("final", a.final_if_any(q));
    out << '\n';
  }
  for (const Transition& t : a.transitions()) {
    out << "trans " << a.state_name(t.from) << ' ' << a.state_name(t.to) << ' ' << a.symbol_name(t.symbol);
    if (!alg.is_one(t.weight)) out << ' ' << weight_literal(alg, t.weight);
    out << '\n';
  }
  return out.str();
}

std::string to_dot(const WeightedAutomaton& a) {
  const WeightAlgebra& alg = a.algebra();
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + '"';
  };
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateId q = 0; q < a.num_states(); ++q) {
    out << "  " << quote(a.state_name(q));
    if (const CompositeWeight* f = a.final_if_any(q)) {
      out << " [shape=doublecircle";
      if (!alg.is_one(*f)) out << ", xlabel=" << quote(weight_literal(alg, *f));
      out << ']';
    }
    out << ";\n";
    if (const CompositeWeight* i = a.initial_if_any(q)) {
      const std::string entry = quote("__init_" + a.state_name(q));
      out << "  " << entry << " [shape=point];\n  " << entry << " -> " << quote(a.state_name(q));
      if (!alg.is_one(*i)) out << " [label=" << quote(weight_literal(alg, *i)) << ']';
      out << ";\n";
    }
  }
  for (const Transition& t : a.transitions()) {
    std::string label = a.symbol_name(t.symbol);
    if (!alg.is_one(t.weight)) label += " / " + weight_literal(alg, t.weight);
    out << "  " << quote(a.state_name(t.from)) << " -> " << quote(a.state_name(t.to)) << " [label=" << quote(label)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace wafm
