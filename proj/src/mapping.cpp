#include "wafm/mapping.hpp"

#include <functional>

#include "wafm/error.hpp"

namespace wafm {

namespace {

// The automaton's view of a model configuration.
FeaturedMultiset restrict_to(const WeightAlgebra& alg, const FeaturedMultiset& m) {
  FeaturedMultiset out(alg.features());
  for (FeatureIndex f = 0; f < out.alphabet().size(); ++f) {
    if (auto g = m.alphabet().find(out.alphabet().name(f))) out.set(f, m[*g]);
  }
  return out;
}

}  // namespace

ConsistencyReport config_exists_for_word(const CardinalityFeatureModel& cm, const WeightedAutomaton& a,
                                         const Word& word, std::int64_t budget) {
  const WeightAlgebra& alg = a.algebra();
  if (budget < 0) throw InvalidArgument("budget must be non-negative");
  bool any_lower = false;
  for (const SemiringComponent& c : alg.components()) any_lower = any_lower || c.semiring.direction() == BoundDirection::Lower;
  if (!any_lower) throw InvalidArgument("configuration search needs a lower-bounding semiring");
  if (!accepts(a, word)) throw InvalidArgument("word " + word_to_string(a, word) + " is not accepted");

  const FeatureAlphabet concrete = cm.concrete_alphabet();
  for (const std::string& name : alg.features().names()) {
    if (!concrete.contains(name)) throw InvalidArgument("feature '" + name + "' is not a concrete feature of the model");
  }

  const CompositeWeight w = word_weight(a, word);
  FeaturedMultiset base(concrete);
  for (std::size_t c = 0; c < alg.size(); ++c) {
    const SemiringComponent& comp = alg.components()[c];
    if (comp.semiring.direction() != BoundDirection::Lower) continue;
    for (FeatureIndex f = 0; f < comp.features.size(); ++f) {
      const ExtendedCount v = w.parts[c][f];
      const FeatureIndex g = concrete.index_of(comp.features.name(f));
      if (v.is_finite() && base[g] < v) base.set(g, v);
    }
  }

  ConsistencyReport r{MappingDirection::WordToConfig, word, false, std::nullopt, false};
  const std::size_t n = concrete.size();
  std::vector<std::int64_t> delta(n, 0);
  auto try_candidate = [&]() {
    FeaturedMultiset m = base;
    for (FeatureIndex f = 0; f < n; ++f)
      if (delta[f]) m.set(f, ExtendedCount(base[f].value() + delta[f]));
    if (!alg.satisfies(restrict_to(alg, m), w)) return false;
    if (!validate_config(cm, m).valid) return false;
    r.verdict = true;
    r.exact = true;
    r.witness = std::move(m);
    return true;
  };
  // Distributes `left` added instances over features pos.. in lexicographic order.
  std::function<bool(std::size_t, std::int64_t)> spread = [&](std::size_t pos, std::int64_t left) {
    if (pos + 1 == n) {
      if (left > budget) return false;
      delta[pos] = left;
      bool found = try_candidate();
      delta[pos] = 0;
      return found;
    }
    for (std::int64_t d = std::min(left, budget); d >= 0; --d) {
      delta[pos] = d;
      if (spread(pos + 1, left - d)) return true;
    }
    delta[pos] = 0;
    return false;
  };
  const std::int64_t max_total = budget * static_cast<std::int64_t>(n);
  for (std::int64_t total = 0; total <= max_total; ++total) {
    if (spread(0, total)) return r;
  }
  return r;
}

ConsistencyReport word_exists_for_config(const CardinalityFeatureModel& cm, const WeightedAutomaton& a,
                                         const FeaturedMultiset& m, std::size_t k, const ExplorationOrder& order) {
  ValidationReport vr = validate_config(cm, m);
  if (!vr.valid) {
    std::string msg = "configuration " + to_string(m) + " is not valid:";
    for (const Violation& v : vr.violations) msg += " " + v.description + ";";
    throw InvalidArgument(msg);
  }
  AnalysisVerdict v = non_emptiness(a, restrict_to(a.algebra(), m), k, order);
  ConsistencyReport r{MappingDirection::ConfigToWord, m, v.verdict, std::nullopt, v.exact};
  if (v.witness) r.witness = v.witness->word;
  return r;
}

std::string report_line(const WeightedAutomaton& a, const ConsistencyReport& r) {
  auto render = [&](const std::variant<Word, FeaturedMultiset>& x) {
    if (const Word* w = std::get_if<Word>(&x)) return word_to_string(a, *w);
    return to_compact_string(std::get<FeaturedMultiset>(x));
  };
  std::string out = r.direction == MappingDirection::WordToConfig ? "DIRECTION=word-to-config" : "DIRECTION=config-to-word";
  out += " SUBJECT=" + render(r.subject);
  out += r.verdict ? " VERDICT=true" : " VERDICT=false";
  out += r.exact ? " EXACT=true" : " EXACT=false";
  out += " WITNESS=" + (r.witness ? render(*r.witness) : std::string("-"));
  return out;
}

}  // namespace wafm
