#include "wafm/analysis.hpp"

#include <algorithm>

#include "wafm/error.hpp"

namespace wafm {

namespace {

bool part_violates(const FeaturedMultiset& config, const FeaturedMultiset& part, BoundDirection dir) {
  return !satisfies(config, part, dir);
}

// Whether some initial, final or transition weight of component `c` takes
// `value` on some feature.
bool component_uses(const WeightedAutomaton& a, std::size_t c, ExtendedCount value) {
  auto has = [&](const CompositeWeight& w) {
    const FeaturedMultiset& part = w.parts[c];
    if (part.entries().size() < part.alphabet().size() && part.default_value() == value) return true;
    return std::any_of(part.entries().begin(), part.entries().end(),
                       [&](const FeaturedMultiset::Entry& e) { return e.second == value; });
  };
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (const CompositeWeight* w = a.initial_if_any(q); w && has(*w)) return true;
    if (const CompositeWeight* w = a.final_if_any(q); w && has(*w)) return true;
  }
  return std::any_of(a.transitions().begin(), a.transitions().end(),
                     [&](const Transition& t) { return has(t.weight); });
}

// Components in which a violated partial weight stays violated on every
// extension.
std::vector<bool> permanent_violation(const WeightedAutomaton& a) {
  const WeightAlgebra& alg = a.algebra();
  std::vector<bool> out(alg.size(), false);
  for (std::size_t c = 0; c < alg.size(); ++c) {
    switch (alg.components()[c].semiring.kind()) {
      case SemiringKind::MaxMax:
      case SemiringKind::MinMin:
        out[c] = true;
        break;
      case SemiringKind::MaxTropical:
        out[c] = !component_uses(a, c, ExtendedCount::neg_inf());
        break;
      default:
        break;
    }
  }
  return out;
}

// Every path of the automaton is accepting: no weight carries an absorbing
// value that could zero a product.
bool every_path_live(const WeightedAutomaton& a) {
  const WeightAlgebra& alg = a.algebra();
  for (std::size_t c = 0; c < alg.size(); ++c) {
    if (component_uses(a, c, alg.components()[c].semiring.zero())) return false;
  }
  return true;
}

struct WordJudge {
  const WeightedAutomaton& a;
  bool deterministic;

  CompositeWeight weight_of(const Candidate& c) const {
    return deterministic ? c.weight : word_weight(a, c.path.label());
  }
};

bool guard_is_sound(const WeightedAutomaton& a, const SearchOptions& options) {
  return !options.cycle_guard || is_deterministic(a);
}

// Oplus over accepting paths of length <= rounds, per component. When
// `detect_growth` is set, keeps relaxing up to |Q| + 1 rounds and reports
// the features still changing in the last round.
struct PathExtremes {
  std::optional<CompositeWeight> total;
  std::vector<std::vector<bool>> growing;
};

PathExtremes path_extremes(const WeightedAutomaton& a, std::size_t rounds, bool detect_growth) {
  const WeightAlgebra& alg = a.algebra();
  const auto reach = reachable_states(a);
  const auto live = coreachable_states(a);
  const std::size_t n = a.num_states();
  auto useful = [&](StateId q) { return reach[q] && live[q]; };

  std::vector<std::optional<CompositeWeight>> dist(n);
  for (StateId q = 0; q < n; ++q) {
    if (const CompositeWeight* w = a.initial_if_any(q); w && useful(q)) dist[q] = *w;
  }
  PathExtremes out;
  for (const auto& comp : alg.components()) out.growing.emplace_back(comp.features.size(), false);

  const std::size_t limit = detect_growth ? n + 1 : rounds;
  for (std::size_t round = 1; round <= limit; ++round) {
    std::vector<std::optional<CompositeWeight>> next = dist;
    for (const Transition& t : a.transitions()) {
      if (!dist[t.from] || !useful(t.to)) continue;
      CompositeWeight w = alg.times(*dist[t.from], t.weight);
      next[t.to] = next[t.to] ? alg.plus(*next[t.to], w) : std::move(w);
    }
    bool changed = false;
    for (StateId q = 0; q < n; ++q) {
      if (next[q] == dist[q]) continue;
      changed = true;
      if (detect_growth && round == limit) {
        for (std::size_t c = 0; c < alg.size(); ++c) {
          const FeaturedMultiset& now = next[q]->parts[c];
          for (FeatureIndex f = 0; f < now.alphabet().size(); ++f) {
            if (!dist[q] || !(now[f] == dist[q]->parts[c][f])) out.growing[c][f] = true;
          }
        }
      }
    }
    dist = std::move(next);
    if (!changed) break;
  }
  for (StateId q = 0; q < n; ++q) {
    const CompositeWeight* fin = a.final_if_any(q);
    if (!dist[q] || !fin) continue;
    CompositeWeight w = alg.times(*dist[q], *fin);
    if (alg.is_zero(w)) continue;
    out.total = out.total ? alg.plus(*out.total, w) : std::move(w);
  }
  return out;
}

// Per global feature, the join of the lower-bounding parts (clamped at 0).
FeaturedMultiset lower_join(const WeightAlgebra& alg, const CompositeWeight& w) {
  FeaturedMultiset m(alg.features());
  for (std::size_t c = 0; c < alg.size(); ++c) {
    const SemiringComponent& comp = alg.components()[c];
    if (comp.semiring.direction() != BoundDirection::Lower) continue;
    for (FeatureIndex f = 0; f < comp.features.size(); ++f) {
      const ExtendedCount v = w.parts[c][f];
      const FeatureIndex g = alg.global_index(c, f);
      if (v.is_finite() && m[g] < v) m.set(g, v);
    }
  }
  return m;
}

}  // namespace

SearchOptions default_search_options(const WeightedAutomaton& a) {
  SearchOptions o;
  o.cycle_guard = is_deterministic(a);
  return o;
}

FeaturedMultiset align_configuration(const WeightAlgebra& algebra, const FeaturedMultiset& m) {
  if (!m.is_configuration()) throw DomainError("configuration must assign finite counts: " + to_string(m));
  if (m.alphabet() == algebra.features()) return m;
  FeaturedMultiset out(algebra.features());
  for (FeatureIndex f = 0; f < m.alphabet().size(); ++f) {
    const ExtendedCount v = m[f];
    auto g = algebra.features().find(m.alphabet().name(f));
    if (!g) {
      if (v == ExtendedCount(0)) continue;
      throw InvalidArgument("configuration names unknown feature '" + m.alphabet().name(f) + "'");
    }
    out.set(*g, v);
  }
  return out;
}

AnalysisVerdict non_emptiness(const WeightedAutomaton& a, const FeaturedMultiset& m_in, std::size_t k,
                              const ExplorationOrder& order, std::optional<SearchOptions> options) {
  const WeightAlgebra& alg = a.algebra();
  const FeaturedMultiset m = align_configuration(alg, m_in);
  const SearchOptions opts = options.value_or(default_search_options(a));
  const std::vector<bool> permanent = permanent_violation(a);
  const WordJudge judge{a, is_deterministic(a)};

  std::optional<Witness> witness;
  auto filter = [&](const Candidate& c) {
    if (!c.complete) {
      for (std::size_t i = 0; i < alg.size(); ++i) {
        if (permanent[i] && part_violates(m, c.weight.parts[i], alg.components()[i].semiring.direction()))
          return FilterDecision::SkipPath;
      }
      return FilterDecision::Continue;
    }
    CompositeWeight w = judge.weight_of(c);
    if (!alg.satisfies(m, w)) return FilterDecision::Continue;
    witness = Witness{c.path.label(), std::move(w)};
    return FilterDecision::TerminateSearch;
  };
  SearchResult r = k_bounded_search(a, k, order, filter, opts);

  AnalysisVerdict v;
  v.verdict = witness.has_value();
  v.witness = std::move(witness);
  v.explored_paths = r.paths.size();
  v.k_used = k;
  v.stop = r.stop;
  v.exact = r.stop == StopReason::Terminated ||
            (r.stop == StopReason::FrontierExhausted && guard_is_sound(a, opts));
  return v;
}

AnalysisVerdict universality(const WeightedAutomaton& a, const FeaturedMultiset& m_in, std::size_t k,
                             const ExplorationOrder& order, std::optional<SearchOptions> options) {
  const WeightAlgebra& alg = a.algebra();
  const FeaturedMultiset m = align_configuration(alg, m_in);
  const SearchOptions opts = options.value_or(default_search_options(a));
  const WordJudge judge{a, is_deterministic(a)};

  std::optional<Witness> witness;
  auto filter = [&](const Candidate& c) {
    if (!c.complete) return FilterDecision::Continue;
    CompositeWeight w = judge.weight_of(c);
    if (alg.satisfies(m, w)) return FilterDecision::Continue;
    witness = Witness{c.path.label(), std::move(w)};
    return FilterDecision::TerminateSearch;
  };
  SearchResult r = k_bounded_search(a, k, order, filter, opts);

  AnalysisVerdict v;
  v.verdict = !witness.has_value();
  v.witness = std::move(witness);
  v.explored_paths = r.paths.size();
  v.k_used = k;
  v.stop = r.stop;
  v.exact = r.stop == StopReason::Terminated ||
            (r.stop == StopReason::FrontierExhausted && guard_is_sound(a, opts));
  return v;
}

AnalysisVerdict lower_boundedness(const WeightedAutomaton& a, std::size_t k, const ExplorationOrder& order,
                                  std::optional<SearchOptions> options) {
  const WeightAlgebra& alg = a.algebra();
  const FeaturedMultiset empty(alg.features());

  if (alg.all_lower()) {
    AnalysisVerdict r = non_emptiness(a, empty, k, order, options);
    r.verdict = !r.verdict;
    if (r.verdict) r.bound = empty;
    return r;
  }

  // Past every finite entry any min-min word weight is unsatisfiable unless
  // it is infinite everywhere.
  std::int64_t big = 0;
  auto scan = [&](const CompositeWeight& w) {
    for (const FeaturedMultiset& part : w.parts) {
      if (part.default_value().is_finite()) big = std::max(big, part.default_value().value());
      for (const auto& e : part.entries())
        if (e.second.is_finite()) big = std::max(big, e.second.value());
    }
  };
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (const CompositeWeight* w = a.initial_if_any(q)) scan(*w);
    if (const CompositeWeight* w = a.final_if_any(q)) scan(*w);
  }
  for (const Transition& t : a.transitions()) scan(t.weight);
  FeaturedMultiset large(alg.features());
  for (FeatureIndex f = 0; f < alg.features().size(); ++f) large.set(f, ExtendedCount(big + 1));

  const bool pure_min_min = std::all_of(alg.components().begin(), alg.components().end(), [](const auto& c) {
    return c.semiring.kind() == SemiringKind::MinMin || c.semiring.kind() == SemiringKind::Boolean;
  });

  AnalysisVerdict last;
  std::size_t explored = 0;
  for (const FeaturedMultiset* m : std::initializer_list<const FeaturedMultiset*>{&empty, &large}) {
    AnalysisVerdict r = non_emptiness(a, *m, k, order, options);
    explored += r.explored_paths;
    if (!r.verdict) {
      r.verdict = true;
      r.bound = *m;
      r.explored_paths = explored;
      return r;
    }
    last = std::move(r);
  }
  last.verdict = false;
  last.explored_paths = explored;
  last.exact = pure_min_min;
  return last;
}

AnalysisVerdict upper_boundedness(const WeightedAutomaton& a, std::size_t k, const ExplorationOrder& order,
                                  BoundednessMethod method, std::optional<SearchOptions> options) {
  const WeightAlgebra& alg = a.algebra();
  if (method == BoundednessMethod::Auto)
    method = every_path_live(a) ? BoundednessMethod::Exact : BoundednessMethod::Bounded;

  AnalysisVerdict v;
  v.k_used = k;
  if (method == BoundednessMethod::Exact) {
    if (!every_path_live(a))
      throw UnsupportedOperation("exact upper boundedness needs weights without absorbing entries");
    PathExtremes ext = path_extremes(a, 0, true);
    v.exact = true;
    if (!ext.total) {
      v.verdict = true;
      v.bound = FeaturedMultiset(alg.features());
      return v;
    }
    for (std::size_t c = 0; c < alg.size(); ++c) {
      if (alg.components()[c].semiring.direction() != BoundDirection::Lower) continue;
      for (bool g : ext.growing[c])
        if (g) return v;
    }
    FeaturedMultiset m = lower_join(alg, *ext.total);
    for (std::size_t c = 0; c < alg.size(); ++c) {
      const SemiringComponent& comp = alg.components()[c];
      if (comp.semiring.direction() != BoundDirection::Upper) continue;
      for (FeatureIndex f = 0; f < comp.features.size(); ++f) {
        if (ext.total->parts[c][f] < m[alg.global_index(c, f)]) return v;
      }
    }
    v.verdict = true;
    v.bound = std::move(m);
    return v;
  }

  PathExtremes ext = path_extremes(a, 2 * a.num_states(), false);
  FeaturedMultiset candidate = ext.total ? lower_join(alg, *ext.total) : FeaturedMultiset(alg.features());
  AnalysisVerdict r = universality(a, candidate, k, order, options);
  r.exact = false;
  if (r.verdict) r.bound = std::move(candidate);
  return r;
}

WeightedAutomaton project(const WeightedAutomaton& a, const FeaturedMultiset& m_in) {
  const WeightAlgebra& alg = a.algebra();
  for (const SemiringComponent& c : alg.components()) {
    if (c.semiring.is_additive())
      throw UnsupportedOperation("projection is not a local construction over " + std::string(c.semiring.name()));
  }
  const FeaturedMultiset m = align_configuration(alg, m_in);
  return a.filter_transitions([&](const Transition& t) { return alg.satisfies(m, t.weight); });
}

std::string report_line(const WeightedAutomaton& a, std::string_view problem,
                        const std::optional<FeaturedMultiset>& config, const AnalysisVerdict& v) {
  std::string out = "PROBLEM=" + std::string(problem);
  out += " CONFIG=" + (config ? to_compact_string(*config) : std::string("-"));
  out += v.verdict ? " VERDICT=true" : " VERDICT=false";
  out += v.exact ? " EXACT=true" : " EXACT=false";
  out += " K=" + std::to_string(v.k_used);
  out += " WITNESS=" + (v.witness ? word_to_string(a, v.witness->word) : std::string("-"));
  return out;
}

}  // namespace wafm
