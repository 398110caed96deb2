#include "wafm/ground_truth.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "wafm/error.hpp"

namespace wafm {

namespace {

void require_supported(const WeightedAutomaton& a) {
  if (!ground_truth_supported(a))
    throw UnsupportedOperation("ground truth needs a deterministic automaton over max-tropical/max-max components");
}

std::vector<std::int64_t> dense(const CompositeWeight& w) {
  std::vector<std::int64_t> out;
  for (const FeaturedMultiset& p : w.parts)
    for (FeatureIndex f = 0; f < p.alphabet().size(); ++f) out.push_back(p[f].code());
  return out;
}

// Whether `m` (over the global features) is below the lower bounds of `w`.
bool within(const WeightAlgebra& alg, const FeaturedMultiset& m, const CompositeWeight& w) {
  for (std::size_t c = 0; c < alg.size(); ++c) {
    const FeaturedMultiset& part = w.parts[c];
    for (FeatureIndex f = 0; f < part.alphabet().size(); ++f)
      if (m[alg.global_index(c, f)] < part[f]) return false;
  }
  return true;
}

FeaturedMultiset over_features(const WeightAlgebra& alg, const FeaturedMultiset& m) {
  FeaturedMultiset out(alg.features());
  for (FeatureIndex f = 0; f < m.alphabet().size(); ++f) {
    if (auto g = alg.features().find(m.alphabet().name(f))) out.set(*g, m[f]);
    else if (m[f] != ExtendedCount(0)) throw InvalidArgument("unknown feature " + m.alphabet().name(f));
  }
  return out;
}

// Tarjan's algorithm; returns the component of every state, numbered in
// reverse topological order (sinks first).
std::vector<int> strongly_connected(std::size_t n, const std::vector<std::vector<StateId>>& succ) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  int counter = 0, comps = 0;
  std::function<void(StateId)> visit = [&](StateId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (StateId w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (StateId v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comp;
}

}  // namespace

bool ground_truth_supported(const WeightedAutomaton& a) {
  if (!is_deterministic(a)) return false;
  const WeightAlgebra& alg = a.algebra();
  auto bad_entry = [&](const CompositeWeight& w) {
    for (std::size_t c = 0; c < alg.size(); ++c) {
      if (alg.components()[c].semiring.kind() != SemiringKind::MaxTropical) continue;
      const FeaturedMultiset& p = w.parts[c];
      for (FeatureIndex f = 0; f < p.alphabet().size(); ++f)
        if (p[f].is_neg_inf()) return true;
    }
    return false;
  };
  for (const SemiringComponent& c : alg.components()) {
    if (c.semiring.kind() != SemiringKind::MaxTropical && c.semiring.kind() != SemiringKind::MaxMax) return false;
  }
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (const CompositeWeight* w = a.initial_if_any(q); w && bad_entry(*w)) return false;
    if (const CompositeWeight* w = a.final_if_any(q); w && bad_entry(*w)) return false;
  }
  return std::none_of(a.transitions().begin(), a.transitions().end(),
                      [&](const Transition& t) { return bad_entry(t.weight); });
}

bool truth_non_emptiness(const WeightedAutomaton& a, const FeaturedMultiset& m_in) {
  require_supported(a);
  const WeightAlgebra& alg = a.algebra();
  const FeaturedMultiset m = over_features(alg, m_in);
  // Weights only grow along a path, so partial weights above m are dead and
  // the explored (state, weight) set is finite.
  std::set<std::pair<StateId, std::vector<std::int64_t>>> seen;
  std::deque<std::pair<StateId, CompositeWeight>> queue;
  for (StateId q = 0; q < a.num_states(); ++q) {
    if (const CompositeWeight* w = a.initial_if_any(q); w && within(alg, m, *w)) queue.emplace_back(q, *w);
  }
  while (!queue.empty()) {
    auto [q, w] = std::move(queue.front());
    queue.pop_front();
    if (!seen.emplace(q, dense(w)).second) continue;
    if (const CompositeWeight* f = a.final_if_any(q)) {
      if (within(alg, m, alg.times(w, *f))) return true;
    }
    for (std::uint32_t i : a.outgoing(q)) {
      const Transition& t = a.transitions()[i];
      CompositeWeight next = alg.times(w, t.weight);
      if (within(alg, m, next)) queue.emplace_back(t.to, std::move(next));
    }
  }
  return false;
}

std::vector<std::optional<ExtendedCount>> language_supremum(const WeightedAutomaton& a) {
  require_supported(a);
  const WeightAlgebra& alg = a.algebra();
  const std::size_t n = a.num_states();
  const auto reach = reachable_states(a);
  const auto live = coreachable_states(a);
  auto useful = [&](StateId q) { return reach[q] && live[q]; };

  std::vector<std::vector<StateId>> succ(n);
  for (const Transition& t : a.transitions())
    if (useful(t.from) && useful(t.to)) succ[t.from].push_back(t.to);
  const std::vector<int> comp = strongly_connected(n, succ);
  int num_comps = 0;
  for (int c : comp) num_comps = std::max(num_comps, c + 1);

  std::vector<std::optional<ExtendedCount>> sup(alg.features().size(), ExtendedCount::neg_inf());
  for (std::size_t c = 0; c < alg.size(); ++c) {
    const SemiringComponent& sc = alg.components()[c];
    for (FeatureIndex f = 0; f < sc.features.size(); ++f) {
      const FeatureIndex g = alg.global_index(c, f);
      auto entry = [&](const CompositeWeight& w) { return w.parts[c][f]; };
      ExtendedCount best = ExtendedCount::neg_inf();
      if (sc.semiring.kind() == SemiringKind::MaxMax) {
        for (StateId q = 0; q < n; ++q) {
          if (!useful(q)) continue;
          if (const CompositeWeight* w = a.initial_if_any(q)) best = std::max(best, entry(*w));
          if (const CompositeWeight* w = a.final_if_any(q)) best = std::max(best, entry(*w));
        }
        for (const Transition& t : a.transitions())
          if (useful(t.from) && useful(t.to)) best = std::max(best, entry(t.weight));
      } else {
        bool pumps = false;
        for (const Transition& t : a.transitions()) {
          if (useful(t.from) && useful(t.to) && comp[t.from] == comp[t.to] && ExtendedCount(0) < entry(t.weight))
            pumps = true;
        }
        if (pumps) {
          sup[g] = std::nullopt;
          continue;
        }
        // Longest continuation from each component, sinks first.
        std::vector<ExtendedCount> from(num_comps, ExtendedCount::neg_inf());
        for (int k = 0; k < num_comps; ++k) {
          for (StateId q = 0; q < n; ++q) {
            if (comp[q] != k || !useful(q)) continue;
            if (const CompositeWeight* w = a.final_if_any(q)) from[k] = std::max(from[k], entry(*w));
            for (std::uint32_t i : a.outgoing(q)) {
              const Transition& t = a.transitions()[i];
              if (!useful(t.to) || comp[t.to] == k) continue;
              if (!from[comp[t.to]].is_neg_inf()) from[k] = std::max(from[k], entry(t.weight) + from[comp[t.to]]);
            }
          }
        }
        for (StateId q = 0; q < n; ++q) {
          const CompositeWeight* w = a.initial_if_any(q);
          if (w && useful(q) && !from[comp[q]].is_neg_inf()) best = std::max(best, entry(*w) + from[comp[q]]);
        }
      }
      if (sup[g]) sup[g] = std::max(*sup[g], best);
    }
  }
  return sup;
}

bool truth_universality(const WeightedAutomaton& a, const FeaturedMultiset& m_in) {
  const FeaturedMultiset m = over_features(a.algebra(), m_in);
  const auto sup = language_supremum(a);
  for (FeatureIndex f = 0; f < sup.size(); ++f) {
    if (!sup[f] || m[f] < *sup[f]) return false;
  }
  return true;
}

bool truth_lower_boundedness(const WeightedAutomaton& a) {
  return !truth_non_emptiness(a, FeaturedMultiset(a.algebra().features()));
}

bool truth_upper_boundedness(const WeightedAutomaton& a) {
  const auto sup = language_supremum(a);
  return std::all_of(sup.begin(), sup.end(), [](const auto& s) { return s.has_value(); });
}

}  // namespace wafm
