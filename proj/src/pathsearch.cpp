#include "wafm/pathsearch.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "wafm/error.hpp"

namespace wafm {

namespace {

struct KeySlot {
  std::size_t component;
  FeatureIndex local;
  bool descending;
};

std::vector<KeySlot> key_plan(const WeightAlgebra& algebra, const std::vector<std::string>& stages) {
  std::vector<KeySlot> plan;
  std::vector<std::vector<bool>> used;
  for (const SemiringComponent& c : algebra.components()) used.emplace_back(c.features.size(), false);
  for (const std::string& f : stages) {
    if (!algebra.features().contains(f)) throw InvalidArgument("order names unknown feature '" + f + "'");
    for (std::size_t c = 0; c < algebra.size(); ++c) {
      const SemiringComponent& comp = algebra.components()[c];
      if (auto local = comp.features.find(f)) {
        if (used[c][*local]) continue;
        used[c][*local] = true;
        plan.push_back({c, *local, comp.semiring.descending_search()});
      }
    }
  }
  for (std::size_t c = 0; c < algebra.size(); ++c) {
    const SemiringComponent& comp = algebra.components()[c];
    for (FeatureIndex i = 0; i < comp.features.size(); ++i)
      if (!used[c][i]) plan.push_back({c, i, comp.semiring.descending_search()});
  }
  return plan;
}

std::vector<std::int64_t> eval_key(const std::vector<KeySlot>& plan, const CompositeWeight& w) {
  std::vector<std::int64_t> key;
  key.reserve(plan.size());
  for (const KeySlot& s : plan) {
    std::int64_t code = w.parts.at(s.component)[s.local].code();
    key.push_back(s.descending ? -code : code);
  }
  return key;
}

// Remaining tie-breaks once the weight keys are equal. Returns <0, 0, >0.
int compare_paths(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
  if (a.symbols != b.symbols) return a.symbols < b.symbols ? -1 : 1;
  if (a.states != b.states) return a.states < b.states ? -1 : 1;
  return 0;
}

// Frontier paths share prefixes: each step links to its parent, so a node
// costs O(1) memory however long its path is.
struct Step {
  std::uint32_t parent;
  StateId state;
  SymbolId symbol;
  std::uint32_t length;
};

constexpr std::uint32_t kNoParent = UINT32_MAX;

class PathArena {
 public:
  std::uint32_t root(StateId q) { return add({kNoParent, q, 0, 0}); }
  std::uint32_t extend(std::uint32_t parent, SymbolId s, StateId q) {
    return add({parent, q, s, steps_[parent].length + 1});
  }

  // The path ending at step i. Consecutive calls usually share a long
  // prefix, so only the steps below the last common ancestor are rewritten.
  const Path& view(std::uint32_t i) {
    pending_.clear();
    std::uint32_t at = i;
    while (at != kNoParent) {
      const std::uint32_t len = steps_[at].length;
      if (len < view_ids_.size() && view_ids_[len] == at) break;
      pending_.push_back(at);
      at = steps_[at].parent;
    }
    const std::size_t keep = at == kNoParent ? 0 : steps_[at].length + 1;
    view_ids_.resize(keep);
    view_.states.resize(keep);
    view_.symbols.resize(keep == 0 ? 0 : keep - 1);
    for (auto it = pending_.rbegin(); it != pending_.rend(); ++it) {
      const Step& st = steps_[*it];
      view_ids_.push_back(*it);
      view_.states.push_back(st.state);
      if (st.length > 0) view_.symbols.push_back(st.symbol);
    }
    return view_;
  }

  // Same order as compare_paths on the materialized paths.
  int compare(std::uint32_t a, std::uint32_t b) const {
    if (steps_[a].length != steps_[b].length) return steps_[a].length < steps_[b].length ? -1 : 1;
    // Walking up, the last difference seen is the earliest one in the path.
    int symbol_order = 0, state_order = 0;
    while (a != b) {
      const Step& x = steps_[a];
      const Step& y = steps_[b];
      if (x.length > 0 && x.symbol != y.symbol) symbol_order = x.symbol < y.symbol ? -1 : 1;
      if (x.state != y.state) state_order = x.state < y.state ? -1 : 1;
      if (x.length == 0) break;
      a = x.parent;
      b = y.parent;
    }
    return symbol_order != 0 ? symbol_order : state_order;
  }

  StateId last_state(std::uint32_t i) const { return steps_[i].state; }

 private:
  std::uint32_t add(Step s) {
    if (steps_.size() >= kNoParent) throw InvalidArgument("search frontier too large");
    steps_.push_back(s);
    return static_cast<std::uint32_t>(steps_.size() - 1);
  }

  std::vector<Step> steps_;
  Path view_;
  std::vector<std::uint32_t> view_ids_;
  std::vector<std::uint32_t> pending_;
};

struct Node {
  std::uint32_t step;
  CompositeWeight weight;
  std::vector<std::int64_t> key;
  bool complete;
};

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

std::vector<std::int64_t> guard_signature(StateId q, const CompositeWeight& w) {
  std::vector<std::int64_t> sig{static_cast<std::int64_t>(q)};
  for (const FeaturedMultiset& part : w.parts)
    for (FeatureIndex i = 0; i < part.alphabet().size(); ++i) sig.push_back(part[i].code());
  return sig;
}

}  // namespace

ExplorationOrder::ExplorationOrder(std::vector<std::string> stages) : stages_(std::move(stages)) {
  std::vector<std::string> sorted = stages_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("order lists a feature twice");
}

ExplorationOrder ExplorationOrder::parse(std::string_view text) {
  std::vector<std::string> stages;
  std::string cur;
  auto flush = [&] {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) stages.push_back(cur.substr(b, e - b + 1));
    else if (!stages.empty() || !cur.empty()) throw InvalidArgument("empty feature name in order");
    cur.clear();
  };
  if (text.find_first_not_of(" \t") == std::string_view::npos) return ExplorationOrder();
  for (char ch : text) {
    if (ch == ',') flush();
    else cur += ch;
  }
  flush();
  return ExplorationOrder(std::move(stages));
}

std::vector<std::int64_t> ExplorationOrder::key(const WeightAlgebra& algebra, const CompositeWeight& w) const {
  return eval_key(key_plan(algebra, stages_), w);
}

bool ExplorationOrder::before(const WeightAlgebra& algebra, const CompositeWeight& wa, const Path& pa,
                              const CompositeWeight& wb, const Path& pb) const {
  auto plan = key_plan(algebra, stages_);
  auto ka = eval_key(plan, wa);
  auto kb = eval_key(plan, wb);
  if (ka != kb) return ka < kb;
  return compare_paths(pa, pb) < 0;
}

std::string ExplorationOrder::to_string() const {
  std::string out;
  for (const std::string& s : stages_) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

BoundedPathList::BoundedPathList(std::size_t k, const WeightAlgebra& algebra, ExplorationOrder order)
    : k_(k), algebra_(&algebra), order_(std::move(order)) {
  if (k == 0) throw InvalidArgument("k must be positive");
}

void BoundedPathList::insert(PathEntry entry) {
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry, [&](const PathEntry& a, const PathEntry& b) {
    return order_.before(*algebra_, a.weight, a.path, b.weight, b.path);
  });
  if (entries_.size() >= k_ && pos == entries_.end()) return;
  entries_.insert(pos, std::move(entry));
  if (entries_.size() > k_) entries_.pop_back();
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::KReached: return "k-reached";
    case StopReason::FrontierExhausted: return "frontier-exhausted";
    case StopReason::Terminated: return "terminated";
    case StopReason::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

SearchResult k_bounded_search(const WeightedAutomaton& a, std::size_t k, const ExplorationOrder& order,
                              const WeightFilter& filter, const SearchOptions& options) {
  const WeightAlgebra& alg = a.algebra();
  SearchResult result{BoundedPathList(k, alg, order), StopReason::FrontierExhausted, 0};
  const auto plan = key_plan(alg, order.stages());
  const auto live = coreachable_states(a);

  // Min-heap in search order, kept with the std heap algorithms so the top
  // can be moved out.
  PathArena arena;
  std::vector<Node> heap;
  auto worse = [&arena](const Node& x, const Node& y) {
    if (x.key != y.key) return y.key < x.key;
    if (int c = arena.compare(x.step, y.step)) return c > 0;
    return y.complete && !x.complete;
  };
  auto push = [&](Node n) {
    heap.push_back(std::move(n));
    std::push_heap(heap.begin(), heap.end(), worse);
  };

  for (StateId q = 0; q < a.num_states(); ++q) {
    const CompositeWeight* w = a.initial_if_any(q);
    if (w == nullptr || !live[q]) continue;
    Node n{arena.root(q), *w, {}, false};
    n.key = eval_key(plan, n.weight);
    push(std::move(n));
  }

  std::unordered_set<std::vector<std::int64_t>, VectorHash> expanded;

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    Node n = std::move(heap.back());
    heap.pop_back();

    const Path& path = arena.view(n.step);
    const FilterDecision d =
        filter ? filter(Candidate{path, n.weight, n.complete}) : FilterDecision::Continue;
    if (d == FilterDecision::SkipPath) continue;

    if (n.complete) {
      result.paths.insert(PathEntry{path, std::move(n.weight)});
      if (d == FilterDecision::TerminateSearch) {
        result.stop = StopReason::Terminated;
        return result;
      }
      if (result.paths.full()) {
        result.stop = StopReason::KReached;
        return result;
      }
      continue;
    }
    if (d == FilterDecision::TerminateSearch) {
      result.stop = StopReason::Terminated;
      return result;
    }

    const StateId q = arena.last_state(n.step);
    if (options.cycle_guard && !expanded.insert(guard_signature(q, n.weight)).second) continue;
    if (result.expansions >= options.max_expansions) {
      result.stop = StopReason::BudgetExhausted;
      return result;
    }
    ++result.expansions;

    if (const CompositeWeight* wf = a.final_if_any(q)) {
      CompositeWeight w = alg.times(n.weight, *wf);
      if (!alg.is_zero(w)) {
        Node c{n.step, std::move(w), {}, true};
        c.key = eval_key(plan, c.weight);
        push(std::move(c));
      }
    }
    for (std::uint32_t ti : a.outgoing(q)) {
      const Transition& t = a.transitions()[ti];
      if (!live[t.to]) continue;
      CompositeWeight w = alg.times(n.weight, t.weight);
      if (alg.is_zero(w)) continue;
      Node c{arena.extend(n.step, t.symbol, t.to), std::move(w), {}, false};
      c.key = eval_key(plan, c.weight);
      push(std::move(c));
    }
  }
  return result;
}

std::vector<WordWeight> group_by_word(const WeightAlgebra& algebra, const std::vector<PathEntry>& entries) {
  std::vector<WordWeight> out;
  std::map<Word, std::size_t> index;
  for (const PathEntry& e : entries) {
    auto [it, fresh] = index.emplace(e.path.symbols, out.size());
    if (fresh) out.push_back(WordWeight{e.path.symbols, e.weight});
    else out[it->second].weight = algebra.plus(out[it->second].weight, e.weight);
  }
  return out;
}

std::vector<WordWeight> accepted_words_stream(const WeightedAutomaton& a, std::size_t k,
                                              const ExplorationOrder& order, const WeightFilter& filter,
                                              const SearchOptions& options) {
  SearchResult r = k_bounded_search(a, k, order, filter, options);
  return group_by_word(a.algebra(), r.paths.entries());
}

}  // namespace wafm
