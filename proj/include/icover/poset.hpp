#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "icover/error.hpp"

namespace icover {

using Element = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;
using Edge = std::pair<Element, Element>;

// ---------------------------------------------------------------------------
// ElementSet helpers

inline ElementSet make_set(std::size_t universe, std::initializer_list<Element> members) {
  ElementSet s(universe);
  for (Element x : members) s.set(x);
  return s;
}

inline ElementSet make_set(std::size_t universe, const std::vector<Element>& members) {
  ElementSet s(universe);
  for (Element x : members) s.set(x);
  return s;
}

template <typename F>
void for_each_member(const ElementSet& s, F&& f) {
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) f(static_cast<Element>(i));
}

inline std::vector<Element> members(const ElementSet& s) {
  std::vector<Element> out;
  out.reserve(s.count());
  for_each_member(s, [&](Element x) { out.push_back(x); });
  return out;
}

inline ElementSet mask_to_set(std::size_t universe, std::uint64_t mask) {
  ElementSet s(universe);
  for (std::size_t i = 0; i < universe && i < 64; ++i)
    if ((mask >> i) & 1U) s.set(i);
  return s;
}

inline std::uint64_t set_to_mask(const ElementSet& s) {
  std::uint64_t m = 0;
  for_each_member(s, [&](Element x) { m |= std::uint64_t{1} << x; });
  return m;
}

// ---------------------------------------------------------------------------
// Poset

/// Finite poset over elements 0..size()-1. The order is held as a dense
/// up-set/down-set bitset per element, so comparability queries are O(1).
/// Immutable once built.
class Poset {
 public:
  Poset() = default;

  /// Order generated by `edges` (u below v). Rejects cycles and out-of-range
  /// indices. Edges need not be covers; the cover relation is re-derived.
  static Poset from_edges(std::size_t n, const std::vector<Edge>& edges,
                          std::vector<std::string> labels = {}) {
    std::vector<std::vector<Element>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        fail(ErrorKind::ElementOutOfRange,
             "edge (" + std::to_string(u) + "," + std::to_string(v) + ") outside 0.." + std::to_string(n));
      if (u == v) fail(ErrorKind::CycleDetected, "self-loop at " + std::to_string(u));
      succ[u].push_back(v);
      ++indeg[v];
    }
    std::vector<Element> order;
    order.reserve(n);
    std::vector<Element> ready;
    for (std::size_t i = n; i-- > 0;)
      if (indeg[i] == 0) ready.push_back(static_cast<Element>(i));
    while (!ready.empty()) {
      Element x = ready.back();
      ready.pop_back();
      order.push_back(x);
      for (Element y : succ[x])
        if (--indeg[y] == 0) ready.push_back(y);
    }
    if (order.size() != n) fail(ErrorKind::CycleDetected, "cover edges contain a directed cycle");

    std::vector<ElementSet> down(n, ElementSet(n));
    for (std::size_t i = 0; i < n; ++i) down[i].set(i);
    for (Element x : order)
      for (Element y : succ[x]) down[y] |= down[x];
    std::vector<ElementSet> up(n, ElementSet(n));
    for (std::size_t y = 0; y < n; ++y)
      for_each_member(down[y], [&](Element x) { up[x].set(y); });
    return Poset(std::move(up), std::move(down), std::move(labels));
  }

  /// Order given directly as up-sets (up[x] = {y : x <= y}). Validates that
  /// the relation is a partial order.
  static Poset from_up_sets(std::vector<ElementSet> up, std::vector<std::string> labels = {}) {
    const std::size_t n = up.size();
    for (std::size_t x = 0; x < n; ++x) {
      if (up[x].size() != n) fail(ErrorKind::ElementOutOfRange, "relation row has wrong width");
      if (!up[x].test(x)) fail(ErrorKind::PreconditionViolated, "relation is not reflexive");
    }
    std::vector<ElementSet> down(n, ElementSet(n));
    for (std::size_t x = 0; x < n; ++x)
      for_each_member(up[x], [&](Element y) { down[y].set(x); });
    for (std::size_t x = 0; x < n; ++x) {
      if ((up[x] & down[x]).count() != 1) fail(ErrorKind::CycleDetected, "relation is not antisymmetric");
      bool transitive = true;
      for_each_member(up[x], [&](Element y) {
        if (!up[y].is_subset_of(up[x])) transitive = false;
      });
      if (!transitive) fail(ErrorKind::PreconditionViolated, "relation is not transitive");
    }
    return Poset(std::move(up), std::move(down), std::move(labels));
  }

  std::size_t size() const { return up_.size(); }
  bool leq(Element x, Element y) const { return up_[x].test(y); }
  bool less(Element x, Element y) const { return x != y && up_[x].test(y); }
  bool comparable(Element x, Element y) const { return up_[x].test(y) || down_[x].test(y); }

  const ElementSet& up(Element x) const { return up_[x]; }
  const ElementSet& down(Element x) const { return down_[x]; }
  const std::vector<Edge>& covers() const { return covers_; }
  const std::vector<Element>& upper_covers(Element x) const { return upper_covers_[x]; }
  const std::vector<Element>& lower_covers(Element x) const { return lower_covers_[x]; }

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const { return ElementSet(size()).set(); }

  ElementSet minimal() const {
    ElementSet s(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (lower_covers_[x].empty()) s.set(x);
    return s;
  }
  ElementSet maximal() const {
    ElementSet s(size());
    for (std::size_t x = 0; x < size(); ++x)
      if (upper_covers_[x].empty()) s.set(x);
    return s;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Element x) const {
    return x < labels_.size() && !labels_[x].empty() ? labels_[x] : std::to_string(x);
  }

  /// Induced subposet on `keep`; `original[i]` is the host index of element i.
  std::pair<Poset, std::vector<Element>> induced(const ElementSet& keep) const {
    std::vector<Element> original = members(keep);
    std::vector<ElementSet> up(original.size(), ElementSet(original.size()));
    for (std::size_t i = 0; i < original.size(); ++i)
      for (std::size_t j = 0; j < original.size(); ++j)
        if (leq(original[i], original[j])) up[i].set(j);
    std::vector<std::string> labels;
    if (!labels_.empty())
      for (Element x : original) labels.push_back(labels_[x]);
    std::vector<ElementSet> down(original.size(), ElementSet(original.size()));
    for (std::size_t i = 0; i < original.size(); ++i)
      for_each_member(up[i], [&](Element y) { down[y].set(i); });
    return {Poset(std::move(up), std::move(down), std::move(labels)), std::move(original)};
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

 private:
  Poset(std::vector<ElementSet> up, std::vector<ElementSet> down, std::vector<std::string> labels)
      : up_(std::move(up)), down_(std::move(down)), labels_(std::move(labels)) {
    derive_covers();
  }

  // Upper covers of x are the minimal elements of the strict up-set; visiting
  // candidates by increasing down-set size visits them in a linear extension.
  void derive_covers() {
    const std::size_t n = size();
    std::vector<Element> topo(n);
    std::iota(topo.begin(), topo.end(), Element{0});
    std::vector<std::size_t> rank(n);
    for (std::size_t x = 0; x < n; ++x) rank[x] = down_[x].count();
    std::stable_sort(topo.begin(), topo.end(), [&](Element a, Element b) { return rank[a] < rank[b]; });
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[topo[i]] = i;

    upper_covers_.assign(n, {});
    lower_covers_.assign(n, {});
    covers_.clear();
    for (std::size_t x = 0; x < n; ++x) {
      ElementSet candidates = up_[x];
      candidates.reset(x);
      std::vector<Element> ordered = members(candidates);
      std::sort(ordered.begin(), ordered.end(), [&](Element a, Element b) { return position[a] < position[b]; });
      for (Element y : ordered) {
        if (!candidates.test(y)) continue;
        upper_covers_[x].push_back(y);
        candidates -= up_[y];
      }
      std::sort(upper_covers_[x].begin(), upper_covers_[x].end());
      for (Element y : upper_covers_[x]) {
        lower_covers_[y].push_back(static_cast<Element>(x));
        covers_.emplace_back(static_cast<Element>(x), y);
      }
    }
  }

  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
  std::vector<std::string> labels_;
  std::vector<Edge> covers_;
  std::vector<std::vector<Element>> upper_covers_;
  std::vector<std::vector<Element>> lower_covers_;
};

inline Poset build_poset(const std::vector<Edge>& cover_edges, std::size_t size) {
  return Poset::from_edges(size, cover_edges);
}

inline Poset chain_poset(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Element>(i), static_cast<Element>(i + 1));
  return Poset::from_edges(n, edges);
}

inline Poset antichain_poset(std::size_t n) { return Poset::from_edges(n, {}); }

inline Poset dual(const Poset& p) {
  std::vector<ElementSet> up;
  up.reserve(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) up.push_back(p.down(static_cast<Element>(x)));
  return Poset::from_up_sets(std::move(up), p.labels());
}

// ---------------------------------------------------------------------------
// Ideals, filters, convexity

enum class Direction { Down, Up };

inline void check_subset(const Poset& p, const ElementSet& s) {
  if (s.size() != p.size())
    fail(ErrorKind::ElementOutOfRange, "set universe " + std::to_string(s.size()) + " does not match poset size " +
                                           std::to_string(p.size()));
}

/// Down-closure (or up-closure) of `s`.
inline ElementSet generated_set(const Poset& p, const ElementSet& s, Direction direction) {
  check_subset(p, s);
  ElementSet out(p.size());
  for_each_member(s, [&](Element x) { out |= direction == Direction::Down ? p.down(x) : p.up(x); });
  return out;
}

inline bool is_downset(const Poset& p, const ElementSet& s) { return generated_set(p, s, Direction::Down) == s; }
inline bool is_upset(const Poset& p, const ElementSet& s) { return generated_set(p, s, Direction::Up) == s; }

// S is convex iff it equals the intersection of its down- and up-closure.
inline bool is_convex(const Poset& p, const ElementSet& s) {
  return (generated_set(p, s, Direction::Down) & generated_set(p, s, Direction::Up)) == s;
}

inline bool is_antichain(const Poset& p, const ElementSet& s) {
  check_subset(p, s);
  bool ok = true;
  for_each_member(s, [&](Element x) {
    ElementSet others = p.up(x) | p.down(x);
    others.reset(x);
    if (others.intersects(s)) ok = false;
  });
  return ok;
}

inline ElementSet minimal_of(const Poset& p, const ElementSet& s) {
  ElementSet out(p.size());
  for_each_member(s, [&](Element x) {
    ElementSet below = p.down(x) & s;
    if (below.count() == 1) out.set(x);
  });
  return out;
}

inline ElementSet maximal_of(const Poset& p, const ElementSet& s) {
  ElementSet out(p.size());
  for_each_member(s, [&](Element x) {
    ElementSet above = p.up(x) & s;
    if (above.count() == 1) out.set(x);
  });
  return out;
}

struct AntichainRelations {
  bool le = false;      // A <= B : A inside down(B) and B inside up(A)
  bool not_ge = false;  // A "not >=" B : no a has all of B below it, no b has all of A above it
};

inline AntichainRelations antichain_relations(const Poset& p, const ElementSet& a, const ElementSet& b) {
  check_subset(p, a);
  check_subset(p, b);
  AntichainRelations r;
  r.le = a.is_subset_of(generated_set(p, b, Direction::Down)) && b.is_subset_of(generated_set(p, a, Direction::Up));
  bool not_ge = a.any() && b.any();
  for_each_member(a, [&](Element x) {
    if (b.is_subset_of(p.down(x))) not_ge = false;
  });
  for_each_member(b, [&](Element y) {
    if (a.is_subset_of(p.up(y))) not_ge = false;
  });
  r.not_ge = not_ge;
  return r;
}

/// The convex hull [A, B] of two antichains with A <= B.
struct ConvexSpan {
  ElementSet lower;
  ElementSet upper;
  ElementSet elements;
};

inline ConvexSpan convex_span(const Poset& p, const ElementSet& a, const ElementSet& b) {
  if (!is_antichain(p, a) || !is_antichain(p, b)) fail(ErrorKind::NotAntichain, "span endpoints must be antichains");
  if (!antichain_relations(p, a, b).le) fail(ErrorKind::NotDominated, "lower antichain is not dominated by upper");
  return ConvexSpan{a, b, generated_set(p, a, Direction::Up) & generated_set(p, b, Direction::Down)};
}

// ---------------------------------------------------------------------------
// Ranks

struct RankProfile {
  std::vector<std::size_t> rank;
  std::vector<ElementSet> levels;
  std::vector<std::size_t> level_sizes;

  std::size_t height() const { return levels.empty() ? 0 : levels.size() - 1; }
};

inline RankProfile rank_profile(const Poset& p) {
  const std::size_t n = p.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  RankProfile prof;
  prof.rank.assign(n, unset);
  std::vector<std::size_t> pending(n);
  std::vector<Element> queue;
  for (std::size_t x = 0; x < n; ++x) {
    pending[x] = p.lower_covers(static_cast<Element>(x)).size();
    if (pending[x] == 0) {
      prof.rank[x] = 0;
      queue.push_back(static_cast<Element>(x));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Element y = queue[head];
    for (Element z : p.upper_covers(y)) {
      std::size_t want = prof.rank[y] + 1;
      if (prof.rank[z] == unset) {
        prof.rank[z] = want;
      } else if (prof.rank[z] != want) {
        fail(ErrorKind::NotRanked, "element " + std::to_string(z) + " reached at ranks " +
                                       std::to_string(prof.rank[z]) + " and " + std::to_string(want));
      }
      if (--pending[z] == 0) queue.push_back(z);
    }
  }
  std::size_t top = 0;
  for (std::size_t r : prof.rank) top = std::max(top, r);
  if (n > 0) {
    prof.levels.assign(top + 1, ElementSet(n));
    for (std::size_t x = 0; x < n; ++x) prof.levels[prof.rank[x]].set(x);
    for (const auto& level : prof.levels) prof.level_sizes.push_back(level.count());
  }
  return prof;
}

// ---------------------------------------------------------------------------
// Width

namespace detail {

inline void grow_antichain(const Poset& p, ElementSet& current, ElementSet candidates, ElementSet& best) {
  if (current.count() + candidates.count() <= best.count()) return;
  auto x = candidates.find_first();
  if (x == ElementSet::npos) {
    if (current.count() > best.count()) best = current;
    return;
  }
  const Element e = static_cast<Element>(x);
  candidates.reset(x);
  current.set(x);
  grow_antichain(p, current, candidates - (p.up(e) | p.down(e)), best);
  current.reset(x);
  grow_antichain(p, current, candidates, best);
}

}  // namespace detail

/// Largest antichain by exhaustive branch and bound.
inline ElementSet max_antichain_exhaustive(const Poset& p) {
  ElementSet best(p.size()), current(p.size());
  detail::grow_antichain(p, current, p.full_set(), best);
  return best;
}

/// Size of a maximum matching in the strict-comparability bipartite graph;
/// width = n - matching (Dilworth / Fulkerson).
inline std::size_t comparability_matching(const Poset& p) {
  const std::size_t n = p.size();
  constexpr Element none = static_cast<Element>(-1);
  std::vector<Element> match_right(n, none);
  std::size_t matched = 0;
  for (std::size_t x = 0; x < n; ++x) {
    ElementSet visited(n);
    std::function<bool(Element)> augment = [&](Element u) -> bool {
      ElementSet options = p.up(u) - visited;
      options.reset(u);
      for (auto v = options.find_first(); v != ElementSet::npos; v = options.find_next(v)) {
        visited.set(v);
        if (match_right[v] == none || augment(match_right[v])) {
          match_right[v] = u;
          return true;
        }
      }
      return false;
    };
    if (augment(static_cast<Element>(x))) ++matched;
  }
  return matched;
}

inline std::size_t width_dilworth(const Poset& p) { return p.size() - comparability_matching(p); }

inline std::size_t width(const Poset& p) {
  if (p.size() <= 24) return max_antichain_exhaustive(p).count();
  return width_dilworth(p);
}

// ---------------------------------------------------------------------------
// Ideal enumeration

/// Calls `visit(mask)` for every down-set of `p` exactly once, in increasing
/// order of the characteristic value sum(2^x for x in ideal). Needs
/// size() <= 64. A visitor returning bool stops the walk by returning false.
template <typename Visit>
void enumerate_ideals(const Poset& p, Visit&& visit) {
  constexpr bool can_stop = std::is_same_v<std::invoke_result_t<Visit&, std::uint64_t>, bool>;
  bool stopped = false;
  const std::size_t n = p.size();
  if (n > 64) fail(ErrorKind::SizeLimit, "ideal enumeration supports at most 64 elements");
  std::vector<std::uint64_t> below(n), above(n);
  for (std::size_t x = 0; x < n; ++x) {
    below[x] = set_to_mask(p.down(static_cast<Element>(x)));
    above[x] = set_to_mask(p.up(static_cast<Element>(x)));
  }
  // Elements are decided from the highest index down; exclusion first gives
  // ascending order. Decisions never dead-end: if e <= x <= i with e
  // excluded and i included we would already have e <= i.
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t k, std::uint64_t in,
                                                                           std::uint64_t out) {
    if (stopped) return;
    if (k == 0) {
      if constexpr (can_stop) {
        if (!visit(in)) stopped = true;
      } else {
        visit(in);
      }
      return;
    }
    const std::size_t x = k - 1;
    const std::uint64_t bit = std::uint64_t{1} << x;
    const bool forced_in = (above[x] & ~bit & in) != 0;
    const bool forced_out = (below[x] & ~bit & out) != 0;
    if (!forced_in) rec(k - 1, in, out | bit);
    if (!forced_out) rec(k - 1, in | bit, out);
  };
  rec(n, 0, 0);
}

inline std::vector<ElementSet> ideals(const Poset& p) {
  std::vector<ElementSet> out;
  enumerate_ideals(p, [&](std::uint64_t m) { out.push_back(mask_to_set(p.size(), m)); });
  return out;
}

inline std::size_t count_ideals(const Poset& p) {
  std::size_t count = 0;
  enumerate_ideals(p, [&](std::uint64_t) { ++count; });
  return count;
}

// ---------------------------------------------------------------------------
// ".poset" text format: first line n, then one "u v" cover edge per line.
// Lines starting with '#' are comments.

inline Poset parse_poset(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      long long value = -1;
      if (!(fields >> value) || value < 0)
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected element count");
      n = static_cast<std::size_t>(value);
      continue;
    }
    long long u = -1, v = -1;
    if (!(fields >> u >> v))
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected \"u v\"");
    std::string extra;
    if (fields >> extra) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": trailing tokens");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= *n || static_cast<std::size_t>(v) >= *n)
      fail(ErrorKind::ElementOutOfRange, "line " + std::to_string(line_no) + ": index out of range");
    edges.emplace_back(static_cast<Element>(u), static_cast<Element>(v));
  }
  if (!n) fail(ErrorKind::ParseError, "missing element count");
  return Poset::from_edges(*n, edges);
}

inline Poset parse_poset(const std::string& text) {
  std::istringstream in(text);
  return parse_poset(in);
}

inline std::string to_poset_text(const Poset& p, const std::string& comment = {}) {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << '\n';
  out << p.size() << '\n';
  for (auto [u, v] : p.covers()) out << u << ' ' << v << '\n';
  return out.str();
}

inline Poset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  return parse_poset(in);
}

inline void write_poset_file(const std::string& path, const Poset& p, const std::string& comment = {}) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
  out << to_poset_text(p, comment);
}

}  // namespace icover
