#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "icover/error.hpp"
#include "icover/poset.hpp"

namespace icover {

struct Interval {
  Element a = 0;
  Element b = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline ElementSet interval_elements(const Poset& p, const Interval& iv) { return p.up(iv.a) & p.down(iv.b); }

/// A family of intervals meant to cover `span`. `optimal` is true when the
/// size is known to be minimum.
struct IntervalCover {
  ConvexSpan span;
  std::vector<Interval> intervals;
  bool optimal = false;

  std::size_t size() const { return intervals.size(); }
};

struct CoverInstance {
  ConvexSpan span;
  std::vector<Interval> candidates;
};

inline ElementSet union_of(const Poset& p, const std::vector<Interval>& intervals) {
  ElementSet u(p.size());
  for (const auto& iv : intervals) u |= interval_elements(p, iv);
  return u;
}

/// Every interval runs from the span's lower antichain to its upper one and
/// the union is exactly the span.
inline bool is_valid_cover(const Poset& p, const IntervalCover& cover) {
  for (const auto& iv : cover.intervals) {
    if (iv.a >= p.size() || iv.b >= p.size()) return false;
    if (!cover.span.lower.test(iv.a) || !cover.span.upper.test(iv.b) || !p.leq(iv.a, iv.b)) return false;
  }
  return union_of(p, cover.intervals) == cover.span.elements;
}

/// Lower bound max(|A|, |B|): distinct elements of an antichain never share an
/// interval with endpoints in that antichain.
inline std::size_t trivial_lower_bound(const ConvexSpan& span) {
  return std::max(span.lower.count(), span.upper.count());
}

/// All [a, b] with a in the lower antichain, b in the upper one and a <= b,
/// ordered by (a, b).
inline CoverInstance candidate_intervals(const Poset& p, const ConvexSpan& span) {
  CoverInstance inst{span, {}};
  for_each_member(span.lower, [&](Element a) {
    for_each_member(span.upper, [&](Element b) {
      if (p.leq(a, b)) inst.candidates.push_back({a, b});
    });
  });
  return inst;
}

namespace detail {

/// Cover instance re-indexed onto the span: element i of the local universe
/// is the i-th member of span.elements.
struct LocalInstance {
  std::vector<Element> host;
  std::vector<ElementSet> coverage;          // per candidate, over local elements
  std::vector<ElementSet> containing;        // per local element, over candidates
  ElementSet lower_local, upper_local;  // empty unless the endpoint set is an antichain
  ElementSet all;

  LocalInstance(const Poset& p, const CoverInstance& inst) {
    host = members(inst.span.elements);
    const std::size_t n = host.size(), m = inst.candidates.size();
    std::vector<std::size_t> local(p.size(), n);
    for (std::size_t i = 0; i < n; ++i) local[host[i]] = i;
    coverage.assign(m, ElementSet(n));
    containing.assign(n, ElementSet(m));
    lower_local = upper_local = ElementSet(n);
    all = ElementSet(n).set();
    for (std::size_t c = 0; c < m; ++c) {
      for_each_member(interval_elements(p, inst.candidates[c]), [&](Element x) {
        if (local[x] < n) {
          coverage[c].set(local[x]);
          containing[local[x]].set(c);
        }
      });
    }
    // Each uncovered antichain element needs its own interval; that bound is
    // only sound when the endpoint set really is an antichain.
    const bool lower_ok = is_antichain(p, inst.span.lower), upper_ok = is_antichain(p, inst.span.upper);
    for (std::size_t i = 0; i < n; ++i) {
      if (lower_ok && inst.span.lower.test(host[i])) lower_local.set(i);
      if (upper_ok && inst.span.upper.test(host[i])) upper_local.set(i);
    }
    ElementSet reach(n);
    for (const auto& c : coverage) reach |= c;
    if (reach != all) fail(ErrorKind::Infeasible, "some span element lies in no candidate interval");
  }
};

inline std::vector<std::size_t> greedy_pick(const LocalInstance& li) {
  std::vector<std::size_t> chosen;
  ElementSet covered(li.all.size());
  while (covered != li.all) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t c = 0; c < li.coverage.size(); ++c) {
      std::size_t gain = (li.coverage[c] - covered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    chosen.push_back(best);
    covered |= li.coverage[best];
  }
  return chosen;
}

class BranchAndBound {
 public:
  BranchAndBound(const LocalInstance& li, std::optional<std::uint64_t> budget) : li_(li), budget_(budget) {}

  void run(std::vector<std::size_t> incumbent) {
    best_ = std::move(incumbent);
    root_bound_ = bound(ElementSet(li_.all.size()));
    std::vector<std::size_t> chosen;
    if (best_.size() > root_bound_) search(ElementSet(li_.all.size()), chosen);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  bool exhausted() const { return !stopped_; }
  std::uint64_t nodes() const { return nodes_; }
  std::size_t root_bound() const { return root_bound_; }

 private:
  // Uncovered elements whose candidate sets are pairwise disjoint each need
  // their own interval.
  std::size_t bound(const ElementSet& covered) const {
    ElementSet uncovered = li_.all - covered;
    std::size_t lo = (uncovered & li_.lower_local).count();
    std::size_t hi = (uncovered & li_.upper_local).count();
    std::vector<std::size_t> order = members_of(uncovered);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return li_.containing[x].count() < li_.containing[y].count();
    });
    ElementSet used(li_.coverage.size());
    std::size_t independent = 0;
    for (std::size_t e : order) {
      if (li_.containing[e].intersects(used)) continue;
      used |= li_.containing[e];
      ++independent;
    }
    return std::max({lo, hi, independent});
  }

  static std::vector<std::size_t> members_of(const ElementSet& s) {
    std::vector<std::size_t> out;
    for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) out.push_back(i);
    return out;
  }

  void search(const ElementSet& covered, std::vector<std::size_t>& chosen) {
    if (stopped_) return;
    if (budget_ && nodes_ >= *budget_) {
      stopped_ = true;
      return;
    }
    ++nodes_;
    if (covered == li_.all) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + bound(covered) >= best_.size()) return;
    // Branch on the uncovered element lying in the fewest candidates.
    std::size_t pivot = 0, fewest = std::numeric_limits<std::size_t>::max();
    ElementSet uncovered = li_.all - covered;
    for (auto e = uncovered.find_first(); e != ElementSet::npos; e = uncovered.find_next(e)) {
      std::size_t k = li_.containing[e].count();
      if (k < fewest) {
        fewest = k;
        pivot = e;
      }
    }
    for (auto c = li_.containing[pivot].find_first(); c != ElementSet::npos; c = li_.containing[pivot].find_next(c)) {
      chosen.push_back(c);
      search(covered | li_.coverage[c], chosen);
      chosen.pop_back();
      if (stopped_) return;
    }
  }

  const LocalInstance& li_;
  std::optional<std::uint64_t> budget_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  std::size_t root_bound_ = 0;
  bool stopped_ = false;
};

inline IntervalCover assemble(const CoverInstance& inst, const std::vector<std::size_t>& picked, bool optimal) {
  IntervalCover cover{inst.span, {}, optimal};
  std::vector<std::size_t> sorted = picked;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t c : sorted) cover.intervals.push_back(inst.candidates[c]);
  return cover;
}

}  // namespace detail

/// Picks the candidate covering the most uncovered elements, smallest index on
/// ties, until the span is covered.
inline IntervalCover greedy_cover(const Poset& p, const CoverInstance& inst) {
  detail::LocalInstance li(p, inst);
  auto picked = detail::greedy_pick(li);
  return detail::assemble(inst, picked, picked.size() == std::max(li.lower_local.count(), li.upper_local.count()));
}

struct SolveStats {
  std::uint64_t nodes = 0;
  std::size_t lower_bound = 0;
};

/// Minimum cover by branch and bound, seeded with the greedy cover. With a
/// node budget the search may stop early; the best cover found is returned
/// with `optimal == false`.
inline IntervalCover exact_min_cover(const Poset& p, const CoverInstance& inst,
                                     std::optional<std::uint64_t> node_budget = std::nullopt,
                                     SolveStats* stats = nullptr) {
  detail::LocalInstance li(p, inst);
  if (li.host.empty()) return IntervalCover{inst.span, {}, true};
  detail::BranchAndBound bb(li, node_budget);
  bb.run(detail::greedy_pick(li));
  if (stats) {
    stats->nodes = bb.nodes();
    stats->lower_bound = bb.root_bound();
  }
  const bool optimal = bb.exhausted() || bb.best().size() == bb.root_bound();
  return detail::assemble(inst, bb.best(), optimal);
}

inline IntervalCover exact_min_cover(const Poset& p, const ConvexSpan& span,
                                     std::optional<std::uint64_t> node_budget = std::nullopt) {
  return exact_min_cover(p, candidate_intervals(p, span), node_budget);
}

// ---------------------------------------------------------------------------
// Interval covering property

/// The slab between levels j and k of a ranked poset.
inline ConvexSpan level_span(const Poset& p, const RankProfile& prof, std::size_t j, std::size_t k) {
  if (j > k || k >= prof.levels.size()) fail(ErrorKind::NotLevels, "level indices out of range");
  return convex_span(p, prof.levels[j], prof.levels[k]);
}

struct IcpPair {
  std::size_t j = 0, k = 0;
  std::size_t rho = 0, bound = 0;
  bool optimal = true;
  bool holds() const { return rho == bound; }
};

struct IcpReport {
  bool holds = true;
  std::size_t rho = 0;    // for the requested pair, or the first failing pair
  std::size_t bound = 0;
  bool optimal = true;
  std::vector<IcpPair> pairs;
};

/// Checks rho(P_{j,k}) == max(r_j, r_k); with `strong`, for every pair of
/// levels (j and k are then ignored).
inline IcpReport icp_check(const Poset& p, std::size_t j, std::size_t k, bool strong,
                           std::optional<std::uint64_t> node_budget = std::nullopt) {
  RankProfile prof = rank_profile(p);
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  if (strong) {
    for (std::size_t a = 0; a < prof.levels.size(); ++a)
      for (std::size_t b = a; b < prof.levels.size(); ++b) todo.emplace_back(a, b);
  } else {
    if (j > k || k >= prof.levels.size()) fail(ErrorKind::NotLevels, "need 0 <= j <= k <= rank");
    todo.emplace_back(j, k);
  }
  IcpReport report;
  bool recorded = false;
  for (auto [a, b] : todo) {
    ConvexSpan span = level_span(p, prof, a, b);
    IntervalCover cover = exact_min_cover(p, candidate_intervals(p, span), node_budget);
    IcpPair pair{a, b, cover.size(), trivial_lower_bound(span), cover.optimal};
    report.pairs.push_back(pair);
    report.optimal = report.optimal && pair.optimal;
    if (!pair.holds()) report.holds = false;
    if (!recorded && (!pair.holds() || !strong)) {
      report.rho = pair.rho;
      report.bound = pair.bound;
      recorded = true;
    }
  }
  if (!recorded && !report.pairs.empty()) {
    report.rho = report.pairs.back().rho;
    report.bound = report.pairs.back().bound;
  }
  return report;
}

}  // namespace icover
