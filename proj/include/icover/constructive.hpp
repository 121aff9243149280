#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "icover/cover.hpp"
#include "icover/error.hpp"
#include "icover/lattice.hpp"
#include "icover/poset.hpp"

namespace icover {

// ---------------------------------------------------------------------------
// Surjections B -> A

/// f : B -> A, keyed by element of B.
using Surjection = std::map<Element, Element>;

struct Star {
  Element center = 0;
  std::vector<Element> leaves;
  Element a = 0;  // representative in A
  Element b = 0;  // representative in B
};

struct SurjectionTrace {
  std::vector<Element> peeled;                                        // isolated elements of A and B, in order
  std::vector<std::tuple<Element, Element, Element, Element>> deleted;  // path a < b > c < d; relation (c, b) dropped
  std::vector<Star> stars;
  std::vector<std::pair<Element, Element>> completion;                // (b, f(b)) outside the star cycle
  bool trivial = false;                                               // reached |A| == 1
};

/// Checks the surjection property on O(P): for every down-set X meeting A
/// and not containing B, some b in B - X has f(b) in X.
class SurjectionChecker {
 public:
  SurjectionChecker(const Poset& p, const ElementSet& a, const ElementSet& b)
      : a_mask_(set_to_mask(a)), b_mask_(set_to_mask(b)), a_(a), b_(b) {
    enumerate_ideals(p, [&](std::uint64_t x) {
      if ((x & a_mask_) != 0 && (b_mask_ & ~x) != 0) ideals_.push_back(x);
    });
  }

  bool is_map(const Surjection& f) const {
    std::uint64_t hit = 0, domain = 0;
    for (auto [b, a] : f) {
      if (b >= 64 || a >= 64 || !b_.test(b) || !a_.test(a)) return false;
      domain |= std::uint64_t{1} << b;
      hit |= std::uint64_t{1} << a;
    }
    return domain == b_mask_ && hit == a_mask_;
  }

  bool check(const Surjection& f) const {
    if (!is_map(f)) return false;
    for (std::uint64_t x : ideals_) {
      bool found = false;
      for (auto [b, a] : f)
        if (!((x >> b) & 1U) && ((x >> a) & 1U)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

  /// Same test with f given as images of the members of B in index order.
  bool check_images(const std::vector<Element>& b_members, const std::vector<Element>& images) const {
    for (std::uint64_t x : ideals_) {
      bool found = false;
      for (std::size_t i = 0; i < b_members.size(); ++i)
        if (!((x >> b_members[i]) & 1U) && ((x >> images[i]) & 1U)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

 private:
  std::uint64_t a_mask_, b_mask_;
  ElementSet a_, b_;
  std::vector<std::uint64_t> ideals_;
};

inline bool verify_surjection(const Poset& p, const ElementSet& a, const ElementSet& b, const Surjection& f) {
  check_subset(p, a);
  check_subset(p, b);
  return SurjectionChecker(p, a, b).check(f);
}

namespace detail {

using Relation = std::vector<std::pair<Element, Element>>;  // strict a < b pairs

inline bool related(const Relation& rel, Element a, Element b) {
  return std::binary_search(rel.begin(), rel.end(), std::make_pair(a, b));
}

/// Stars and completion for antichains with no common element.
inline void star_surjection(std::vector<Element> as, std::vector<Element> bs, Relation rel, Surjection& f,
                            SurjectionTrace& trace) {
  std::sort(rel.begin(), rel.end());
  // Drop (c, b) from any path a < b > c < d until the graph is a star forest.
  for (bool changed = true; changed;) {
    changed = false;
    for (Element a : as) {
      for (Element b : bs) {
        if (!related(rel, a, b)) continue;
        for (Element c : as) {
          if (c == a || !related(rel, c, b)) continue;
          for (Element d : bs) {
            if (d == b || !related(rel, c, d)) continue;
            trace.deleted.emplace_back(a, b, c, d);
            rel.erase(std::lower_bound(rel.begin(), rel.end(), std::make_pair(c, b)));
            changed = true;
            break;
          }
          if (changed) break;
        }
        if (changed) break;
      }
      if (changed) break;
    }
  }

  std::map<Element, std::vector<Element>> adj;
  for (auto [a, b] : rel) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::map<Element, bool> in_a;
  for (Element a : as) in_a[a] = true;
  for (Element b : bs) in_a[b] = false;

  std::map<Element, bool> seen;
  std::vector<Star> stars;
  std::vector<Element> vertices = as;
  vertices.insert(vertices.end(), bs.begin(), bs.end());
  std::sort(vertices.begin(), vertices.end());
  for (Element v : vertices) {
    if (seen[v] || adj[v].empty()) continue;
    std::vector<Element> comp{v}, todo{v};
    seen[v] = true;
    while (!todo.empty()) {
      Element u = todo.back();
      todo.pop_back();
      for (Element w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
          todo.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    Star s;
    if (comp.size() == 2) {
      s.center = comp[0];
      s.leaves = {comp[1]};
      s.a = in_a[comp[0]] ? comp[0] : comp[1];
      s.b = in_a[comp[0]] ? comp[1] : comp[0];
    } else {
      auto center = *std::find_if(comp.begin(), comp.end(), [&](Element x) { return adj[x].size() > 1; });
      s.center = center;
      for (Element x : comp)
        if (x != center) s.leaves.push_back(x);
      if (in_a[center]) {
        s.a = center;
        s.b = s.leaves.front();
      } else {
        s.b = center;
        s.a = s.leaves.front();
      }
    }
    stars.push_back(std::move(s));
  }

  const std::size_t n = stars.size();
  std::map<Element, bool> hit;
  for (std::size_t i = 0; i < n; ++i) {
    f[stars[i].b] = stars[(i + 1) % n].a;
    hit[stars[(i + 1) % n].a] = true;
  }
  std::vector<Element> unhit;
  for (Element a : as)
    if (!hit[a]) unhit.push_back(a);
  std::size_t next = 0;
  for (Element b : bs) {
    if (f.count(b)) continue;
    Element target = next < unhit.size() ? unhit[next++] : as.front();
    f[b] = target;
    trace.completion.emplace_back(b, target);
  }
  trace.stars = std::move(stars);
}

inline Surjection surjection_rec(std::vector<Element> as, std::vector<Element> bs, const Relation& rel,
                                 SurjectionTrace& trace) {
  Surjection f;
  if (as.size() == 1) {
    trace.trivial = true;
    for (Element b : bs) f[b] = as.front();
    return f;
  }
  std::vector<Element> common;
  std::set_intersection(as.begin(), as.end(), bs.begin(), bs.end(), std::back_inserter(common));
  if (common.empty()) {
    star_surjection(as, bs, rel, f, trace);
    return f;
  }
  // c is isolated: solve without it, then splice it into the map.
  const Element c = common.front();
  trace.peeled.push_back(c);
  as.erase(std::find(as.begin(), as.end(), c));
  bs.erase(std::find(bs.begin(), bs.end(), c));
  f = surjection_rec(as, bs, rel, trace);
  const Element a = as.front();
  Element b0 = 0;
  for (auto [b, image] : f)
    if (image == a) {
      b0 = b;
      break;
    }
  f[b0] = c;
  f[c] = a;
  return f;
}

}  // namespace detail

/// Surjection f : B -> A with the down-set property, for antichains
/// A <= B with |A| <= |B|.
inline Surjection build_surjection(const Poset& p, const ElementSet& a, const ElementSet& b,
                                   SurjectionTrace* trace = nullptr) {
  check_subset(p, a);
  check_subset(p, b);
  if (!is_antichain(p, a) || !is_antichain(p, b)) fail(ErrorKind::NotAntichain, "A and B must be antichains");
  if (a.none()) fail(ErrorKind::PreconditionViolated, "A must be non-empty");
  if (a.count() > b.count()) fail(ErrorKind::SizeOrder, "need |A| <= |B|");
  if (!antichain_relations(p, a, b).le) fail(ErrorKind::NotDominated, "need A <= B");
  detail::Relation rel;
  for_each_member(a, [&](Element x) {
    for_each_member(b, [&](Element y) {
      if (p.less(x, y)) rel.emplace_back(x, y);
    });
  });
  SurjectionTrace local;
  Surjection f = detail::surjection_rec(members(a), members(b), rel, trace ? *trace : local);
  return f;
}

// ---------------------------------------------------------------------------
// Covers built from surjections

/// Intervals [bold f(b), bar b] for b in B, covering [bold A, bar B] in O(P).
inline IntervalCover cover_from_surjection(const DistributiveLattice& d, const BirkhoffMaps& maps,
                                           const ElementSet& a, const ElementSet& b, const Surjection& f) {
  const Poset& p = maps.source;
  if (!SurjectionChecker(p, a, b).check(f)) fail(ErrorKind::SurjectionInvalid, "map fails the down-set property");
  if (!antichain_relations(p, a, b).not_ge) fail(ErrorKind::PreconditionViolated, "need A not >= B");
  auto [bold_a, bar_a] = bold_bar(maps, d.size(), a);
  auto [bold_b, bar_b] = bold_bar(maps, d.size(), b);
  IntervalCover cover{convex_span(d.order(), bold_a, bar_b), {}, true};
  for (auto [y, x] : f) cover.intervals.push_back({maps.bold[x], maps.bar[y]});
  std::sort(cover.intervals.begin(), cover.intervals.end(),
            [](const Interval& s, const Interval& t) { return std::tie(s.a, s.b) < std::tie(t.a, t.b); });
  if (!is_valid_cover(d.order(), cover)) fail(ErrorKind::InternalError, "surjection cover does not cover");
  cover.optimal = cover.size() == trivial_lower_bound(cover.span);
  return cover;
}

struct ConstructionTrace {
  bool dualized = false;
  bool degenerate = false;  // one atom or one coatom
  std::optional<SurjectionTrace> surjection;
  std::optional<std::size_t> split_size;  // two levels: b's above the split element
  std::optional<std::size_t> family;      // index of the covering family that worked
  std::size_t relabelings = 0;            // shuffled labelings tried before a family covered
};

struct Construction {
  IntervalCover cover;
  ConstructionTrace trace;
};

namespace detail {

inline void sort_intervals(std::vector<Interval>& v) {
  std::sort(v.begin(), v.end(), [](const Interval& s, const Interval& t) { return std::tie(s.a, s.b) < std::tie(t.a, t.b); });
}

/// Swaps endpoints after solving on the dual lattice.
inline IntervalCover undual(const IntervalCover& c) {
  IntervalCover out{ConvexSpan{c.span.upper, c.span.lower, c.span.elements}, {}, c.optimal};
  for (const auto& iv : c.intervals) out.intervals.push_back({iv.b, iv.a});
  sort_intervals(out.intervals);
  return out;
}

inline void require_valid(const Poset& order, IntervalCover& cover) {
  sort_intervals(cover.intervals);
  if (!is_valid_cover(order, cover)) fail(ErrorKind::InternalError, "constructed family does not cover the span");
  cover.optimal = cover.size() == trivial_lower_bound(cover.span);
}

}  // namespace detail

/// Minimum cover of D - {0, 1} by intervals from atoms to coatoms.
inline Construction atoms_coatoms_cover(const DistributiveLattice& d) {
  if (d.size() < 3) fail(ErrorKind::TooSmall, "lattice needs at least 3 elements");
  const Lattice& l = d.lattice();
  ElementSet atoms = l.atoms(), coatoms = l.coatoms();
  Construction out{IntervalCover{convex_span(d.order(), atoms, coatoms), {}, true}, {}};
  if (atoms.count() == 1 || coatoms.count() == 1) {
    out.trace.degenerate = true;
    for_each_member(atoms, [&](Element x) {
      for_each_member(coatoms, [&](Element y) { out.cover.intervals.push_back({x, y}); });
    });
    detail::require_valid(d.order(), out.cover);
    return out;
  }
  if (atoms.count() > coatoms.count()) {
    Construction dual = atoms_coatoms_cover(d.dual());
    dual.trace.dualized = true;
    dual.cover = detail::undual(dual.cover);
    return dual;
  }
  Reconstruction r = reconstruct_poset(d);
  const Poset& p = r.poset;
  ElementSet a = p.minimal(), b = p.maximal();
  SurjectionTrace st;
  Surjection f = build_surjection(p, a, b, &st);
  auto [od, maps] = ideals_lattice(p);
  IntervalCover in_ideals = cover_from_surjection(od, maps, a, b, f);
  for (const auto& iv : in_ideals.intervals)
    out.cover.intervals.push_back({join_of(d, r, od.ideal_of(iv.a)), join_of(d, r, od.ideal_of(iv.b))});
  out.trace.surjection = std::move(st);
  detail::require_valid(d.order(), out.cover);
  return out;
}

namespace detail {

inline std::pair<ElementSet, ElementSet> level_pair(const DistributiveLattice& d, std::size_t j, std::size_t k) {
  RankProfile prof = rank_profile(d.order());
  if (j >= prof.levels.size() || k >= prof.levels.size() || j == k)
    fail(ErrorKind::NotLevels, "need two distinct levels of the lattice");
  if (j > k) fail(ErrorKind::NotDominated, "lower level must come first");
  return {prof.levels[j], prof.levels[k]};
}

inline std::vector<Interval> pairs_to_intervals(const std::vector<Element>& as, const std::vector<Element>& bs,
                                                const std::vector<std::pair<std::size_t, std::size_t>>& idx) {
  std::vector<Interval> out;
  for (auto [i, j] : idx) out.push_back({as[i], bs[j]});
  return out;
}

}  // namespace detail

/// Cover of [A, B] between two levels when the smaller level has exactly
/// two elements.
inline Construction two_level_cover(const DistributiveLattice& d, std::size_t j, std::size_t k) {
  auto [lower, upper] = detail::level_pair(d, j, k);
  if (std::min(lower.count(), upper.count()) != 2)
    fail(ErrorKind::LevelSizeMismatch, "the smaller level must have exactly two elements");
  if (lower.count() != 2) {
    const std::size_t h = rank_profile(d.order()).height();
    Construction dual = two_level_cover(d.dual(), h - k, h - j);
    dual.trace.dualized = true;
    dual.cover = detail::undual(dual.cover);
    return dual;
  }
  const Poset& order = d.order();
  Construction out{IntervalCover{convex_span(order, lower, upper), {}, true}, {}};
  std::vector<Element> as = members(lower), bs = members(upper);
  auto above = [&](Element x) {
    std::vector<Element> v;
    for (Element y : bs)
      if (order.leq(x, y)) v.push_back(y);
    return v;
  };
  for (std::size_t pick = 0; pick < 2; ++pick) {
    const Element a = as[pick], other = as[1 - pick];
    std::vector<Element> hi = above(a);
    if (hi.size() == bs.size()) continue;
    for (Element y : bs) out.cover.intervals.push_back({order.leq(a, y) ? a : other, y});
    out.trace.split_size = hi.size();
    detail::require_valid(order, out.cover);
    return out;
  }
  // Both lower elements lie below every upper element: try F_i, which uses
  // the second lower element only for b_i.
  for (std::size_t i = 0; i < bs.size(); ++i) {
    IntervalCover trial{out.cover.span, {}, true};
    for (std::size_t t = 0; t < bs.size(); ++t) trial.intervals.push_back({t == i ? as[1] : as[0], bs[t]});
    detail::sort_intervals(trial.intervals);
    if (is_valid_cover(order, trial)) {
      out.cover = std::move(trial);
      out.trace.family = i + 1;
      detail::require_valid(order, out.cover);
      return out;
    }
  }
  fail(ErrorKind::InternalError, "no single-swap family covers the span");
}

inline constexpr std::size_t kThm4Relabelings = 10000;

/// Cover of [A, B] between two levels by at most mn - m intervals (mn - m + 1
/// when m = n is odd), m = min(|A|, |B|), n = max(|A|, |B|).
inline Construction thm4_cover(const DistributiveLattice& d, std::size_t j, std::size_t k) {
  auto [lower, upper] = detail::level_pair(d, j, k);
  if (lower.count() < 2 || upper.count() < 2) fail(ErrorKind::LevelSizeMismatch, "both levels need two elements");
  if (lower.count() > upper.count()) {
    const std::size_t h = rank_profile(d.order()).height();
    Construction dual = thm4_cover(d.dual(), h - k, h - j);
    dual.trace.dualized = true;
    dual.cover = detail::undual(dual.cover);
    return dual;
  }
  const Poset& order = d.order();
  Construction out{IntervalCover{convex_span(order, lower, upper), {}, true}, {}};
  std::vector<Element> as = members(lower), bs = members(upper);
  const std::size_t m = as.size(), n = bs.size();
  const std::size_t s = m < n ? m : m - (m % 2);
  const std::size_t t = m < n ? m + 1 : s;
  const std::size_t bound = m * n - m + (m == n && m % 2 == 1 ? 1 : 0);
  auto try_families = [&]() -> bool {
    for (std::size_t shift = 0; shift < t; ++shift) {
      IntervalCover trial{out.cover.span, {}, true};
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < n; ++c) {
          if (!order.leq(as[i], bs[c])) continue;
          if (i < s && c == (i + shift) % t) continue;
          trial.intervals.push_back({as[i], bs[c]});
        }
      if (trial.size() <= bound && is_valid_cover(order, trial)) {
        out.cover = std::move(trial);
        out.trace.family = shift;
        return true;
      }
    }
    return false;
  };
  // Index order first. An element of A below a single element of B (or dually)
  // can defeat every family under one labeling, so fall back to relabeling.
  std::mt19937_64 rng(0x5eed);
  for (std::size_t attempt = 0; attempt <= kThm4Relabelings; ++attempt) {
    if (attempt > 0) {
      std::shuffle(as.begin(), as.end(), rng);
      std::shuffle(bs.begin(), bs.end(), rng);
    }
    if (try_families()) {
      out.trace.relabelings = attempt;
      detail::require_valid(order, out.cover);
      return out;
    }
  }
  fail(ErrorKind::InternalError, "no shifted family covers the span");
}

inline std::size_t thm4_bound(std::size_t m, std::size_t n) {
  if (m > n) std::swap(m, n);
  return m * n - m + (m == n && m % 2 == 1 ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Unique-configuration scan

/// Levels L below U, a in L, b != c in U, and elements x, y with a < x < b,
/// a < y < c, each incomparable to every other element of L and U.
struct UniqueConfiguration {
  std::size_t lower_level = 0, upper_level = 0;
  Element a = 0, b = 0, c = 0, x = 0, y = 0;
};

/// Returns a configuration whose lower level has more than one element.
/// For a distributive lattice none should exist.
inline std::optional<UniqueConfiguration> find_unique_configuration(const Poset& p) {
  RankProfile prof = rank_profile(p);
  const std::size_t h = prof.levels.size();
  for (std::size_t l = 0; l < h; ++l) {
    if (prof.levels[l].count() < 2) continue;
    for (std::size_t u = l + 2; u < h; ++u) {
      ElementSet both = prof.levels[l] | prof.levels[u];
      auto witness = [&](Element a, Element b) -> std::optional<Element> {
        ElementSet between = p.up(a) & p.down(b);
        between.reset(a);
        between.reset(b);
        for (auto x = between.find_first(); x != ElementSet::npos; x = between.find_next(x)) {
          ElementSet comp = (p.up(static_cast<Element>(x)) | p.down(static_cast<Element>(x))) & both;
          comp.reset(a);
          comp.reset(b);
          if (comp.none()) return static_cast<Element>(x);
        }
        return std::nullopt;
      };
      for (Element a : members(prof.levels[l])) {
        std::vector<std::pair<Element, Element>> found;
        for (Element b : members(prof.levels[u]))
          if (auto x = witness(a, b)) found.emplace_back(b, *x);
        if (found.size() >= 2)
          return UniqueConfiguration{l, u, a, found[0].first, found[1].first, found[0].second, found[1].second};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<UniqueConfiguration> find_unique_configuration(const DistributiveLattice& d) {
  return find_unique_configuration(d.order());
}

}  // namespace icover
