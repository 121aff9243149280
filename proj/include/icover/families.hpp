#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "icover/error.hpp"
#include "icover/lattice.hpp"
#include "icover/poset.hpp"

namespace icover::families {

inline constexpr unsigned kMaxBooleanN = 12;

/// B(n); element m is the subset with characteristic mask m.
inline DistributiveLattice gen_boolean(unsigned n) {
  if (n < 1 || n > kMaxBooleanN) fail(ErrorKind::SizeLimit, "boolean lattice needs 1 <= n <= 12");
  const std::size_t size = std::size_t{1} << n;
  const std::uint64_t full = size - 1;
  std::vector<ElementSet> up(size, ElementSet(size));
  for (std::uint64_t m = 0; m < size; ++m) {
    const std::uint64_t free_bits = full & ~m;
    for (std::uint64_t sub = free_bits;; sub = (sub - 1) & free_bits) {
      up[m].set(m | sub);
      if (sub == 0) break;
    }
  }
  std::vector<Lattice::Index> join(size * size), meet(size * size);
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t y = 0; y < size; ++y) {
      join[x * size + y] = static_cast<Lattice::Index>(x | y);
      meet[x * size + y] = static_cast<Lattice::Index>(x & y);
    }
  return DistributiveLattice::certify(
      Lattice::from_tables(Poset::from_up_sets(std::move(up)), std::move(join), std::move(meet)));
}

/// Product of chains with the given numbers of elements. Element index is
/// mixed radix, first coordinate least significant; rank is the coordinate sum.
inline DistributiveLattice gen_chain_product(const std::vector<std::size_t>& lengths) {
  std::size_t size = 1;
  for (auto len : lengths) {
    if (len == 0) fail(ErrorKind::PreconditionViolated, "chain lengths must be positive");
    size *= len;
    if (size > kMaxLatticeSize) fail(ErrorKind::SizeLimit, "product larger than " + std::to_string(kMaxLatticeSize));
  }
  auto coords = [&](std::size_t x) {
    std::vector<std::size_t> c;
    for (auto len : lengths) {
      c.push_back(x % len);
      x /= len;
    }
    return c;
  };
  auto index = [&](const std::vector<std::size_t>& c) {
    std::size_t x = 0;
    for (std::size_t i = lengths.size(); i-- > 0;) x = x * lengths[i] + c[i];
    return x;
  };
  std::vector<std::vector<std::size_t>> all;
  for (std::size_t x = 0; x < size; ++x) all.push_back(coords(x));
  std::vector<ElementSet> up(size, ElementSet(size));
  std::vector<Lattice::Index> join(size * size), meet(size * size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      bool le = true;
      std::vector<std::size_t> hi(lengths.size()), lo(lengths.size());
      for (std::size_t i = 0; i < lengths.size(); ++i) {
        le = le && all[x][i] <= all[y][i];
        hi[i] = std::max(all[x][i], all[y][i]);
        lo[i] = std::min(all[x][i], all[y][i]);
      }
      if (le) up[x].set(y);
      join[x * size + y] = static_cast<Lattice::Index>(index(hi));
      meet[x * size + y] = static_cast<Lattice::Index>(index(lo));
    }
  }
  return DistributiveLattice::certify(
      Lattice::from_tables(Poset::from_up_sets(std::move(up)), std::move(join), std::move(meet)));
}

/// B(r+s) with lower antichain {{x_i}} and upper antichain {X + y_j}, where
/// X = {0..r-1} and y_j = r+j.
struct FranklFamily {
  DistributiveLattice lattice;
  ElementSet lower;
  ElementSet upper;
};

inline FranklFamily gen_frankl(unsigned r, unsigned s) {
  if (r < 1 || s < 1) fail(ErrorKind::ParamTooSmall, "need r, s >= 1");
  if (r + s > kMaxBooleanN) fail(ErrorKind::SizeLimit, "need r + s <= 12");
  FranklFamily f{gen_boolean(r + s), {}, {}};
  const std::size_t size = f.lattice.size();
  f.lower = ElementSet(size);
  f.upper = ElementSet(size);
  const std::uint64_t x_mask = (std::uint64_t{1} << r) - 1;
  for (unsigned i = 0; i < r; ++i) f.lower.set(std::uint64_t{1} << i);
  for (unsigned j = 0; j < s; ++j) f.upper.set(x_mask | (std::uint64_t{1} << (r + j)));
  return f;
}

/// Lattice with atoms a_i, coatoms c_j, a middle element x above every atom
/// and below every coatom, and one x_ij per pair with a_i < x_ij < c_j.
/// It is a lattice but not distributive.
struct Figure1Family {
  Lattice lattice;
  ElementSet atoms;
  ElementSet coatoms;
};

inline Figure1Family gen_figure1(unsigned r, unsigned s) {
  if (r < 2 || s < 2) fail(ErrorKind::ParamTooSmall, "need r, s >= 2");
  const Element zero = 0;
  auto a = [&](unsigned i) { return static_cast<Element>(1 + i); };
  const Element x = static_cast<Element>(1 + r);
  auto xij = [&](unsigned i, unsigned j) { return static_cast<Element>(2 + r + i * s + j); };
  auto c = [&](unsigned j) { return static_cast<Element>(2 + r + r * s + j); };
  const Element one = static_cast<Element>(2 + r + r * s + s);
  const std::size_t size = one + 1;

  std::vector<std::string> labels(size);
  labels[zero] = "0";
  labels[x] = "x";
  labels[one] = "1";
  std::vector<Edge> edges;
  for (unsigned i = 0; i < r; ++i) {
    labels[a(i)] = "a" + std::to_string(i + 1);
    edges.emplace_back(zero, a(i));
    edges.emplace_back(a(i), x);
  }
  for (unsigned j = 0; j < s; ++j) {
    labels[c(j)] = "c" + std::to_string(j + 1);
    edges.emplace_back(x, c(j));
    edges.emplace_back(c(j), one);
  }
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < s; ++j) {
      labels[xij(i, j)] = "x" + std::to_string(i + 1) + "," + std::to_string(j + 1);
      edges.emplace_back(a(i), xij(i, j));
      edges.emplace_back(xij(i, j), c(j));
    }
  Figure1Family f{Lattice::from_poset(Poset::from_edges(size, edges, labels)), ElementSet(size), ElementSet(size)};
  for (unsigned i = 0; i < r; ++i) f.atoms.set(a(i));
  for (unsigned j = 0; j < s; ++j) f.coatoms.set(c(j));
  return f;
}

/// B(n) and B(m) glued along an edge: the edge (coatom -> top) of B(n) is
/// identified with the edge (bottom -> atom) of B(m). Levels n-1 and n of the
/// result have sizes n and m.
struct GluedFamily {
  DistributiveLattice lattice;
  std::size_t lower_level = 0;
  std::size_t upper_level = 0;
  ElementSet lower;
  ElementSet upper;
};

inline GluedFamily gen_glued(unsigned n, unsigned m) {
  if (n < 2 || m < 2) fail(ErrorKind::ParamTooSmall, "need n, m >= 2");
  if (n + m > 12) fail(ErrorKind::SizeLimit, "need n + m <= 12");
  const std::uint64_t left_size = std::uint64_t{1} << n, right_size = std::uint64_t{1} << m;
  const Element glued_top = static_cast<Element>(left_size - 1);
  const Element glued_coatom = static_cast<Element>((left_size - 1) & ~(std::uint64_t{1} << (n - 1)));
  std::vector<Element> right(right_size);
  Element next = static_cast<Element>(left_size);
  for (std::uint64_t t = 0; t < right_size; ++t) {
    if (t == 0) right[t] = glued_coatom;
    else if (t == 1) right[t] = glued_top;
    else right[t] = next++;
  }
  const std::size_t size = next;
  std::vector<std::string> labels(size);
  std::vector<Edge> edges;
  for (std::uint64_t x = 0; x < left_size; ++x) {
    labels[x] = "L" + std::to_string(x);
    for (unsigned i = 0; i < n; ++i)
      if (!((x >> i) & 1U)) edges.emplace_back(static_cast<Element>(x), static_cast<Element>(x | (std::uint64_t{1} << i)));
  }
  for (std::uint64_t t = 0; t < right_size; ++t) {
    if (t > 1) labels[right[t]] = "R" + std::to_string(t);
    for (unsigned i = 0; i < m; ++i)
      if (!((t >> i) & 1U)) edges.emplace_back(right[t], right[t | (std::uint64_t{1} << i)]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Lattice l = Lattice::from_poset(Poset::from_edges(size, edges, labels));
  GluedFamily g;
  try {
    g.lattice = DistributiveLattice::certify(std::move(l));
  } catch (const Error& e) {
    fail(ErrorKind::InternalError, std::string("glued construction is not distributive: ") + e.what());
  }
  RankProfile prof = rank_profile(g.lattice.order());
  g.lower_level = n - 1;
  g.upper_level = n;
  g.lower = prof.levels[n - 1];
  g.upper = prof.levels[n];
  if (g.lower.count() != n || g.upper.count() != m)
    fail(ErrorKind::InternalError, "glued lattice has unexpected level sizes");
  return g;
}

// ---------------------------------------------------------------------------
// Posets up to isomorphism

inline constexpr std::size_t kMaxEnumeratedPosetSize = 7;

/// Canonical form: the strict order matrix, relabelled to minimise its bit
/// code over all labellings that sort elements by an invariant key. The key
/// starts with |down(x)|, so canonical labellings are linear extensions.
inline std::pair<std::uint64_t, Poset> canonical_form(const Poset& p) {
  const std::size_t n = p.size();
  if (n > 8) fail(ErrorKind::SizeLimit, "canonical form supports at most 8 elements");
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::vector<Key> key(n);
  for (Element x = 0; x < n; ++x)
    key[x] = {p.down(x).count(), p.up(x).count(), p.lower_covers(x).size(), p.upper_covers(x).size()};
  std::vector<Element> sorted(n);
  for (Element x = 0; x < n; ++x) sorted[x] = x;
  std::stable_sort(sorted.begin(), sorted.end(), [&](Element u, Element v) { return key[u] < key[v]; });

  std::vector<Element> at(n);      // vertex placed at position
  std::vector<bool> used(n, false);
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<Element> best_at;
  std::function<void(std::size_t)> place = [&](std::size_t pos) {
    if (pos == n) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (p.less(at[i], at[j])) code |= std::uint64_t{1} << (i * n + j);
      if (code < best) {
        best = code;
        best_at = at;
      }
      return;
    }
    for (Element v : sorted) {
      if (used[v] || key[v] != key[sorted[pos]]) continue;
      used[v] = true;
      at[pos] = v;
      place(pos + 1);
      used[v] = false;
    }
  };
  place(0);
  std::vector<Element> position(n);
  for (std::size_t i = 0; i < n; ++i) position[best_at[i]] = static_cast<Element>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : p.covers()) edges.emplace_back(position[u], position[v]);
  return {best, Poset::from_edges(n, edges)};
}

/// One representative per isomorphism class of n-element posets, sorted by
/// canonical code. Built by adding a new maximal element above each ideal of
/// each (n-1)-element representative.
inline std::vector<Poset> gen_all_posets(std::size_t n) {
  if (n > kMaxEnumeratedPosetSize) fail(ErrorKind::SizeLimit, "poset enumeration supports n <= 7");
  if (n == 0) return {Poset::from_edges(0, {})};
  std::vector<Poset> level{Poset::from_edges(1, {})};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::uint64_t, Poset> seen;
    for (const Poset& q : level) {
      enumerate_ideals(q, [&](std::uint64_t ideal) {
        std::vector<Edge> edges = q.covers();
        const Element top = static_cast<Element>(size - 1);
        ElementSet below = mask_to_set(q.size(), ideal);
        for_each_member(maximal_of(q, below), [&](Element x) { edges.emplace_back(x, top); });
        auto [code, canon] = canonical_form(Poset::from_edges(size, edges));
        seen.emplace(code, std::move(canon));
      });
    }
    level.clear();
    for (auto& [code, poset] : seen) level.push_back(std::move(poset));
  }
  return level;
}

/// All posets with 1..max_n elements, smallest first.
inline std::vector<Poset> gen_all_posets_up_to(std::size_t max_n) {
  std::vector<Poset> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto level = gen_all_posets(n);
    out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
  }
  return out;
}

/// Random order: for each i < j the relation i < j is drawn with the given
/// probability, then closed transitively. Deterministic for a fixed seed.
inline Poset gen_random_poset(std::size_t n, double density, std::uint64_t seed) {
  if (n > 40) fail(ErrorKind::SizeLimit, "random posets support n <= 40");
  if (!(density >= 0.0 && density <= 1.0)) fail(ErrorKind::PreconditionViolated, "density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < density) edges.emplace_back(static_cast<Element>(i), static_cast<Element>(j));
    }
  return Poset::from_edges(n, edges);
}

}  // namespace icover::families
