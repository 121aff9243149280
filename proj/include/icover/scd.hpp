#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "icover/cover.hpp"
#include "icover/error.hpp"
#include "icover/poset.hpp"

// Greene-Kleitman symmetric chain decomposition of the subset lattice B(n).
// Subsets are words a_1..a_n; internally position p (1-based) is bit p-1.

namespace icover::gk {

inline constexpr unsigned kMaxWordLength = 60;

struct BitSubset {
  unsigned n = 0;
  std::uint64_t bits = 0;

  unsigned size() const { return static_cast<unsigned>(std::popcount(bits)); }
  bool has(unsigned position0) const { return (bits >> position0) & 1U; }
  friend bool operator==(const BitSubset&, const BitSubset&) = default;
};

inline std::uint64_t full_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

inline BitSubset make_subset(unsigned n, std::uint64_t bits) {
  if (n > kMaxWordLength) fail(ErrorKind::SizeLimit, "word length above " + std::to_string(kMaxWordLength));
  if (bits & ~full_mask(n)) fail(ErrorKind::ElementOutOfRange, "bits outside the ground set");
  return BitSubset{n, bits};
}

/// Parses a word like "011001" (first character is position 1).
inline BitSubset from_word(const std::string& word) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == '1') bits |= std::uint64_t{1} << i;
    else if (word[i] != '0') fail(ErrorKind::ParseError, "word must be over {0,1}");
  }
  return make_subset(static_cast<unsigned>(word.size()), bits);
}

inline std::string to_word(const BitSubset& s) {
  std::string w(s.n, '0');
  for (unsigned i = 0; i < s.n; ++i)
    if (s.has(i)) w[i] = '1';
  return w;
}

/// Bracket matching of a word. Positions are 0-based here; each pair is
/// (zero position, one position).
struct GKPairing {
  std::vector<std::pair<unsigned, unsigned>> pairs;
  std::vector<unsigned> u0;
  std::vector<unsigned> u1;
};

/// Left-to-right scan: each 1 pairs with the rightmost still-unpaired 0 to
/// its left, if any.
inline GKPairing pair_positions(const BitSubset& a) {
  GKPairing g;
  std::vector<unsigned> open;
  for (unsigned i = 0; i < a.n; ++i) {
    if (!a.has(i)) {
      open.push_back(i);
    } else if (!open.empty()) {
      g.pairs.emplace_back(open.back(), i);
      open.pop_back();
    } else {
      g.u1.push_back(i);
    }
  }
  g.u0 = open;
  std::sort(g.pairs.begin(), g.pairs.end());
  return g;
}

struct SymChain {
  unsigned n = 0;
  std::vector<std::uint64_t> elements;  // ascending, c_0 .. c_m

  BitSubset min() const { return {n, elements.front()}; }
  BitSubset max() const { return {n, elements.back()}; }
  std::size_t length() const { return elements.size() - 1; }
  friend bool operator==(const SymChain&, const SymChain&) = default;
};

/// Symmetric chain through `a`: unpaired 1s switched off (right to left)
/// below it, unpaired 0s switched on (left to right) above it. Unpaired 1s
/// always sit left of unpaired 0s, so the chain is min plus a prefix of
/// u1 ++ u0.
inline SymChain chain_of(const BitSubset& a) {
  GKPairing g = pair_positions(a);
  std::uint64_t x = a.bits;
  for (unsigned i : g.u1) x &= ~(std::uint64_t{1} << i);
  SymChain c{a.n, {x}};
  for (unsigned i : g.u1) c.elements.push_back(x |= std::uint64_t{1} << i);
  for (unsigned i : g.u0) c.elements.push_back(x |= std::uint64_t{1} << i);
  return c;
}

struct SCD {
  unsigned n = 0;
  std::vector<SymChain> chains;  // ordered by minimum element
};

inline constexpr unsigned kMaxDecompositionN = 20;

inline SCD gk_decomposition(unsigned n) {
  if (n < 1 || n > kMaxDecompositionN) fail(ErrorKind::SizeLimit, "decomposition needs 1 <= n <= 20");
  SCD scd{n, {}};
  for (std::uint64_t m = 0; m <= full_mask(n); ++m) {
    BitSubset s{n, m};
    if (pair_positions(s).u1.empty()) scd.chains.push_back(chain_of(s));
  }
  return scd;
}

/// Removes the rightmost pair (j, i) of the chain's pairing: the minimum
/// loses i and the maximum gains j.
inline SymChain phi(const SymChain& c) {
  GKPairing g = pair_positions(c.min());
  if (g.pairs.empty()) fail(ErrorKind::MaxChain, "chain has full length; no pair to remove");
  auto rightmost = *std::max_element(g.pairs.begin(), g.pairs.end(),
                                     [](const auto& p, const auto& q) { return p.second < q.second; });
  return chain_of({c.n, c.elements.front() & ~(std::uint64_t{1} << rightmost.second)});
}

/// Walks phi with memoisation keyed by chain minimum (which identifies the
/// chain in the decomposition).
class ChainWalker {
 public:
  explicit ChainWalker(unsigned n) : n_(n) {}

  std::uint64_t phi_min(std::uint64_t chain_min) {
    auto it = cache_.find(chain_min);
    if (it != cache_.end()) return it->second;
    SymChain next = phi(chain_of({n_, chain_min}));
    cache_.emplace(chain_min, next.elements.front());
    return next.elements.front();
  }

  /// Level-j representative for a level-k subset Y (j <= k, j + k <= n).
  BitSubset psi(const BitSubset& y, unsigned j) {
    const unsigned k = y.size();
    if (y.n != n_ || j > k || j + k > n_)
      fail(ErrorKind::PreconditionViolated, "psi needs j <= |Y| and j + |Y| <= n");
    SymChain c = chain_of(y);
    const unsigned low = static_cast<unsigned>(std::popcount(c.elements.front()));
    if (low <= j) return {n_, c.elements[j - low]};
    std::uint64_t m = c.elements.front();
    for (unsigned step = 0; step < low - j; ++step) m = phi_min(m);
    return {n_, m};
  }

 private:
  unsigned n_;
  std::unordered_map<std::uint64_t, std::uint64_t> cache_;
};

inline BitSubset psi(const BitSubset& y, unsigned j) {
  ChainWalker walker(y.n);
  return walker.psi(y, j);
}

// ---------------------------------------------------------------------------
// Covers of B(n)_{j,k}. Lattice elements are subset masks.

inline constexpr unsigned kMaxLevelCoverN = 16;

inline ElementSet boolean_level_set(unsigned n, unsigned level) {
  ElementSet s(std::size_t{1} << n);
  for (std::uint64_t m = 0; m <= full_mask(n); ++m)
    if (static_cast<unsigned>(std::popcount(m)) == level) s.set(m);
  return s;
}

inline ConvexSpan boolean_slab(unsigned n, unsigned j, unsigned k) {
  ElementSet all(std::size_t{1} << n);
  for (std::uint64_t m = 0; m <= full_mask(n); ++m) {
    auto r = static_cast<unsigned>(std::popcount(m));
    if (r >= j && r <= k) all.set(m);
  }
  return ConvexSpan{boolean_level_set(n, j), boolean_level_set(n, k), all};
}

/// Cover of the slab between levels j and k by max(C(n,j), C(n,k)) intervals
/// [psi(Y), Y]. For j + k > n the construction runs on complements.
inline IntervalCover boolean_level_cover(unsigned n, unsigned j, unsigned k) {
  if (n > kMaxLevelCoverN) fail(ErrorKind::SizeLimit, "level covers need n <= 16");
  if (j > k || k > n) fail(ErrorKind::PreconditionViolated, "need 0 <= j <= k <= n");
  IntervalCover cover{boolean_slab(n, j, k), {}, true};
  const bool complemented = j + k > n;
  const unsigned lo = complemented ? n - k : j;
  const unsigned hi = complemented ? n - j : k;
  ChainWalker walker(n);
  for (std::uint64_t y = 0; y <= full_mask(n); ++y) {
    if (static_cast<unsigned>(std::popcount(y)) != hi) continue;
    std::uint64_t x = walker.psi({n, y}, lo).bits;
    if (complemented) cover.intervals.push_back({static_cast<Element>(~y & full_mask(n)), static_cast<Element>(~x & full_mask(n))});
    else cover.intervals.push_back({static_cast<Element>(x), static_cast<Element>(y)});
  }
  if (complemented)
    std::sort(cover.intervals.begin(), cover.intervals.end(),
              [](const Interval& p, const Interval& q) { return p.a != q.a ? p.a < q.a : p.b < q.b; });
  return cover;
}

/// Union check by enumerating each interval's subsets directly.
inline bool is_valid_boolean_cover(unsigned n, const IntervalCover& cover) {
  ElementSet seen(std::size_t{1} << n);
  for (const auto& iv : cover.intervals) {
    if (!cover.span.lower.test(iv.a) || !cover.span.upper.test(iv.b)) return false;
    if ((iv.a & ~iv.b) != 0) return false;
    const std::uint64_t free_bits = iv.b & ~iv.a;
    for (std::uint64_t sub = free_bits;; sub = (sub - 1) & free_bits) {
      seen.set(iv.a | sub);
      if (sub == 0) break;
    }
  }
  return seen == cover.span.elements;
}

// ---------------------------------------------------------------------------
// Decomposition checks

struct ScdReport {
  bool partition = true;
  bool symmetric = true;
  bool shared_pairing = true;
  bool star_property = true;
  std::size_t chain_count = 0;

  bool ok() const { return partition && symmetric && shared_pairing && star_property; }
};

/// Partition, symmetry, and the nesting property: for every chain C shorter
/// than n, phi(C) is a chain of the decomposition with
/// min phi(C) < min C <= max C < max phi(C), both steps being covers.
inline ScdReport verify_scd(const SCD& scd) {
  ScdReport r;
  r.chain_count = scd.chains.size();
  const unsigned n = scd.n;
  std::vector<std::uint8_t> hits(std::size_t{1} << n, 0);
  std::unordered_map<std::uint64_t, const SymChain*> by_min;
  for (const auto& c : scd.chains) by_min.emplace(c.elements.front(), &c);
  auto covers = [](std::uint64_t lo, std::uint64_t hi) {
    return (lo & ~hi) == 0 && std::popcount(hi & ~lo) == 1;
  };
  for (const auto& c : scd.chains) {
    for (auto e : c.elements) ++hits[e];
    for (std::size_t i = 0; i + 1 < c.elements.size(); ++i)
      if (!covers(c.elements[i], c.elements[i + 1])) r.symmetric = false;
    if (std::popcount(c.elements.front()) + std::popcount(c.elements.back()) != static_cast<int>(n))
      r.symmetric = false;
    auto pairs = pair_positions(c.min()).pairs;
    for (auto e : c.elements)
      if (pair_positions({n, e}).pairs != pairs) r.shared_pairing = false;
    if (c.length() < n) {
      if (pairs.empty()) {
        r.star_property = false;
        continue;
      }
      SymChain d = phi(c);
      auto it = by_min.find(d.elements.front());
      if (it == by_min.end() || !(*it->second == d)) {
        r.star_property = false;
        continue;
      }
      if (!covers(d.elements.front(), c.elements.front()) || !covers(c.elements.back(), d.elements.back()))
        r.star_property = false;
    }
  }
  for (auto h : hits)
    if (h != 1) r.partition = false;
  return r;
}

inline std::string chain_to_string(const SymChain& c) {
  std::string out;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    if (i) out += ',';
    out += to_word({c.n, c.elements[i]});
  }
  return out;
}

}  // namespace icover::gk
