#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "icover/error.hpp"
#include "icover/poset.hpp"

namespace icover {

/// Largest lattice the dense join/meet tables are built for.
inline constexpr std::size_t kMaxLatticeSize = 4096;

/// A finite lattice: an order plus join and meet tables.
class Lattice {
 public:
  using Index = std::uint16_t;

  Lattice() = default;

  /// Builds join/meet tables by least-upper-bound search. Throws NotALattice
  /// when some pair lacks a join or a meet.
  static Lattice from_poset(Poset order) {
    const std::size_t n = order.size();
    if (n == 0) fail(ErrorKind::NotALattice, "empty poset");
    if (n > kMaxLatticeSize) fail(ErrorKind::SizeLimit, "lattice larger than " + std::to_string(kMaxLatticeSize));
    std::vector<Index> join(n * n), meet(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        auto j = least_of(order, order.up(static_cast<Element>(x)) & order.up(static_cast<Element>(y)), true);
        auto m = least_of(order, order.down(static_cast<Element>(x)) & order.down(static_cast<Element>(y)), false);
        if (!j) fail(ErrorKind::NotALattice, "no join for " + std::to_string(x) + "," + std::to_string(y));
        if (!m) fail(ErrorKind::NotALattice, "no meet for " + std::to_string(x) + "," + std::to_string(y));
        join[x * n + y] = join[y * n + x] = static_cast<Index>(*j);
        meet[x * n + y] = meet[y * n + x] = static_cast<Index>(*m);
      }
    }
    return Lattice(std::move(order), std::move(join), std::move(meet));
  }

  /// Tables are trusted; used by generators that know the operations.
  static Lattice from_tables(Poset order, std::vector<Index> join, std::vector<Index> meet) {
    const std::size_t n = order.size();
    if (n == 0 || n > kMaxLatticeSize) fail(ErrorKind::SizeLimit, "lattice size out of range");
    if (join.size() != n * n || meet.size() != n * n) fail(ErrorKind::InternalError, "table size mismatch");
    return Lattice(std::move(order), std::move(join), std::move(meet));
  }

  const Poset& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  Element join(Element x, Element y) const { return join_[x * size() + y]; }
  Element meet(Element x, Element y) const { return meet_[x * size() + y]; }
  Element bottom() const { return bottom_; }
  Element top() const { return top_; }
  bool leq(Element x, Element y) const { return order_.leq(x, y); }

  Lattice dual() const {
    Lattice d(icover::dual(order_), meet_, join_);
    return d;
  }

  ElementSet atoms() const {
    ElementSet s(size());
    for (Element x : order_.upper_covers(bottom_)) s.set(x);
    return s;
  }
  ElementSet coatoms() const {
    ElementSet s(size());
    for (Element x : order_.lower_covers(top_)) s.set(x);
    return s;
  }

 private:
  Lattice(Poset order, std::vector<Index> join, std::vector<Index> meet)
      : order_(std::move(order)), join_(std::move(join)), meet_(std::move(meet)) {
    const std::size_t n = order_.size();
    ElementSet mins = order_.minimal(), maxs = order_.maximal();
    if (mins.count() != 1 || maxs.count() != 1) fail(ErrorKind::NotALattice, "no unique bottom/top");
    bottom_ = static_cast<Element>(mins.find_first());
    top_ = static_cast<Element>(maxs.find_first());
    (void)n;
  }

  static std::optional<Element> least_of(const Poset& p, const ElementSet& bounds, bool upward) {
    std::optional<Element> found;
    for_each_member(bounds, [&](Element z) {
      if (found) return;
      if (bounds.is_subset_of(upward ? p.up(z) : p.down(z))) found = z;
    });
    return found;
  }

  Poset order_;
  std::vector<Index> join_;
  std::vector<Index> meet_;
  Element bottom_ = 0;
  Element top_ = 0;
};

// ---------------------------------------------------------------------------
// Distributivity

struct DistributivityReport {
  bool distributive = false;
  /// "triples" (all x,y,z checked), "birkhoff-count" (|L| == |O(J(L))|) or
  /// "sampled" (random triples only; a pass is not a proof).
  std::string method;
  std::optional<std::array<Element, 3>> witness;
};

inline ElementSet join_irreducibles(const Lattice& l) {
  ElementSet s(l.size());
  for (std::size_t x = 0; x < l.size(); ++x)
    if (l.order().lower_covers(static_cast<Element>(x)).size() == 1) s.set(x);
  return s;
}

inline ElementSet meet_irreducibles(const Lattice& l) {
  ElementSet s(l.size());
  for (std::size_t x = 0; x < l.size(); ++x)
    if (l.order().upper_covers(static_cast<Element>(x)).size() == 1) s.set(x);
  return s;
}

inline DistributivityReport check_distributive(const Lattice& l) {
  const std::size_t n = l.size();
  DistributivityReport report;
  auto law_holds = [&](Element x, Element y, Element z) {
    return l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z));
  };
  if (n <= 60) {
    report.method = "triples";
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = y + 1; z < n; ++z)
          if (!law_holds(x, y, z)) {
            report.witness = std::array<Element, 3>{x, y, z};
            return report;
          }
    report.distributive = true;
    return report;
  }
  // Every finite lattice embeds into O(J(L)) via x -> {j <= x}; it is
  // distributive exactly when that embedding is onto.
  ElementSet irreducible = join_irreducibles(l);
  if (irreducible.count() <= 64) {
    report.method = "birkhoff-count";
    auto [jposet, original] = l.order().induced(irreducible);
    std::size_t count = 0;
    enumerate_ideals(jposet, [&](std::uint64_t) {
      ++count;
      return count <= n;
    });
    report.distributive = count == n;
    return report;
  }
  report.method = "sampled";
  std::mt19937_64 rng(0x5eedULL);
  for (int i = 0; i < 200000; ++i) {
    Element x = static_cast<Element>(rng() % n), y = static_cast<Element>(rng() % n),
            z = static_cast<Element>(rng() % n);
    if (!law_holds(x, y, z)) {
      report.witness = std::array<Element, 3>{x, y, z};
      return report;
    }
  }
  report.distributive = true;
  return report;
}

/// Lattice check plus distributive law; throws NotALattice when some pair
/// lacks a join or a meet.
inline bool verify_distributive(const Poset& candidate) {
  return check_distributive(Lattice::from_poset(candidate)).distributive;
}

/// A lattice that has passed the distributivity check. When built as O(P),
/// `ideal_of(x)` records the down-set of P that element x stands for.
class DistributiveLattice {
 public:
  DistributiveLattice() = default;

  static DistributiveLattice certify(Lattice l) {
    auto report = check_distributive(l);
    if (!report.distributive) fail(ErrorKind::NotDistributive, "distributive law fails (" + report.method + ")");
    DistributiveLattice d;
    d.lattice_ = std::move(l);
    d.method_ = report.method;
    return d;
  }

  static DistributiveLattice certify(const Poset& order) { return certify(Lattice::from_poset(order)); }

  const Lattice& lattice() const { return lattice_; }
  const Poset& order() const { return lattice_.order(); }
  std::size_t size() const { return lattice_.size(); }
  Element join(Element x, Element y) const { return lattice_.join(x, y); }
  Element meet(Element x, Element y) const { return lattice_.meet(x, y); }
  Element bottom() const { return lattice_.bottom(); }
  Element top() const { return lattice_.top(); }
  const std::string& certificate() const { return method_; }

  bool has_ideals() const { return !ideal_of_.empty(); }
  const ElementSet& ideal_of(Element x) const { return ideal_of_.at(x); }

  DistributiveLattice dual() const {
    DistributiveLattice d;
    d.lattice_ = lattice_.dual();
    d.method_ = method_;
    return d;
  }

 private:
  friend struct BirkhoffAccess;
  Lattice lattice_;
  std::string method_;
  std::vector<ElementSet> ideal_of_;
};

// ---------------------------------------------------------------------------
// Birkhoff duality

/// bold[a] is the lattice element for the principal ideal down(a); bar[a]
/// is the element for P - up(a).
struct BirkhoffMaps {
  Poset source;
  std::vector<Element> bold;
  std::vector<Element> bar;
};

struct BirkhoffAccess {
  static DistributiveLattice make(Lattice l, std::vector<ElementSet> ideal_of) {
    DistributiveLattice d;
    d.lattice_ = std::move(l);
    d.method_ = "construction";
    d.ideal_of_ = std::move(ideal_of);
    return d;
  }
};

/// O(P), the lattice of down-sets ordered by inclusion. Elements are numbered
/// in the order of enumerate_ideals.
inline std::pair<DistributiveLattice, BirkhoffMaps> ideals_lattice(const Poset& p) {
  std::vector<std::uint64_t> masks;
  enumerate_ideals(p, [&](std::uint64_t m) {
    masks.push_back(m);
    if (masks.size() > kMaxLatticeSize) fail(ErrorKind::SizeLimit, "too many ideals");
  });
  const std::size_t n = masks.size();
  std::unordered_map<std::uint64_t, Element> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index.emplace(masks[i], static_cast<Element>(i));

  std::vector<ElementSet> up(n, ElementSet(n));
  std::vector<Lattice::Index> join(n * n), meet(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((masks[i] & ~masks[j]) == 0) up[i].set(j);
      join[i * n + j] = static_cast<Lattice::Index>(index.at(masks[i] | masks[j]));
      meet[i * n + j] = static_cast<Lattice::Index>(index.at(masks[i] & masks[j]));
    }
  }
  Lattice l = Lattice::from_tables(Poset::from_up_sets(std::move(up)), std::move(join), std::move(meet));

  std::vector<ElementSet> ideal_of;
  ideal_of.reserve(n);
  for (auto m : masks) ideal_of.push_back(mask_to_set(p.size(), m));

  BirkhoffMaps maps;
  maps.source = p;
  const std::uint64_t full = p.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << p.size()) - 1);
  for (Element a = 0; a < p.size(); ++a) {
    maps.bold.push_back(index.at(set_to_mask(p.down(a))));
    maps.bar.push_back(index.at(full & ~set_to_mask(p.up(a))));
  }
  return {BirkhoffAccess::make(std::move(l), std::move(ideal_of)), std::move(maps)};
}

enum class IrreducibleKind { Join, Meet };

inline ElementSet irreducibles(const DistributiveLattice& d, IrreducibleKind kind) {
  return kind == IrreducibleKind::Join ? join_irreducibles(d.lattice()) : meet_irreducibles(d.lattice());
}

/// Images of A under the bold and bar maps, as sets of lattice elements.
inline std::pair<ElementSet, ElementSet> bold_bar(const BirkhoffMaps& maps, std::size_t lattice_size,
                                                  const ElementSet& a) {
  check_subset(maps.source, a);
  ElementSet bold(lattice_size), bar(lattice_size);
  for_each_member(a, [&](Element x) {
    bold.set(maps.bold[x]);
    bar.set(maps.bar[x]);
  });
  return {bold, bar};
}

/// J(D) with the induced order; `lattice_element[i]` is the element of D that
/// reconstructed element i came from.
struct Reconstruction {
  Poset poset;
  std::vector<Element> lattice_element;
};

inline Reconstruction reconstruct_poset(const DistributiveLattice& d) {
  auto [poset, original] = d.order().induced(join_irreducibles(d.lattice()));
  return Reconstruction{std::move(poset), std::move(original)};
}

inline Reconstruction reconstruct_poset(const Lattice& l) { return reconstruct_poset(DistributiveLattice::certify(l)); }

/// For each element x of D, the mask of reconstructed join-irreducibles
/// below x. This is the Birkhoff isomorphism D -> O(J(D)).
inline std::vector<std::uint64_t> birkhoff_representation(const DistributiveLattice& d, const Reconstruction& r) {
  if (r.lattice_element.size() > 64) fail(ErrorKind::SizeLimit, "more than 64 join-irreducibles");
  std::vector<std::uint64_t> rep(d.size(), 0);
  for (Element x = 0; x < d.size(); ++x)
    for (std::size_t i = 0; i < r.lattice_element.size(); ++i)
      if (d.order().leq(r.lattice_element[i], x)) rep[x] |= std::uint64_t{1} << i;
  return rep;
}

/// Element of D that is the join of the given reconstructed irreducibles.
inline Element join_of(const DistributiveLattice& d, const Reconstruction& r, const ElementSet& irreducible_set) {
  Element acc = d.bottom();
  for_each_member(irreducible_set, [&](Element i) { acc = d.join(acc, r.lattice_element[i]); });
  return acc;
}

}  // namespace icover
