#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace icover;
using namespace icover::gk;
using icover::testing::kind_of;

namespace {

// 1-based positions to a subset of [n]
BitSubset subset(unsigned n, std::initializer_list<unsigned> positions) {
  std::uint64_t bits = 0;
  for (unsigned p : positions) bits |= std::uint64_t{1} << (p - 1);
  return make_subset(n, bits);
}

std::uint64_t choose(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(GreeneKleitman, Words) {
  EXPECT_EQ(to_word(from_word("011001")), "011001");
  EXPECT_EQ(from_word("011001"), subset(6, {2, 3, 6}));
  EXPECT_EQ(kind_of([] { from_word("0120"); }), ErrorKind::ParseError);
}

TEST(GreeneKleitman, Pairing) {
  GKPairing g = pair_positions(from_word("011001"));
  // 0-based: pairs (1,2) and (5,6) in 1-based notation
  EXPECT_EQ(g.pairs, (std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {4, 5}}));
  EXPECT_EQ(g.u0, (std::vector<unsigned>{3}));
  EXPECT_EQ(g.u1, (std::vector<unsigned>{2}));

  GKPairing zeros = pair_positions(from_word("0000"));
  EXPECT_TRUE(zeros.pairs.empty());
  EXPECT_EQ(zeros.u0, (std::vector<unsigned>{0, 1, 2, 3}));
  EXPECT_TRUE(zeros.u1.empty());

  GKPairing ten = pair_positions(from_word("10"));
  EXPECT_TRUE(ten.pairs.empty());
  EXPECT_EQ(ten.u1, (std::vector<unsigned>{0}));
  EXPECT_EQ(ten.u0, (std::vector<unsigned>{1}));
}

TEST(GreeneKleitman, ChainOf) {
  SymChain c = chain_of(subset(6, {2, 3, 6}));
  ASSERT_EQ(c.elements.size(), 3u);
  EXPECT_EQ(c.min(), subset(6, {2, 6}));
  EXPECT_EQ(BitSubset(6, c.elements[1]), subset(6, {2, 3, 6}));
  EXPECT_EQ(c.max(), subset(6, {2, 3, 4, 6}));

  SymChain e = chain_of(make_subset(4, 0));
  ASSERT_EQ(e.elements.size(), 5u);
  for (unsigned i = 0; i <= 4; ++i) EXPECT_EQ(e.elements[i], full_mask(i));
}

TEST(GreeneKleitman, Decomposition) {
  SCD three = gk_decomposition(3);
  ASSERT_EQ(three.chains.size(), 3u);
  std::vector<std::size_t> sizes;
  for (const auto& c : three.chains) sizes.push_back(c.elements.size());
  std::sort(sizes.rbegin(), sizes.rend());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 2, 2}));

  SCD one = gk_decomposition(1);
  ASSERT_EQ(one.chains.size(), 1u);
  EXPECT_EQ(one.chains[0].elements, (std::vector<std::uint64_t>{0, 1}));

  for (unsigned n = 1; n <= 10; ++n) {
    SCD d = gk_decomposition(n);
    ScdReport r = verify_scd(d);
    EXPECT_TRUE(r.ok()) << n;
    EXPECT_EQ(d.chains.size(), choose(n, n / 2));
  }
  EXPECT_EQ(kind_of([] { gk_decomposition(0); }), ErrorKind::SizeLimit);
}

TEST(GreeneKleitman, VerifierCatchesBrokenDecompositions) {
  SCD d = gk_decomposition(4);
  SCD dropped = d;
  dropped.chains.pop_back();
  EXPECT_FALSE(verify_scd(dropped).partition);
  SCD shortened = d;
  shortened.chains[0].elements.pop_back();
  EXPECT_FALSE(verify_scd(shortened).ok());
}

TEST(GreeneKleitman, Phi) {
  SymChain c = chain_of(subset(6, {2, 6}));
  SymChain next = phi(c);
  EXPECT_EQ(next.min(), subset(6, {2}));
  EXPECT_EQ(next.max(), subset(6, {2, 3, 4, 5, 6}));
  EXPECT_EQ(kind_of([] { phi(chain_of(make_subset(5, 0))); }), ErrorKind::MaxChain);
}

TEST(GreeneKleitman, Psi) {
  EXPECT_EQ(psi(subset(3, {1, 2}), 1), subset(3, {1}));
  EXPECT_EQ(psi(subset(3, {1, 3}), 1), subset(3, {3}));
  EXPECT_EQ(psi(subset(5, {1, 4}), 2), subset(5, {1, 4}));
  EXPECT_EQ(kind_of([] { psi(subset(3, {1, 2}), 2); }), ErrorKind::PreconditionViolated);
  // psi(Y) lies below Y at level j
  for (std::uint64_t y = 0; y < 256; ++y) {
    BitSubset ys = make_subset(8, y);
    for (unsigned j = 0; j <= ys.size() && j + ys.size() <= 8; ++j) {
      BitSubset x = psi(ys, j);
      EXPECT_EQ(x.size(), j);
      EXPECT_EQ(x.bits & ~y, 0u);
    }
  }
}

TEST(GreeneKleitman, LevelCovers) {
  IntervalCover c = boolean_level_cover(4, 1, 3);
  EXPECT_EQ(c.size(), 4u);
  EXPECT_TRUE(is_valid_boolean_cover(4, c));

  IntervalCover same = boolean_level_cover(5, 2, 2);
  EXPECT_EQ(same.size(), 10u);
  for (const auto& iv : same.intervals) EXPECT_EQ(iv.a, iv.b);

  IntervalCover comp = boolean_level_cover(3, 2, 3);
  EXPECT_EQ(comp.size(), 3u);
  EXPECT_TRUE(is_valid_boolean_cover(3, comp));

  // the generic checker on the real order agrees with the subset walk
  Poset b5 = families::gen_boolean(5).order();
  for (unsigned j = 0; j <= 5; ++j)
    for (unsigned k = j; k <= 5; ++k) {
      IntervalCover lc = boolean_level_cover(5, j, k);
      EXPECT_TRUE(is_valid_cover(b5, lc)) << j << "," << k;
      EXPECT_EQ(lc.size(), std::max(choose(5, j), choose(5, k)));
    }
}
