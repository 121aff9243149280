#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace icover;
using namespace icover::testing;

TEST(Poset, ChainClosesTransitively) {
  Poset p = build_poset({{0, 1}, {1, 2}}, 3);
  EXPECT_TRUE(p.leq(0, 2));
  EXPECT_FALSE(p.leq(2, 0));
  EXPECT_EQ(p.covers().size(), 2u);
}

TEST(Poset, TwoChains) {
  Poset p = two_chains_poset();
  EXPECT_TRUE(p.less(kA1, kB2));
  EXPECT_TRUE(p.less(kB1, kA2));
  EXPECT_FALSE(p.comparable(kA1, kA2));
  EXPECT_FALSE(p.comparable(kA1, kB1));
  EXPECT_EQ(p.minimal(), make_set(4, {kA1, kB1}));
}

TEST(Poset, Errors) {
  EXPECT_EQ(kind_of([] { build_poset({{0, 1}, {1, 0}}, 2); }), ErrorKind::CycleDetected);
  EXPECT_EQ(kind_of([] { build_poset({{0, 0}}, 1); }), ErrorKind::CycleDetected);
  EXPECT_EQ(kind_of([] { build_poset({{0, 5}}, 3); }), ErrorKind::ElementOutOfRange);
}

TEST(Poset, RedundantEdgesAreNotCovers) {
  Poset p = build_poset({{0, 1}, {1, 2}, {0, 2}}, 3);
  EXPECT_EQ(p.covers(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(Poset, GeneratedSets) {
  Poset chain = chain_poset(3);
  EXPECT_EQ(generated_set(chain, make_set(3, {2}), Direction::Down), chain.full_set());
  Poset z = zigzag_poset();
  EXPECT_EQ(generated_set(z, make_set(4, {kB2}), Direction::Down), make_set(4, {kA1, kB1, kB2}));
  EXPECT_TRUE(generated_set(z, z.empty_set(), Direction::Up).none());
}

TEST(Poset, ConvexityExamples) {
  Poset chain = chain_poset(3);
  EXPECT_FALSE(is_convex(chain, make_set(3, {0, 2})));
  Poset b3 = families::gen_boolean(3).order();
  ElementSet middle(8);
  for (Element m = 0; m < 8; ++m)
    if (std::popcount(m) == 1 || std::popcount(m) == 2) middle.set(m);
  EXPECT_TRUE(is_convex(b3, middle));
}

TEST(Poset, ConvexityMatchesDefinitionOnRandomPosets) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Poset p = families::gen_random_poset(6, 0.35, seed);
    for (std::uint64_t m = 0; m < 64; ++m) {
      ElementSet s = mask_to_set(6, m);
      ASSERT_EQ(is_convex(p, s), convex_by_definition(p, m)) << "seed " << seed << " mask " << m;
      ASSERT_EQ(is_downset(p, s), downset_by_definition(p, m));
    }
  }
}

TEST(Poset, DownsetsAreConvex) {
  Poset p = families::gen_random_poset(7, 0.3, 11);
  for (const auto& ideal : ideals(p)) EXPECT_TRUE(is_convex(p, ideal));
}

TEST(Poset, AntichainRelations) {
  Poset four = two_chains_poset();
  auto r = antichain_relations(four, make_set(4, {kA1, kA2}), make_set(4, {kB1, kB2}));
  EXPECT_FALSE(r.le);
  EXPECT_TRUE(r.not_ge);

  Poset vee = build_poset({{0, 1}, {0, 2}}, 3);  // x < y, x < z
  r = antichain_relations(vee, vee.full_set(), vee.full_set());
  EXPECT_TRUE(r.le);
  EXPECT_FALSE(r.not_ge);

  // bottom is not >= top, so the relation holds for comparable singletons
  Poset two = chain_poset(2);
  r = antichain_relations(two, make_set(2, {0}), make_set(2, {1}));
  EXPECT_TRUE(r.le);
  EXPECT_TRUE(r.not_ge);
  r = antichain_relations(two, make_set(2, {1}), make_set(2, {0}));
  EXPECT_FALSE(r.le);
  EXPECT_FALSE(r.not_ge);
}

TEST(Poset, ConvexSpan) {
  Poset b3 = families::gen_boolean(3).order();
  ConvexSpan s = convex_span(b3, make_set(8, {1, 2, 4}), make_set(8, {3, 5, 6}));
  EXPECT_EQ(s.elements.count(), 6u);
  EXPECT_FALSE(s.elements.test(0));
  EXPECT_FALSE(s.elements.test(7));

  ConvexSpan single = convex_span(b3, make_set(8, {2}), make_set(8, {2}));
  EXPECT_EQ(single.elements, make_set(8, {2}));

  EXPECT_EQ(kind_of([&] { convex_span(b3, make_set(8, {1, 3}), make_set(8, {7})); }), ErrorKind::NotAntichain);
  EXPECT_EQ(kind_of([&] { convex_span(b3, make_set(8, {3}), make_set(8, {4})); }), ErrorKind::NotDominated);

  auto glued = families::gen_glued(3, 3);
  ConvexSpan g = convex_span(glued.lattice.order(), glued.lower, glued.upper);
  EXPECT_EQ(g.elements, glued.lower | glued.upper);
}

TEST(Poset, RankProfile) {
  EXPECT_EQ(rank_profile(families::gen_boolean(3).order()).level_sizes, (std::vector<std::size_t>{1, 3, 3, 1}));
  RankProfile z = rank_profile(zigzag_poset());
  ASSERT_EQ(z.levels.size(), 2u);
  EXPECT_EQ(z.levels[0], make_set(4, {kA1, kB1}));
  EXPECT_EQ(z.levels[1], make_set(4, {kA2, kB2}));
  // w < x < z and y < z
  EXPECT_EQ(kind_of([] { rank_profile(build_poset({{0, 1}, {1, 3}, {2, 3}}, 4)); }), ErrorKind::NotRanked);
}

TEST(Poset, Width) {
  EXPECT_EQ(width(families::gen_boolean(4).order()), 6u);
  EXPECT_EQ(width(antichain_poset(5)), 5u);
  EXPECT_EQ(width(zigzag_poset()), 2u);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Poset p = families::gen_random_poset(9, 0.25, seed);
    const std::size_t expected = width_by_subsets(p);
    EXPECT_EQ(width_dilworth(p), expected);
    EXPECT_EQ(max_antichain_exhaustive(p).count(), expected);
  }
}

TEST(Poset, Dual) {
  Poset z = zigzag_poset();
  Poset d = dual(z);
  for (Element x = 0; x < 4; ++x)
    for (Element y = 0; y < 4; ++y) EXPECT_EQ(z.leq(x, y), d.leq(y, x));
  EXPECT_EQ(dual(d), z);
}

TEST(Poset, IdealCounts) {
  EXPECT_EQ(count_ideals(chain_poset(5)), 6u);
  EXPECT_EQ(count_ideals(antichain_poset(5)), 32u);
  EXPECT_EQ(count_ideals(two_chains_poset()), 9u);
}

TEST(Poset, IdealsMatchSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Poset p = families::gen_random_poset(8, 0.3, seed);
    std::vector<std::uint64_t> expected, got;
    for (std::uint64_t m = 0; m < 256; ++m)
      if (downset_by_definition(p, m)) expected.push_back(m);
    enumerate_ideals(p, [&](std::uint64_t m) { got.push_back(m); });
    EXPECT_EQ(got, expected);  // same set, same ascending order
  }
}

TEST(Poset, IdealEnumerationStops) {
  std::size_t seen = 0;
  enumerate_ideals(antichain_poset(6), [&](std::uint64_t) { return ++seen < 5; });
  EXPECT_EQ(seen, 5u);
}

TEST(Poset, TextRoundTrip) {
  Poset p = families::gen_random_poset(7, 0.4, 3);
  EXPECT_EQ(parse_poset(to_poset_text(p, "sample")), p);
  Poset q = parse_poset("# comment\n4\n\n0 3\n2 1   \n");
  EXPECT_EQ(q, two_chains_poset());
}

TEST(Poset, ParseErrors) {
  EXPECT_EQ(kind_of([] { parse_poset(""); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_poset("3\n0\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_poset("3\n0 1 2\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_poset("3\n0 7\n"); }), ErrorKind::ElementOutOfRange);
  EXPECT_EQ(kind_of([] { parse_poset("2\n0 1\n1 0\n"); }), ErrorKind::CycleDetected);
}

TEST(Poset, Induced) {
  Poset z = zigzag_poset();
  auto [sub, host] = z.induced(make_set(4, {kB1, kA2, kB2}));
  EXPECT_EQ(host, (std::vector<Element>{kA2, kB1, kB2}));
  EXPECT_TRUE(sub.less(1, 0));
  EXPECT_TRUE(sub.less(1, 2));
  EXPECT_FALSE(sub.comparable(0, 2));
}
