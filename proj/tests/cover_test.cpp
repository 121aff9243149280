#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace icover;
using namespace icover::testing;

namespace {

ConvexSpan levels_of(const Poset& p, std::size_t j, std::size_t k) { return level_span(p, rank_profile(p), j, k); }

}  // namespace

TEST(Cover, Candidates) {
  Poset chain = chain_poset(4);
  EXPECT_EQ(candidate_intervals(chain, convex_span(chain, make_set(4, {1}), make_set(4, {3}))).candidates.size(), 1u);
  Poset b3 = families::gen_boolean(3).order();
  auto inst = candidate_intervals(b3, levels_of(b3, 1, 2));
  ASSERT_EQ(inst.candidates.size(), 6u);
  EXPECT_TRUE(std::is_sorted(inst.candidates.begin(), inst.candidates.end(),
                             [](const Interval& x, const Interval& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); }));
}

TEST(Cover, KnownValues) {
  auto glued = families::gen_glued(3, 3);
  IntervalCover g = exact_min_cover(glued.lattice.order(), convex_span(glued.lattice.order(), glued.lower, glued.upper));
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(g.optimal);
  EXPECT_TRUE(is_valid_cover(glued.lattice.order(), g));

  auto frankl = families::gen_frankl(2, 2);
  EXPECT_EQ(exact_min_cover(frankl.lattice.order(), convex_span(frankl.lattice.order(), frankl.lower, frankl.upper)).size(), 4u);

  Poset chain = chain_poset(6);
  EXPECT_EQ(exact_min_cover(chain, convex_span(chain, make_set(6, {1}), make_set(6, {4}))).size(), 1u);

  Poset b4 = families::gen_boolean(4).order();
  EXPECT_EQ(exact_min_cover(b4, levels_of(b4, 1, 3)).size(), 4u);
}

TEST(Cover, Greedy) {
  Poset chain = chain_poset(3);
  EXPECT_EQ(greedy_cover(chain, candidate_intervals(chain, convex_span(chain, make_set(3, {0}), make_set(3, {2})))).size(), 1u);
  auto glued = families::gen_glued(3, 3);
  const Poset& order = glued.lattice.order();
  IntervalCover c = greedy_cover(order, candidate_intervals(order, convex_span(order, glued.lower, glued.upper)));
  EXPECT_GE(c.size(), 4u);
  EXPECT_LE(c.size(), 6u);
  EXPECT_TRUE(is_valid_cover(order, c));
  EXPECT_FALSE(c.optimal);  // 3 is the trivial bound, so greedy cannot prove anything here
}

TEST(Cover, Infeasible) {
  Poset b3 = families::gen_boolean(3).order();
  CoverInstance inst = candidate_intervals(b3, levels_of(b3, 1, 2));
  inst.candidates.pop_back();
  inst.candidates.pop_back();
  inst.candidates.pop_back();
  inst.candidates.pop_back();
  EXPECT_EQ(kind_of([&] { exact_min_cover(b3, inst); }), ErrorKind::Infeasible);
}

TEST(Cover, BudgetMarksResultNonOptimal) {
  auto glued = families::gen_glued(3, 3);
  const Poset& order = glued.lattice.order();
  CoverInstance inst = candidate_intervals(order, convex_span(order, glued.lower, glued.upper));
  SolveStats stats;
  IntervalCover c = exact_min_cover(order, inst, 1, &stats);
  EXPECT_FALSE(c.optimal);
  EXPECT_TRUE(is_valid_cover(order, c));
  EXPECT_TRUE(exact_min_cover(order, inst).optimal);

  // every x_ij sits in one candidate only, so the bound alone proves r*s
  auto frankl = families::gen_frankl(3, 3);
  const Poset& big = frankl.lattice.order();
  IntervalCover f = exact_min_cover(big, candidate_intervals(big, convex_span(big, frankl.lower, frankl.upper)), 1, &stats);
  EXPECT_TRUE(f.optimal);
  EXPECT_EQ(f.size(), 9u);
  EXPECT_EQ(stats.lower_bound, 9u);
}

TEST(Cover, EmptySpan) {
  Poset p = antichain_poset(3);
  ConvexSpan s{p.empty_set(), p.empty_set(), p.empty_set()};
  EXPECT_EQ(exact_min_cover(p, s).size(), 0u);
}

TEST(Cover, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  int tested = 0;
  while (tested < 300) {
    Poset p = families::gen_random_poset(4 + rng() % 6, 0.3, rng());
    ConvexSpan span = random_span(p, rng);
    CoverInstance inst = candidate_intervals(p, span);
    if (inst.candidates.size() > 14) continue;
    ++tested;
    IntervalCover c = exact_min_cover(p, inst);
    ASSERT_TRUE(c.optimal);
    ASSERT_TRUE(is_valid_cover(p, c));
    ASSERT_EQ(c.size(), *brute_force_rho(p, inst)) << to_poset_text(p);
  }
}

// Endpoint sets that are not antichains must not feed the per-antichain bound.
TEST(Cover, NonAntichainEndpoints) {
  Poset p = zigzag_poset();
  auto [d, maps] = ideals_lattice(p);
  auto [bold_a, bar_a] = bold_bar(maps, d.size(), make_set(4, {kA1, kA2}));
  auto [bold_b, bar_b] = bold_bar(maps, d.size(), make_set(4, {kB1, kB2}));
  ConvexSpan hull{bold_a, bar_b,
                  generated_set(d.order(), bold_a, Direction::Up) & generated_set(d.order(), bar_b, Direction::Down)};
  CoverInstance inst = candidate_intervals(d.order(), hull);
  IntervalCover c = exact_min_cover(d.order(), inst);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.size(), *brute_force_rho(d.order(), inst));
  EXPECT_EQ(hull.elements.count(), 4u);
}

TEST(Cover, Icp) {
  Poset b4 = families::gen_boolean(4).order();
  IcpReport strong = icp_check(b4, 0, 0, true);
  EXPECT_TRUE(strong.holds);
  EXPECT_EQ(strong.pairs.size(), 15u);

  auto glued = families::gen_glued(3, 3);
  IcpReport g = icp_check(glued.lattice.order(), 2, 3, false);
  EXPECT_FALSE(g.holds);
  EXPECT_EQ(g.rho, 4u);
  EXPECT_EQ(g.bound, 3u);
  EXPECT_FALSE(icp_check(glued.lattice.order(), 0, 0, true).holds);

  for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(icp_check(glued.lattice.order(), j, j, false).holds);
  EXPECT_EQ(kind_of([&] { icp_check(b4, 3, 1, false); }), ErrorKind::NotLevels);
  EXPECT_EQ(kind_of([&] { icp_check(b4, 0, 9, false); }), ErrorKind::NotLevels);
}
