#include <gtest/gtest.h>

#include "icover/report.hpp"
#include "test_support.hpp"

using namespace icover;
using namespace icover::harness;
using namespace icover::testing;

TEST(DaykinFrankl, ExhaustiveSmall) {
  CampaignReport one = check_daykin_frankl(1, Mode::Exhaustive);
  EXPECT_TRUE(one.violations.empty());
  EXPECT_EQ(one.instances_checked, 3u);  // two singletons and the 2-chain

  // convex subsets of B(3) counted straight from the definition
  Poset b3 = families::gen_boolean(3).order();
  std::size_t convex = 0;
  for (std::uint64_t m = 1; m < 256; ++m) convex += convex_by_definition(b3, m);
  CampaignReport three = check_daykin_frankl(3, Mode::Exhaustive);
  EXPECT_EQ(three.instances_checked, convex);
  EXPECT_TRUE(three.violations.empty());
}

TEST(DaykinFrankl, FullLatticeIsExtremalAtFour) {
  CampaignReport r = check_daykin_frankl(4, Mode::Exhaustive, 0, 0, 4);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.instances_checked, 3937u);
  ASSERT_TRUE(r.extremal.has_value());
  EXPECT_EQ(r.extremal->num, 6u);
  EXPECT_EQ(r.extremal->den, 16u);
  EXPECT_EQ(r.extremal_id, "subset-" + std::to_string(0xFFFFu));
  EXPECT_EQ(kind_of([] { check_daykin_frankl(5, Mode::Exhaustive); }), ErrorKind::SizeLimit);
  EXPECT_EQ(kind_of([] { check_daykin_frankl(9, Mode::Sample, 10); }), ErrorKind::SizeLimit);
}

TEST(DaykinFrankl, SamplingIsReproducible) {
  CampaignReport a = check_daykin_frankl(6, Mode::Sample, 2000, 42, 1);
  CampaignReport b = check_daykin_frankl(6, Mode::Sample, 2000, 42, 4);
  EXPECT_TRUE(a.violations.empty());
  EXPECT_GT(a.instances_checked, 1000u);
  EXPECT_EQ(campaign_json(a).dump(), campaign_json(b).dump());
  CampaignReport c = check_daykin_frankl(6, Mode::Sample, 2000, 43, 1);
  EXPECT_EQ(c.seed, 43u);
}

TEST(DaykinFrankl, SampledRatiosStayAboveExhaustiveMinimum) {
  // every sample is a convex set, so its ratio cannot beat the exhaustive minimum
  CampaignReport r = check_daykin_frankl(4, Mode::Sample, 3000, 7);
  ASSERT_TRUE(r.extremal.has_value());
  EXPECT_FALSE(*r.extremal < (Ratio{6, 16}));
}

TEST(LevelSearch, NoViolationsOnSmallCorpus) {
  for (Problem pr : {Problem::Atoms, Problem::Bound}) {
    CampaignReport r = search_level_covers(4, pr);
    EXPECT_TRUE(r.violations.empty()) << to_string(pr);
    EXPECT_GT(r.instances_checked, 0u);
    EXPECT_EQ(r.unresolved, 0u);
  }
  EXPECT_EQ(kind_of([] { search_level_covers(7, Problem::Atoms); }), ErrorKind::SizeLimit);
  EXPECT_EQ(parse_problem("bound"), Problem::Bound);
  EXPECT_EQ(kind_of([] { parse_problem("nope"); }), ErrorKind::ParseError);
}

TEST(LevelSearch, FlagsGluedCube) {
  SearchOptions opts;
  opts.inject_glued = true;
  opts.threads = 2;
  CampaignReport r = search_level_covers(3, Problem::Pairs, opts);
  ASSERT_EQ(r.violations.size(), 1u);
  const Violation& v = r.violations[0];
  EXPECT_EQ(v.id, "glued-3-3");
  EXPECT_EQ(v.levels, std::make_pair(std::size_t{2}, std::size_t{3}));
  EXPECT_EQ(v.expected, "3");
  EXPECT_EQ(v.observed, "4");
  EXPECT_EQ(replay_violation(v), 4u);
}

TEST(LevelSearch, PairsAuditFindsOnlyTheCubeUpToFive) {
  SearchOptions opts;
  opts.threads = 4;
  CampaignReport r = search_level_covers(5, Problem::Pairs, opts);
  ASSERT_EQ(r.violations.size(), 1u);
  for (const Violation& v : r.violations) EXPECT_EQ(replay_violation(v), std::stoul(v.observed));
  // O(P) for the violating P is the glued cube
  Poset p = parse_poset(r.violations[0].instance);
  auto d = ideals_lattice(p).first;
  EXPECT_EQ(d.size(), 14u);
}

TEST(LevelSearch, ReportsAreByteIdentical) {
  SearchOptions one, many;
  many.threads = 4;
  one.inject_glued = many.inject_glued = true;
  auto a = campaign_json(search_level_covers(4, Problem::Pairs, one)).dump();
  auto b = campaign_json(search_level_covers(4, Problem::Pairs, many)).dump();
  EXPECT_EQ(a, b);
}

TEST(LevelSearch, ReplayNeedsLevels) {
  Violation v{"x", std::nullopt, "", "", "1\n"};
  EXPECT_EQ(kind_of([&] { replay_violation(v); }), ErrorKind::PreconditionViolated);
}
