#include <gtest/gtest.h>

#include <random>

#include "starweb/format.hpp"
#include "starweb/random_cover.hpp"
#include "support.hpp"

using namespace starweb;
using starweb::testing::pt;

TEST(CoverFormat, ParsesCommentsAndBlankLines) {
  const Cover c = format::parse_cover(
      "# three boxes\n"
      "tau 2\n"
      "\n"
      "box ones=0 zeros= levels=0..*   # first\n"
      "box levels=0..* ones=1 zeros=\n"
      "box ones= zeros=0,1 levels=0..*\n");
  EXPECT_EQ(c, starweb::testing::three_box_cover());
  EXPECT_EQ(format::write_cover(c),
            "tau 2\n"
            "box ones=0 zeros= levels=0..*\n"
            "box ones=1 zeros= levels=0..*\n"
            "box ones= zeros=0,1 levels=0..*\n");
}

TEST(CoverFormat, FiniteInterval) {
  const Cover c = format::parse_cover("tau 3\nbox ones=2 zeros=0 levels=1..4\n");
  ASSERT_EQ(c.size(), 1U);
  EXPECT_EQ(c.elements()[0].interval, LevelInterval::closed(1, 4));
}

TEST(CoverFormat, Errors) {
  auto line_of = [](const char* text) {
    try {
      format::parse_cover(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  EXPECT_EQ(line_of("tau 2\nbox ones= zeros= levels=3..1\n"), 2U);
  EXPECT_EQ(line_of("tau 2\n\nbox ones=2 zeros= levels=0..*\n"), 3U);
  EXPECT_EQ(line_of("tau 2\nbox ones=1 zeros=1 levels=0..*\n"), 2U);
  EXPECT_EQ(line_of("tau 2\nbox ones=1 levels=0..*\n"), 2U);
  EXPECT_EQ(line_of("tau 2\nbox ones=1 zeros= levels=0..x\n"), 2U);
  EXPECT_EQ(line_of("tau 2\nbox ones=1,1 zeros= levels=0..*\n"), 2U);
  EXPECT_EQ(line_of("tau 2\nball ones= zeros= levels=0..*\n"), 2U);
  EXPECT_EQ(line_of("tau 0\n"), 1U);
  EXPECT_EQ(line_of("# nothing\n"), 0U);
}

TEST(CoverFormat, RoundTripsRandomCovers) {
  std::mt19937_64 rng{12};
  for (int trial = 0; trial < 200; ++trial) {
    const Cover c = random_cover(2 + rng() % 10, rng);
    const std::string text = format::write_cover(c);
    const Cover back = format::parse_cover(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(format::write_cover(back), text);
  }
}

TEST(WitnessFormat, Canonical) {
  const LevelFamily fam{2, {PointSet{}, PointSet{pt("11")}},
                        {pt("11"), pt("00")}};
  const std::string text = format::write_witness(fam);
  EXPECT_EQ(text,
            "tau 2\n"
            "horizon 2\n"
            "level 0:\n"
            "level 1: 11\n"
            "tail: 00,11\n");
  EXPECT_EQ(format::parse_witness(text), fam);
}

TEST(WitnessFormat, RoundTripsRandomFamilies) {
  std::mt19937_64 rng{21};
  for (int trial = 0; trial < 300; ++trial) {
    const auto fam = starweb::testing::random_family(1 + rng() % 12, rng, 6);
    const std::string text = format::write_witness(fam);
    EXPECT_EQ(format::parse_witness(text), fam);
    EXPECT_EQ(format::write_witness(format::parse_witness(text)), text);
  }
}

TEST(WitnessFormat, AcceptsReportBlock) {
  const auto fam = LevelFamily::constant(2, {pt("11")});
  const std::string text = format::write_witness(fam) +
                           "closed_discrete: true\nstar_covers: false\n"
                           "certificate: (00,0)\n";
  EXPECT_EQ(format::parse_witness(text), fam);
}

TEST(WitnessFormat, Errors) {
  EXPECT_THROW(format::parse_witness("tau 2\nhorizon 1\ntail: 11\n"), ParseError);
  EXPECT_THROW(format::parse_witness("tau 2\nhorizon 0\ntail: 111\n"), ParseError);
  EXPECT_THROW(format::parse_witness("tau 2\nhorizon 0\n"), ParseError);
  EXPECT_THROW(format::parse_witness("tau 2\nhorizon 0\nlevel 0: 11\ntail:\n"),
               ParseError);
}

TEST(ReportFormat, Lines) {
  WitnessReport rep{LevelFamily::constant(2, {pt("10")}), LevelFamily{2},
                    LevelFamily{2}, {}};
  rep.closed_discrete = false;
  rep.star_covers = true;
  rep.accumulation = pt("10");
  EXPECT_EQ(format::write_report(rep),
            "tau 2\nhorizon 0\ntail: 10\n"
            "closed_discrete: false\nstar_covers: true\n"
            "certificate: (10,TOP)\n");
}

TEST(SetMappingFormat, ParseAndWrite) {
  const std::string text = "n 3\n0: 1\n1: 2\n2: 0\n";
  const SetMapping f = format::parse_set_mapping(text);
  EXPECT_EQ(f, (SetMapping{{{1}, {2}, {0}}}));
  EXPECT_EQ(format::write_set_mapping(f), text);
  EXPECT_EQ(format::parse_set_mapping("4\n2: 3,0\n").image(2).size(), 2U);
  EXPECT_THROW(format::parse_set_mapping("n 2\n0: 0\n"), ParseError);
  EXPECT_THROW(format::parse_set_mapping("n 2\n0: 5\n"), ParseError);
  EXPECT_EQ(format::write_decomposition(free_decompose(f)),
            "classes 3\nclass 0: 0\nclass 1: 1\nclass 2: 2\n");
}
