#include <gtest/gtest.h>

#include <random>

#include "starweb/oracle.hpp"
#include "starweb/random_cover.hpp"
#include "starweb/witness.hpp"
#include "support.hpp"

using namespace starweb;
using starweb::testing::pt;
using starweb::testing::three_box_cover;

namespace {

using Zeros = std::vector<std::vector<std::size_t>>;

// Membership in U_alpha and avoidance of Z, checked point by point.
void expect_hits_every_neighbourhood(const Zeros& f,
                                     const std::vector<CubePoint>& s) {
  const std::size_t tau = f.size();
  for (std::size_t alpha = 0; alpha < tau; ++alpha) {
    bool hit = false;
    for (const auto& p : s) {
      bool in_u = p[alpha];
      for (auto beta : f[alpha]) in_u = in_u && !p[beta];
      hit |= in_u;
    }
    EXPECT_TRUE(hit) << "U_" << alpha << " missed";
  }
  for (const auto& p : s) EXPECT_NE(p.ones_count(), 1U) << p.to_string();
}

Cover mutual_pin_cover() {
  Cover c{2};
  c.add(Box::from_pins(2, std::vector<std::size_t>{0},
                       std::vector<std::size_t>{1}),
        LevelInterval::from(0));
  c.add(Box::from_pins(2, std::vector<std::size_t>{1},
                       std::vector<std::size_t>{0}),
        LevelInterval::from(0));
  c.add(Box::from_pins(2, {}, std::vector<std::size_t>{0, 1}),
        LevelInterval::from(0));
  c.add(Box::from_pins(2, std::vector<std::size_t>{0, 1}, {}),
        LevelInterval::from(0));
  return c;
}

}  // namespace

TEST(HittingSet, FourCoordinates) {
  const Zeros f{{1}, {0}, {}, {}};
  const auto hs = off_z_hitting_set(f);
  EXPECT_EQ(hs.classes.classes, (Zeros{{0, 2, 3}, {1}}));
  EXPECT_EQ(hs.points, (std::vector<CubePoint>{pt("1011"), pt("0110")}));
  expect_hits_every_neighbourhood(f, hs.points);
}

TEST(HittingSet, NoConstraints) {
  const auto hs = off_z_hitting_set(Zeros{{}, {}});
  EXPECT_EQ(hs.points, (std::vector<CubePoint>{pt("11")}));
}

TEST(HittingSet, MutualPinHasNoSpareCoordinate) {
  try {
    off_z_hitting_set(Zeros{{1}, {0}});
    FAIL() << "expected SingletonUnfixable";
  } catch (const SingletonUnfixable& e) {
    EXPECT_EQ(e.alpha(), 0U);
  }
}

TEST(HittingSet, RandomNeighbourhoods) {
  std::mt19937_64 rng{44};
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t tau = 2 + rng() % 12;
    Zeros f(tau);
    for (std::size_t a = 0; a < tau; ++a)
      for (std::size_t k = rng() % (tau - 1); k > 0; --k) {
        const std::size_t b = rng() % tau;
        if (b != a) f[a].push_back(b);
      }
    auto rule = (trial % 3 == 0) ? ChoiceRule::seeded(trial)
                                 : ChoiceRule::first();
    // |F_alpha| <= tau - 2 always leaves a spare coordinate.
    const auto hs = off_z_hitting_set(f, rule);
    expect_hits_every_neighbourhood(f, hs.points);
  }
}

TEST(BuildQ, ThreeBoxCover) {
  auto rule = ChoiceRule::first();
  const Cover c = three_box_cover();
  const auto q = build_q_part(c, rule);
  EXPECT_EQ(q, LevelFamily::constant(2, {pt("11"), pt("00")}));
  // Every finite level of X is starred by Q; checked at horizon 10.
  for (std::size_t n = 0; n < 10; ++n)
    for_each_point(2, [&](const CubePoint& p) {
      const XPoint x{p, Level{n}};
      bool starred = false;
      for (const auto& e : c.elements())
        starred |= e.contains(x) && meets(e, q);
      EXPECT_TRUE(starred) << x.to_string();
    });
}

TEST(BuildQ, WholeCubeAtTauOne) {
  Cover c{1};
  c.add(Box::whole(1), LevelInterval::from(0));
  auto rule = ChoiceRule::first();
  // All-ones at tau = 1 is z_0, so the pick falls back to 0.
  EXPECT_EQ(build_q_part(c, rule), LevelFamily::constant(1, {pt("0")}));
}

TEST(BuildQ, SingletonUnitBox) {
  Cover c{2};
  c.add(Box::whole(2), LevelInterval::from(1));
  c.add(Box::singleton(pt("10")), LevelInterval::closed(0, 0));
  c.add(Box::singleton(pt("01")), LevelInterval::closed(0, 0));
  c.add(Box::singleton(pt("00")), LevelInterval::closed(0, 0));
  c.add(Box::singleton(pt("11")), LevelInterval::closed(0, 0));
  auto rule = ChoiceRule::first();
  EXPECT_THROW(build_q_part(c, rule), BoxInsideZ);
}

TEST(BuildR, ThreeBoxCover) {
  auto rule = ChoiceRule::first();
  const auto r = build_r_part_detailed(three_box_cover(), rule);
  ASSERT_EQ(r.tops.size(), 2U);
  EXPECT_EQ(r.tops[0].element_id, 0U);
  EXPECT_TRUE(r.tops[0].zeros.empty());
  EXPECT_EQ(r.tops[1].element_id, 1U);
  EXPECT_TRUE(r.tops[1].zeros.empty());
  EXPECT_EQ(r.hitting.points, (std::vector<CubePoint>{pt("11")}));
  EXPECT_EQ(r.family, LevelFamily::constant(2, {pt("11")}));
  const auto ids = starred_elements(r.family, three_box_cover());
  for (const auto& t : r.tops)
    EXPECT_NE(std::find(ids.begin(), ids.end(), t.element_id), ids.end());
}

TEST(BuildR, StaircasePrefix) {
  // F_0 = {1}, F_1 = {0}, F_2 = F_3 = {}: S = {1011, 0110}; R_0 = {s_0},
  // R_n = S for n >= 1.
  Cover c{4};
  c.add(Box::from_pins(4, std::vector<std::size_t>{0},
                       std::vector<std::size_t>{1}),
        LevelInterval::from(0));
  c.add(Box::from_pins(4, std::vector<std::size_t>{1},
                       std::vector<std::size_t>{0}),
        LevelInterval::from(0));
  c.add(Box::whole(4), LevelInterval::from(0));
  auto rule = ChoiceRule::first();
  const auto r = build_r_part(c, rule);
  EXPECT_EQ(r, (LevelFamily{4, {PointSet{pt("1011")}},
                            {pt("1011"), pt("0110")}}));
}

TEST(BuildR, MutualPin) {
  auto rule = ChoiceRule::first();
  EXPECT_THROW(build_r_part(mutual_pin_cover(), rule), SingletonUnfixable);
}

TEST(TopAssignment, InvariantsHold) {
  std::mt19937_64 rng{71};
  for (int trial = 0; trial < 300; ++trial) {
    const Cover c = random_cover(2 + rng() % 6, rng);
    auto rule = (trial % 2) ? ChoiceRule::seeded(trial) : ChoiceRule::first();
    for (const auto& t : assign_top_neighborhoods(c, rule)) {
      const auto& o = c.elements()[t.element_id];
      EXPECT_TRUE(o.contains(XPoint{unit_point(t.alpha, c.tau()), Level::top()}));
      EXPECT_TRUE(t.neighborhood(c.tau()).subset_of(o.box));
      EXPECT_GE(t.threshold, o.interval.lo);
      EXPECT_TRUE(o.interval.unbounded());
    }
  }
}

TEST(Synthesize, ThreeBoxCover) {
  const auto rep = synthesize(three_box_cover());
  EXPECT_EQ(rep.witness, LevelFamily::constant(2, {pt("11"), pt("00")}));
  EXPECT_TRUE(rep.closed_discrete);
  EXPECT_TRUE(rep.star_covers);
  EXPECT_TRUE(oracle::brute_closed_discrete(rep.witness, 10));
  EXPECT_TRUE(oracle::brute_star_covers(rep.witness, three_box_cover(), 10).covers);
}

TEST(Synthesize, NonCover) {
  Cover c{2};
  c.add(Box::from_pins(2, std::vector<std::size_t>{0}, {}),
        LevelInterval::from(0));
  try {
    synthesize(c);
    FAIL() << "expected InvalidCover";
  } catch (const InvalidCover& e) {
    EXPECT_EQ(e.certificate(), "(00,0)");
  }
}

TEST(Synthesize, TauOneHasNoOffZTopWitness) {
  // D^1 = {0, 1} and z_0 = 1: every neighbourhood of z_0 is {1} = Z, so the
  // top part cannot avoid Z.
  Cover c{1};
  c.add(Box::whole(1), LevelInterval::from(0));
  EXPECT_THROW(synthesize(c), SingletonUnfixable);
  EXPECT_FALSE(is_closed_discrete(LevelFamily::constant(1, {pt("1")})));
}

TEST(Synthesize, DegenerateCasesAreTyped) {
  EXPECT_THROW(synthesize(mutual_pin_cover()), SingletonUnfixable);
  Cover c{2};
  c.add(Box::whole(2), LevelInterval::from(1));
  c.add(Box::singleton(pt("10")), LevelInterval::closed(0, 0));
  c.add(Box::singleton(pt("01")), LevelInterval::closed(0, 0));
  c.add(Box::singleton(pt("00")), LevelInterval::closed(0, 0));
  c.add(Box::singleton(pt("11")), LevelInterval::closed(0, 0));
  EXPECT_THROW(synthesize(c), BoxInsideZ);
}

TEST(Synthesize, SoundOnRandomCovers) {
  std::mt19937_64 rng{101};
  int ran = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t tau = 2 + trial % 5;
    const Cover c = random_cover(tau, rng);
    try {
      const auto rep = synthesize(c);
      ++ran;
      EXPECT_TRUE(rep.ok());
      EXPECT_EQ(rep.witness, family_union(rep.q_part, rep.r_part));
      // Q stars every finite level, R every top point.
      const Region sq = star(rep.q_part, c);
      for (std::size_t n = 0; n <= stable_level(c) + 1; ++n) {
        std::vector<Box> boxes;
        for (const auto& piece : sq.pieces)
          if (piece.interval.contains(n)) boxes.push_back(piece.box);
        EXPECT_TRUE(boxes_cover(boxes, Box::whole(tau))) << "level " << n;
      }
      const Region sr = star(rep.r_part, c);
      for (const auto& z : top_points(tau)) EXPECT_TRUE(sr.contains(z));
      // No points over Z at all.
      for (std::size_t n = 0; n <= rep.witness.horizon(); ++n)
        for (const auto& p : rep.witness.at(n)) EXPECT_FALSE(p.is_unit());
      // Level slices bounded by |c| + |S|.
      for (std::size_t n = 0; n <= rep.witness.horizon(); ++n)
        EXPECT_LE(rep.witness.at(n).size(), c.size() + tau);
      if (tau <= 5) {
        EXPECT_TRUE(oracle::brute_closed_discrete(rep.witness, 20));
        EXPECT_TRUE(oracle::brute_star_covers(rep.witness, c, 20).covers);
      }
    } catch (const BoxInsideZ&) {
    } catch (const SingletonUnfixable&) {
    }
  }
  EXPECT_GT(ran, 150);
}
