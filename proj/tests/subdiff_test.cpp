#include <gtest/gtest.h>

#include "ecvx/report.hpp"
#include "properties.hpp"

using namespace ecvx;

TEST(Subdiff, AffineIsASingleton) {
  PiecewiseFn f = PiecewiseFn::poly_on(Interval::real_line(), Poly{1, 2});
  Interval s = eps_subdiff(f, 0.0, 0.0);
  EXPECT_NEAR(s.lo(), 2.0, 1e-9);
  EXPECT_NEAR(s.hi(), 2.0, 1e-9);
  CSubdiff c = c_subdiff(f, 3.0, 0.5);
  EXPECT_TRUE(c.feas.contains(0.0, 1e-6));
  EXPECT_FALSE(c.feas.contains(0.5, 100.0));
}

TEST(Subdiff, JumpNeedsEpsilonAtLeastTheGap) {
  // g(0) = 1 sits a unit above the limit from the right
  PiecewiseFn g = fixtures::weak_duality().g;
  EXPECT_TRUE(eps_subdiff(g, 0.0, 0.0).is_empty());
  EXPECT_TRUE(eps_subdiff(g, 0.0, 0.99).is_empty());
  Interval s = eps_subdiff(g, 0.0, 1.0);
  EXPECT_FALSE(s.lo_finite());
  EXPECT_NEAR(s.hi(), 1.0, 1e-9);
  Interval q = eps_subdiff(fixtures::cubic().f, 1.0, 0.0);
  // tangency: the sublevel root is only good to the square root of the rounding
  EXPECT_NEAR(q.lo(), 3.0, 1e-5);
  EXPECT_NEAR(q.hi(), 3.0, 1e-5);
}

TEST(Subdiff, MinimalEpsilon) {
  SubdiffData d = SubdiffData::of(PiecewiseFn::poly_on(Interval::real_line(), Poly{0, 0, 1}));
  // x^2 at 0: x* needs eps = x*^2 / 4
  for (double s : {0.0, 1.0, 3.0}) EXPECT_NEAR(*minimal_eps(d, 0.0, s, 1e-6), s * s / 4, 1e-9) << s;
}

TEST(Subdiff, ReconstructsTheConjugate) {
  for (const props::Named& f : props::fixture_functions()) {
    props::Tally t = props::reconstruction(f);
    EXPECT_TRUE(t.ok()) << t.str();
  }
}

TEST(Subdiff, InsideTheHullSubdifferential) {
  unsigned seed = 100;
  for (const props::Named& f : props::fixture_functions()) {
    props::Tally t = props::subdiff_inclusion(f, 40, seed++);
    EXPECT_TRUE(t.ok()) << t.str();
  }
}

TEST(Subdiff, OutsideTheDomain) {
  PiecewiseFn f = fixtures::cubic().f;
  try {
    subdiff_report(f, -1.0, 0.1, Config{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
  EXPECT_THROW(lemma9_reconstruct(f, -1.0), Error);
}
