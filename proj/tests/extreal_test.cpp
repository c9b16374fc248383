#include <gtest/gtest.h>

#include "ecvx/extreal.hpp"

using namespace ecvx;

TEST(ExtReal, MinusInfinityWinsClashes) {
  EXPECT_EQ(add_lower(ExtReal::plus_inf(), ExtReal::minus_inf()), ExtReal::minus_inf());
  EXPECT_EQ(add_lower(ExtReal::minus_inf(), ExtReal::plus_inf()), ExtReal::minus_inf());
  EXPECT_EQ(sub_lower(ExtReal(1.0), ExtReal::plus_inf()), ExtReal::minus_inf());
  EXPECT_EQ(sub_lower(ExtReal::plus_inf(), ExtReal::plus_inf()), ExtReal::minus_inf());
  EXPECT_EQ(add_lower(ExtReal(2.0), ExtReal(3.0)), ExtReal(5.0));
  EXPECT_EQ(add_lower(ExtReal(2.0), ExtReal::plus_inf()), ExtReal::plus_inf());
}

TEST(ExtReal, OrderAndScale) {
  EXPECT_LT(ExtReal::minus_inf(), ExtReal(-1e300));
  EXPECT_LT(ExtReal(1e300), ExtReal::plus_inf());
  EXPECT_FALSE(ExtReal::plus_inf() < ExtReal::plus_inf());
  EXPECT_EQ(scale(0.0, ExtReal::plus_inf()), ExtReal(0.0));
  EXPECT_EQ(scale(-2.0, ExtReal::plus_inf()), ExtReal::minus_inf());
  EXPECT_EQ(-ExtReal::minus_inf(), ExtReal::plus_inf());
  EXPECT_EQ(ExtReal(std::numeric_limits<double>::infinity()), ExtReal::plus_inf());
  EXPECT_TRUE(near(ExtReal(1.0), ExtReal(1.0 + 1e-10), 1e-9));
  EXPECT_FALSE(near(ExtReal(1.0), ExtReal::plus_inf(), 1e9));
}

TEST(Interval, Openness) {
  Interval I(0, false, 1, true);
  EXPECT_FALSE(I.contains(0.0));
  EXPECT_TRUE(I.contains(1.0));
  EXPECT_TRUE(Interval(1, true, 1, false).is_empty());
  EXPECT_TRUE(Interval::point(2).is_point());
  Interval R(-Interval::kInf, true, 3, false);
  EXPECT_FALSE(R.lo_closed());
  EXPECT_EQ(Interval::open(0, 1).closure(), Interval::closed(0, 1));
  EXPECT_EQ(Interval::closed(0, 1).interior(), Interval::open(0, 1));
  EXPECT_TRUE(Interval::closed(0, 2).contains(Interval(0, true, 1, false)));
  EXPECT_FALSE(Interval::open(0, 2).contains(Interval::closed(0, 1)));
  EXPECT_EQ(Interval::less_than(0).str(), "]-inf,0[");
}

TEST(Interval, Algebra) {
  EXPECT_EQ(intersect(Interval::at_least(0), Interval::less_than(1)), Interval(0, true, 1, false));
  EXPECT_TRUE(intersect(Interval::less_than(0), Interval::at_least(0)).is_empty());
  EXPECT_EQ(intersect(Interval::at_most(0), Interval::at_least(0)), Interval::point(0));
  EXPECT_EQ(minkowski(Interval::closed(0, 1), Interval(1, false, 2, true)), Interval(1, false, 3, true));
  EXPECT_EQ(minkowski(Interval::at_least(0), Interval::point(-1)), Interval::at_least(-1));
  EXPECT_EQ(hull(Interval::less_than(0), Interval::point(2)), Interval::at_most(2));
  EXPECT_EQ(scale(-1.0, Interval(0, false, 1, true)), Interval(-1, true, 0, false));
  EXPECT_EQ(scale(0.0, Interval::real_line()), Interval::point(0));
}

TEST(Interval, StrictHalfLine) {
  // [0, 1] lies in {x < 1} only when 1 is excluded.
  EXPECT_FALSE(inside_strict_halfline(Interval::closed(0, 1), 1.0, 1.0));
  EXPECT_TRUE(inside_strict_halfline(Interval(0, true, 1, false), 1.0, 1.0));
  EXPECT_TRUE(inside_strict_halfline(Interval::at_least(0), -1.0, 0.5));
  EXPECT_FALSE(inside_strict_halfline(Interval::at_least(0), -1.0, 0.0));
  EXPECT_FALSE(inside_strict_halfline(Interval::at_least(0), 1.0, 100.0));
  EXPECT_TRUE(inside_strict_halfline(Interval::real_line(), 0.0, 1e-12));
  EXPECT_FALSE(inside_strict_halfline(Interval::real_line(), 0.0, 0.0));
  Support s = strict_support(Interval::less_than(0), -2.0);
  EXPECT_TRUE(s.value.is_plus_inf());
  EXPECT_THROW(strict_support(Interval::empty(), 1.0), Error);
}
