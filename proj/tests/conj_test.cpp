#include <gtest/gtest.h>

#include "properties.hpp"

using namespace ecvx;

TEST(Fenchel, ClosedForms) {
  ConvexFn cube = fenchel(fixtures::cubic().f);
  ConvexFn quart = fenchel(fixtures::sets_ab().f);
  for (double s : {-3.0, -0.5, 0.0, 0.3, 1.0, 2.5, 7.0}) {
    double c = s <= 0 ? 0.0 : 2 * std::pow(s / 3, 1.5);
    EXPECT_NEAR(cube(s).value(), c, 1e-9) << s;
    EXPECT_NEAR(quart(s).value(), 3 * std::pow(std::abs(s) / 4, 4.0 / 3), 1e-9) << s;
  }
  ConvexFn lin = fenchel(fixtures::weak_duality().f);
  EXPECT_EQ(lin(1.0), ExtReal(0.0));
  EXPECT_EQ(lin(-5.0), ExtReal(0.0));
  EXPECT_TRUE(lin(1.0 + 1e-9).is_plus_inf());
  EXPECT_EQ(lin.dom(), Interval::at_most(1));
}

TEST(Fenchel, AgreesWithGridOracle) {
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i) {
    PiecewiseFn f = oracle::random_convex(rng, i % 2 == 0);
    props::Sampled s(f);
    ConvexFn k = fenchel(f);
    for (double x : {-2.5, -1.0, 0.0, 0.75, 2.0})
      EXPECT_TRUE(props::values_match(k(x), s.conjugate(x), 1e-4)) << "fixture " << i << " at " << x;
  }
}

TEST(CConjugate, MatchesRawDefinition) {
  unsigned seed = 1;
  for (const props::Named& f : props::fixture_functions()) {
    props::Tally t = props::c_conjugate_vs_raw(f, 200, seed++);
    EXPECT_TRUE(t.ok()) << t.str();
  }
}

TEST(CConjugate, WeakDualityTables) {
  DCProblem p = fixtures::weak_duality();
  CConjugate fc = c_conjugate(p.f), gc = c_conjugate(p.g);
  for (const CConjugate* c : {&fc, &gc}) {
    EXPECT_EQ((*c)(1.0, 0.0, 0.5), ExtReal(0.0));
    EXPECT_EQ((*c)(-3.0, -2.0, 1e-9), ExtReal(0.0));
    EXPECT_TRUE((*c)(1.0, 0.0, 0.0).is_plus_inf());
    EXPECT_TRUE((*c)(1.5, -1.0, 1.0).is_plus_inf());
    EXPECT_TRUE((*c)(0.0, 0.25, 1.0).is_plus_inf());
  }
  for (double lam : {0.5, 2.0}) {
    CConjugate hc = c_conjugate(combine({{lam, p.constraints[0].h}}));
    EXPECT_EQ(hc(-lam, -1.0, 0.25), ExtReal(0.0));
    EXPECT_TRUE(hc(-lam + 1e-6, -1.0, 0.25).is_plus_inf());
    CConjugate s = c_infconv(fc, hc);
    EXPECT_EQ(s(1.0 - lam, 0.0, 0.1), ExtReal(0.0));
    EXPECT_TRUE(s(1.0 - lam + 1e-6, 0.0, 0.1).is_plus_inf());
    EXPECT_TRUE(s(-10.0, 0.0, 0.0).is_plus_inf());
  }
}

TEST(CInfConv, MatchesRawSplit) {
  std::vector<props::Named> fs = props::fixture_functions();
  auto by = [&](const std::string& n) {
    for (const props::Named& f : fs)
      if (f.name == n) return f;
    throw std::runtime_error(n);
  };
  std::vector<std::pair<std::string, std::string>> pairs{
      {"weak_duality.f", "weak_duality.h"}, {"cubic.f", "cubic.t-2"}, {"sets_ab.g", "sets_ab.h"}};
  unsigned seed = 40;
  for (const auto& [a, b] : pairs) {
    props::Tally t = props::c_infconv_vs_raw(by(a), by(b), 150, seed++);
    EXPECT_TRUE(t.ok()) << t.str();
  }
}

TEST(CConjugate, EAffineMinorants) {
  PiecewiseFn f = fixtures::cubic().f;
  // 0 x - 0 is below x^3 on x >= 0, and dom f lies in {-x < 1}
  EXPECT_TRUE(eaffine_minorant(f, 0.0, 0.0, -1.0, 1.0));
  EXPECT_FALSE(eaffine_minorant(f, 0.0, 0.0, 1.0, 5.0));
  EXPECT_FALSE(eaffine_minorant(f, 3.0, 1.0, -1.0, 1.0));
  EXPECT_TRUE(eaffine_minorant(f, 3.0, 2.0, -1.0, 1.0));
}
