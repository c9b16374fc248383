#pragma once

// Built-in programs and their reference outcomes. The problem files under
// fixtures/ describe the same data.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ecvx/duality.hpp"
#include "ecvx/problem_io.hpp"

namespace ecvx::fixtures {

inline PiecewiseFn poly_on(const Interval& I, Poly p) { return PiecewiseFn::poly_on(I, std::move(p)); }

/// Minimize x - g(x) over x >= 0, where g jumps up to 1 at the origin.
inline DCProblem weak_duality() {
  DCProblem p;
  p.f = poly_on(Interval::at_least(0), Poly{0, 1});
  p.g = PiecewiseFn({{Interval::greater_than(0), Poly{0, 1}}, {Interval::point(0), Poly{1}}});
  p.constraints = {{"h", poly_on(Interval::at_least(0), Poly{0, -1})}};
  return p;
}

/// A constraint that is convex but not e-convex: x on x < 0, 1 at 0.
inline DCProblem econvex_necessity() {
  DCProblem p;
  p.constraints = {{"h", PiecewiseFn({{Interval::less_than(0), Poly{0, 1}}, {Interval::point(0), Poly{1}}})}};
  p.cfg.zero_multiplier = ZeroMultiplier::Domain;
  return p;
}

/// x^4 - x^2 with the constraint -x on x > 1, 2 at 1.
inline DCProblem sets_ab() {
  DCProblem p;
  p.f = PiecewiseFn::poly_on(Interval::real_line(), Poly{0, 0, 0, 0, 1});
  p.g = PiecewiseFn::poly_on(Interval::real_line(), Poly{0, 0, 1});
  p.constraints = {{"h", PiecewiseFn({{Interval::greater_than(1), Poly{0, -1}}, {Interval::point(1), Poly{2}}})}};
  return p;
}

/// x^3 on x >= 0 minus x^2, constraints t x on x > t for t in {-1, -2, -4}.
inline DCProblem cubic() {
  DCProblem p;
  p.f = poly_on(Interval::at_least(0), Poly{0, 0, 0, 1});
  p.g = PiecewiseFn::poly_on(Interval::real_line(), Poly{0, 0, 1});
  for (double t : {-1.0, -2.0, -4.0})
    p.constraints.push_back({"t" + fmt_double(t), poly_on(Interval::greater_than(t), Poly{0, t})});
  return p;
}

struct Row {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct Outcome {
  std::string id;
  DCProblem problem;
  std::vector<Row> rows;
  bool pass() const {
    for (const Row& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

inline Row value_row(const std::string& name, ExtReal expected, ExtReal actual, double tol) {
  return {name, fmt_ext(expected), fmt_ext(actual), near(expected, actual, tol)};
}

inline Row bool_row(const std::string& name, bool expected, bool actual) {
  return {name, expected ? "true" : "false", actual ? "true" : "false", expected == actual};
}

inline Row interval_row(const std::string& name, const Interval& expected, const Interval& actual) {
  return {name, expected.str(), actual.str(), expected == actual};
}

inline std::string witness_str(const Witness& w) {
  return "(" + fmt_double(w.w[0]) + "," + fmt_double(w.w[1]) + "," + fmt_double(w.w[2]) + ";" + fmt_double(w.beta) +
         ")";
}

// The union over multipliers of epi (lambda h)^c and its e'-convex hull.
inline EpiCSet hull_of_K(const DCProblem& p) { return EpiCSet::epi(eprime_hull(build_K(p)), "eco K"); }

}  // namespace detail

inline Outcome run_weak_duality() {
  Outcome o{"ex1_weakduality", weak_duality(), {}};
  const DCProblem& p = o.problem;
  o.rows.push_back(detail::value_row("v(P)", -1.0, v_primal(p), 0.0));
  DualValue dt = v_dual_tilde(p);
  o.rows.push_back(detail::value_row("v(D~L)", 0.0, dt.value, 1e-6));
  bool zero_ok = false, pos_ok = true;
  for (const auto& [l, v] : dt.inner) {
    if (l[0] == 0.0) zero_ok = near(v, 0.0, 1e-6);
    else pos_ok = pos_ok && v.is_minus_inf();
  }
  o.rows.push_back(detail::bool_row("inner(lambda=0) = 0", true, zero_ok));
  o.rows.push_back(detail::bool_row("inner(lambda>0) = -inf", true, pos_ok));
  o.rows.push_back({"classification", gap_str(GapClass::WeakDualityFails), gap_str(classify(v_primal(p), dt, 1e-6)),
                    classify(v_primal(p), dt, 1e-6) == GapClass::WeakDualityFails});
  return o;
}

inline Outcome run_econvex_necessity() {
  Outcome o{"ex_econvex_necessity", econvex_necessity(), {}};
  const DCProblem& p = o.problem;
  Interval A = feasible_set(p);
  o.rows.push_back(detail::interval_row("A", Interval::less_than(0), A));
  EpiCSet dA = EpiCSet::epi(indicator_conjugate(A), "delta_A");
  EpiCSet H = detail::hull_of_K(p);
  SetComparison inc = set_equal(H | dA, dA, p.cfg);
  o.rows.push_back(detail::bool_row("eco K within epi delta_A^c", true, inc.equal));
  SetComparison c = set_equal(H, dA, p.cfg);
  o.rows.push_back(detail::bool_row("eco K = epi delta_A^c", false, c.equal));
  bool shape = false;
  std::string desc = "none";
  if (c.witness) {
    const Witness& w = *c.witness;
    double y = w.w[1], a = w.w[2];
    shape = !w.in_first && w.in_second && y >= 0 && a >= 0 && !(y == 0 && a == 0) && !(a > 0);
    desc = detail::witness_str(w);
  }
  o.rows.push_back({"witness (y*,alpha) in R+xR+ minus 0, not in R+xR++", "yes", desc, shape});
  return o;
}

inline Outcome run_set_B() {
  Outcome o{"ex_setB", econvex_necessity(), {}};
  const DCProblem& p = o.problem;
  Interval B = set_B(p);
  o.rows.push_back(detail::interval_row("B", Interval::at_most(0), B));
  SetComparison c = set_equal(detail::hull_of_K(p), EpiCSet::epi(indicator_conjugate(B), "delta_B"), p.cfg);
  o.rows.push_back(detail::bool_row("eco K = epi delta_B^c", true, c.equal));
  o.rows.push_back(detail::bool_row("ECCQII", true, check_ECCQII(p).holds));
  return o;
}

inline Outcome run_sets_ab() {
  Outcome o{"ex_setsAB", sets_ab(), {}};
  const DCProblem& p = o.problem;
  Interval A = feasible_set(p), B = set_B(p);
  o.rows.push_back(detail::interval_row("A", Interval::greater_than(1), A));
  o.rows.push_back(detail::interval_row("B", Interval::at_least(1), B));
  o.rows.push_back(detail::value_row("inf over A", 0.0, inf_over(p, A), 1e-9));
  o.rows.push_back(detail::value_row("inf over B", 0.0, inf_over(p, B), 1e-9));
  return o;
}

inline Outcome run_eccq_not_necessary() {
  Outcome o{"ex_eccq_not_necessary", cubic(), {}};
  const DCProblem& p = o.problem;
  const double v = -4.0 / 27.0;
  Interval A = feasible_set(p);
  o.rows.push_back(detail::interval_row("A", Interval::at_least(0), A));
  o.rows.push_back(detail::bool_row("ECCQ", false, check_ECCQ(p).holds));
  PiecewiseFn fg = DCFn(p.f, p.g).as_piecewise();
  o.rows.push_back(detail::bool_row("AC(f-g, delta_A)", true, check_AC(fg, PiecewiseFn::indicator(A), p.cfg).holds));
  EpiCSet S = EpiCSet::epi(c_conjugate(fg), "f-g") + EpiCSet::epi(indicator_conjugate(A), "delta_A");
  o.rows.push_back(detail::bool_row("epi(f-g)^c + epi delta_A^c e'-convex", true, is_eprime_convex(S, p.cfg)));
  o.rows.push_back(detail::value_row("v(P)", v, v_primal(p), 1e-9));
  DualValue d = v_dual_standard(p);
  o.rows.push_back(detail::value_row("v(DL)", v, d.value, 1e-9));
  o.rows.push_back({"argmax lambda", "(0,0,0)", d.argmax ? lambda_str(*d.argmax) : "none",
                    d.argmax && *d.argmax == Lambda(3, 0.0)});
  ConvexFn eco = eco_hull(restricted(fg, A)).fn;
  auto branch = [](double x) {
    if (x < 0) return ExtReal::plus_inf();
    return ExtReal(x <= 0.5 ? -x / 4 : x * x * x - x * x);
  };
  double worst = 0.0;
  bool inf_ok = true;
  for (int i = 0; i <= 400; ++i) {
    double x = -1.0 + 4.0 * i / 400;
    ExtReal a = eco(x), b = branch(x);
    if (!b.finite()) inf_ok = inf_ok && !a.finite();
    else worst = std::max(worst, a.finite() ? std::abs(a.value() - b.value()) : 1e300);
  }
  o.rows.push_back({"eco(f-g+delta_A) three-branch max error", "<= 1e-6", fmt_double(worst), inf_ok && worst <= 1e-6});
  return o;
}

inline Outcome run_section5() {
  Outcome o{"ex_section5_ecc", cubic(), {}};
  const DCProblem& p = o.problem;
  Interval A = feasible_set(p);
  SetComparison c = set_equal(f_plus_K(p), EpiCSet::epi(c_conjugate(p.f), "f"), p.cfg);
  o.rows.push_back(detail::bool_row("epi f^c + K = epi f^c", true, c.equal));
  o.rows.push_back(detail::bool_row("K e'-convex", false, check_ECCQII(p).holds));
  o.rows.push_back(detail::bool_row("AC(f, delta_A)", true, check_AC(p.f, PiecewiseFn::indicator(A), p.cfg).holds));
  o.rows.push_back(detail::bool_row("ECC", true, check_ECC(p).holds));
  o.rows.push_back(detail::bool_row("conjugate formula for f + delta_B", true, thm31ii_conjugate_formula(p).holds));
  return o;
}

struct Example {
  std::string id;
  std::function<DCProblem()> problem;
  std::function<Outcome()> run;
};

inline const std::vector<Example>& examples() {
  static const std::vector<Example> all{
      {"ex1_weakduality", weak_duality, run_weak_duality},
      {"ex_econvex_necessity", econvex_necessity, run_econvex_necessity},
      {"ex_setB", econvex_necessity, run_set_B},
      {"ex_setsAB", sets_ab, run_sets_ab},
      {"ex_eccq_not_necessary", cubic, run_eccq_not_necessary},
      {"ex_section5_ecc", cubic, run_section5},
  };
  return all;
}

inline Outcome reproduce(const std::string& id) {
  for (const Example& e : examples())
    if (e.id == id) return e.run();
  throw Error(ErrorCode::UnknownExample, "unknown example \"" + id + "\"");
}

}  // namespace ecvx::fixtures
