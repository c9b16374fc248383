#pragma once

// Optimal values of the primal and of the three Lagrange duals, and the
// regularity conditions relating them.

#include <optional>
#include <string>
#include <vector>

#include "ecvx/episet.hpp"
#include "ecvx/parallel.hpp"
#include "ecvx/problem.hpp"
#include "ecvx/subdiff.hpp"

namespace ecvx {

inline ExtReal v_primal(const DCProblem& p) {
  Interval A = feasible_set(p);
  if (A.is_empty()) return ExtReal::plus_inf();
  return infimum_over(DCFn(p.f, p.g), A).value;
}

/// inf_x of the objective over a different set, e.g. B.
inline ExtReal inf_over(const DCProblem& p, const Interval& S) {
  if (S.is_empty()) return ExtReal::plus_inf();
  return infimum_over(DCFn(p.f, p.g), S).value;
}

struct DualValue {
  ExtReal value = ExtReal::minus_inf();
  std::optional<Lambda> argmax;
  std::vector<std::pair<Lambda, ExtReal>> inner;  // per multiplier
};

namespace detail {

// Keeps the first multiplier reaching the maximum (grid order is fixed).
inline void offer(DualValue& d, const Lambda& l, ExtReal v) {
  d.inner.push_back({l, v});
  if (!d.argmax || d.value < v) {
    d.value = v;
    d.argmax = l;
  }
}

}  // namespace detail

/// sup over the grid of inf_x { f - g + lambda h }.
inline DualValue v_dual_standard(const DCProblem& p) {
  DualValue d;
  for (const Lambda& l : lambda_grid(p)) {
    PiecewiseFn fl = p.f;
    try {
      fl = sum(p.f, lambda_h(p, l));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ImproperResult) throw;
      continue;  // empty effective domain: the term is skipped
    }
    detail::offer(d, l, infimum_over(DCFn(fl, p.g), Interval::real_line()).value);
  }
  return d;
}

/// inf over W of G - Phi for product-form G, Phi, taken over dom G with
/// finite - (+inf) = -inf.
inline ExtReal inner(const CConjugate& G, const CConjugate& Phi, const Config& cfg) {
  if (G.scalar.dom().is_empty()) return ExtReal::plus_inf();
  if (!G.feas.subset_of(Phi.feas)) return ExtReal::minus_inf();
  if (!Phi.scalar.dom().contains(G.scalar.dom())) return ExtReal::minus_inf();
  GridOptions grid = cfg.x_grid;
  grid.nodes = cfg.inner_nodes;
  Extremum e = inf_global([&](double s) { return sub_lower(G.scalar(s), Phi.scalar(s)); }, G.scalar.dom(), grid);
  return e.value;
}

inline DualValue v_dual_bar(const DCProblem& p) {
  CConjugate G = c_conjugate(p.g);
  const std::vector<Lambda> grid = lambda_grid(p);
  auto vals = parallel_map<std::optional<ExtReal>>(grid.size(), [&](std::size_t i) -> std::optional<ExtReal> {
    PiecewiseFn fl = p.f;
    try {
      fl = sum(p.f, lambda_h(p, grid[i]));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ImproperResult) throw;
      return std::nullopt;
    }
    return inner(G, c_conjugate(fl), p.cfg);
  });
  DualValue d;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (vals[i]) detail::offer(d, grid[i], *vals[i]);
  return d;
}

/// f^c (+) phi^c for convex f, phi. When the relative interiors of the
/// domains meet, the scalar infimal convolution is the exact conjugate of
/// f + phi with attained infimum, so no numeric convolution is needed.
inline CConjugate c_infconv_convex(const PiecewiseFn& f, const PiecewiseFn& phi) {
  auto ri = [](const Interval& I) { return I.is_point() ? I : I.interior(); };
  CConjugate a = c_conjugate(f), b = c_conjugate(phi);
  if (intersect(ri(f.domain_hull()), ri(phi.domain_hull())).is_empty()) return c_infconv(a, b);
  return {fenchel(sum(f, phi)), a.feas + b.feas};
}

inline DualValue v_dual_tilde(const DCProblem& p) {
  CConjugate G = c_conjugate(p.g);
  const std::vector<Lambda> grid = lambda_grid(p);
  auto vals = parallel_map<ExtReal>(
      grid.size(), [&](std::size_t i) { return inner(G, c_infconv_convex(p.f, lambda_h(p, grid[i])), p.cfg); });
  DualValue d;
  for (std::size_t i = 0; i < grid.size(); ++i) detail::offer(d, grid[i], vals[i]);
  return d;
}

/// K: the union over all multipliers of epi (lambda h)^c. The zero
/// multiplier gives one block; every other support pattern is a union over
/// positive multiples of a direction, held as one block.
inline EpiCSet build_K(const DCProblem& p) {
  const std::size_t n = p.constraints.size();
  std::vector<EpiBlock> blocks;
  blocks.push_back({c_conjugate(lambda_h(p, Lambda(n, 0.0))), false, "lambda=0"});
  for (const Lambda& d : lambda_directions(p)) {
    PiecewiseFn phi = lambda_h(p, d);
    CConjugate c{perspective_inf(phi), feas_region(phi.domain_hull())};
    blocks.push_back({c, true, "ray" + lambda_str(d)});
  }
  return EpiCSet(std::move(blocks));
}

namespace detail {

inline bool ri_meet(const Interval& a, const Interval& b) {
  auto ri = [](const Interval& I) { return I.is_point() ? I : I.interior(); };
  return !intersect(ri(a), ri(b)).is_empty();
}

}  // namespace detail

/// epi f^c + K. Each ray block is a union over r > 0 of epi (f + r phi)^c
/// when the relative interiors of the domains meet; otherwise the generic
/// convolution is kept.
inline EpiCSet f_plus_K(const DCProblem& p) {
  const std::size_t n = p.constraints.size();
  CConjugate F = c_conjugate(p.f);
  std::vector<EpiBlock> blocks;
  blocks.push_back({c_infconv_convex(p.f, lambda_h(p, Lambda(n, 0.0))), true, "f+lambda=0"});
  for (const Lambda& d : lambda_directions(p)) {
    PiecewiseFn phi = lambda_h(p, d);
    CConjugate ray{perspective_inf(phi), feas_region(phi.domain_hull())};
    CConjugate generic = c_infconv(F, ray);
    std::string label = "f+ray" + lambda_str(d);
    if (!detail::ri_meet(p.f.domain_hull(), phi.domain_hull()) || !is_convex(p.f) || !is_convex(phi)) {
      blocks.push_back({generic, true, label});
      continue;
    }
    const PiecewiseFn f = p.f;
    auto fn = [f, phi](double x) {
      Extremum e = inf_convex([&](double r) { return detail::fenchel_value(sum(f, scaled(r, phi)), x).value; },
                              Interval::greater_than(0.0));
      return Eval{e.value, e.attained};
    };
    ConvexFn scalar(fn, generic.scalar.dom(), generic.scalar.slopes());
    blocks.push_back({{scalar.with_dual(conjugate(generic.scalar)), generic.feas}, true, label});
  }
  return EpiCSet(std::move(blocks));
}

inline CConjugate indicator_conjugate(const Interval& D) { return c_conjugate(PiecewiseFn::indicator(D)); }


struct ConditionResult {
  bool holds = false;
  std::optional<Witness> witness;
  std::string note;
};

namespace detail {

inline std::vector<double> compare_points(const std::vector<const PiecewiseFn*>& fs, const Config& cfg) {
  std::vector<double> xs;
  for (const PiecewiseFn* f : fs)
    for (double x : sample_points(*f, Interval::real_line(), 257, cfg.x_grid)) xs.push_back(x);
  return merged(xs);
}

}  // namespace detail

/// (AC): eco(f1 + f2) equals the supremum of sums of e-affine minorants.
inline ConditionResult check_AC(const PiecewiseFn& f1, const PiecewiseFn& f2, const Config& cfg = {}) {
  PiecewiseFn s = sum(f1, f2);
  ConvexFn lhs = eco_hull(s).fn;
  ConvexFn rhs = sup_etilde(f1, f2);
  if (!(lhs.dom() == rhs.dom()))
    return {false, std::nullopt, "domains differ: " + lhs.dom().str() + " vs " + rhs.dom().str()};
  for (double x : detail::compare_points({&f1, &f2}, cfg)) {
    ExtReal a = lhs(x), b = rhs(x);
    if (!near(a, b, cfg.hull_tol * std::max(1.0, a.finite() ? std::abs(a.value()) : 1.0)))
      return {false, std::nullopt, "values differ at x=" + ExtReal(x).str() + ": " + a.str() + " vs " + b.str()};
  }
  return {true, std::nullopt, ""};
}

/// (ECCQ): epi delta_A^c equals K.
inline ConditionResult check_ECCQ(const DCProblem& p) {
  Interval A = feasible_set(p);
  if (A.is_empty()) return {false, std::nullopt, "empty feasible set"};
  SetComparison c = set_equal(EpiCSet::epi(indicator_conjugate(A), "delta_A"), build_K(p), p.cfg);
  return {c.equal, c.witness, ""};
}

/// (ECCQII): K is e'-convex.
inline ConditionResult check_ECCQII(const DCProblem& p) {
  return {is_eprime_convex(build_K(p), p.cfg), std::nullopt, ""};
}

/// (ECC): epi f^c + K is e'-convex.
inline ConditionResult check_ECC(const DCProblem& p) {
  return {is_eprime_convex(f_plus_K(p), p.cfg), std::nullopt, ""};
}

/// (f + delta_B)^c = min over multipliers and splits of f^c (+) (lambda h)^c
/// on the W grid, minima attained.
inline ConditionResult thm31ii_conjugate_formula(const DCProblem& p) {
  Interval B = set_B(p);
  EpiCSet lhs = EpiCSet::epi(c_conjugate(restricted(p.f, B)), "f+delta_B");
  SetComparison c = set_equal(lhs, f_plus_K(p), p.cfg);
  return {c.equal, c.witness, ""};
}

/// The three equivalent forms of the regularity condition, evaluated
/// independently; meaningful when (AC) and e'-convexity of K both hold.
struct CrossValidation {
  bool applicable = false;
  bool ecc = false, formula = false, subdiff = false;
  bool agree() const { return ecc == formula && formula == subdiff; }
};

inline CrossValidation thm31_cross_validate(const DCProblem& p, int points = 5, double eps = 0.25) {
  CrossValidation r;
  Interval B = set_B(p);
  if (B.is_empty()) return r;
  r.applicable = check_AC(p.f, PiecewiseFn::indicator(B), p.cfg).holds && check_ECCQII(p).holds;
  r.ecc = check_ECC(p).holds;
  r.formula = thm31ii_conjugate_formula(p).holds;
  std::vector<PiecewiseFn> lhs;
  for (const Lambda& l : lambda_grid(p)) lhs.push_back(lambda_h(p, l));
  std::vector<double> xs = sample_points(p.f, intersect(B, p.f.domain_hull()), 257, p.cfg.x_grid);
  r.subdiff = true;
  if (xs.empty()) return r;
  for (int i = 0; i < points; ++i) {
    double x = xs[(xs.size() - 1) * i / std::max(points - 1, 1)];
    r.subdiff = r.subdiff && thm31iii_check(p.f, lhs, B, x, eps, p.cfg).equal;
  }
  return r;
}

/// inf_x {f - g} = inf_W {g^c - f^c} for e-convex g.
struct TolandResult {
  ExtReal primal;
  ExtReal dual;
  bool agree = false;
};

inline TolandResult toland_check(const PiecewiseFn& f, const PiecewiseFn& g, const Config& cfg = {}, double tol = 1e-4) {
  TolandResult r;
  r.primal = infimum_over(DCFn(f, g), Interval::real_line()).value;
  r.dual = inner(c_conjugate(g), c_conjugate(f), cfg);
  r.agree = near(r.primal, r.dual, tol * std::max(1.0, r.primal.finite() ? std::abs(r.primal.value()) : 1.0));
  return r;
}

enum class GapClass { WeakDualityHolds, ZeroGap, StrongDuality, WeakDualityFails };

inline std::string gap_str(GapClass g) {
  switch (g) {
    case GapClass::WeakDualityHolds:
      return "weak-duality-holds";
    case GapClass::ZeroGap:
      return "zero-gap";
    case GapClass::StrongDuality:
      return "strong-duality";
    default:
      return "weak-duality-fails";
  }
}

/// Classification of the pair (P) - (new dual).
inline GapClass classify(ExtReal vP, const DualValue& d, double tol) {
  double scale = std::max(1.0, vP.finite() ? std::abs(vP.value()) : 1.0);
  if (near(vP, d.value, tol * scale)) return d.argmax ? GapClass::StrongDuality : GapClass::ZeroGap;
  if (d.value > vP) return GapClass::WeakDualityFails;
  return GapClass::WeakDualityHolds;
}

struct DualityReport {
  ExtReal vP, vDL, vDLbar, vDLtilde;
  std::optional<Lambda> lDL, lDLbar, lDLtilde;
  Interval A, B;
  ExtReal inf_B;
  bool AC = false, ECCQ = false, ECCQII = false, ECC = false, g_econvex = false, vP_eq_inf_B = false;
  GapClass gap = GapClass::WeakDualityHolds;
  bool hypotheses = false;       // all hypotheses of the strong-duality theorem
  bool strong_asserted = false;  // the theorem's conclusion, checked when hypotheses hold
};

inline DualityReport tfl_strong_duality(const DCProblem& p, bool with_conditions = true) {
  DualityReport r;
  const double tol = p.cfg.hull_tol;
  r.A = feasible_set(p);
  r.B = set_B(p);
  r.vP = v_primal(p);
  DualValue ds = v_dual_standard(p), db = v_dual_bar(p), dt = v_dual_tilde(p);
  r.vDL = ds.value;
  r.vDLbar = db.value;
  r.vDLtilde = dt.value;
  r.lDL = ds.argmax;
  r.lDLbar = db.argmax;
  r.lDLtilde = dt.argmax;
  r.inf_B = inf_over(p, r.B);
  r.vP_eq_inf_B = near(r.vP, r.inf_B, tol * std::max(1.0, r.vP.finite() ? std::abs(r.vP.value()) : 1.0));
  r.gap = classify(r.vP, dt, tol);
  r.g_econvex = is_econvex(p.g, p.cfg);
  if (with_conditions && !r.B.is_empty()) {
    r.AC = check_AC(p.f, PiecewiseFn::indicator(r.B), p.cfg).holds;
    r.ECCQ = check_ECCQ(p).holds;
    r.ECCQII = check_ECCQII(p).holds;
    r.ECC = check_ECC(p).holds;
    r.hypotheses = r.AC && r.g_econvex && r.ECCQII && r.ECC && r.vP_eq_inf_B;
    r.strong_asserted = r.hypotheses && r.gap == GapClass::StrongDuality;
  }
  return r;
}

}  // namespace ecvx
