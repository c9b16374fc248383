#pragma once

// epsilon-subdifferentials. The c-version at xbar is the classical set in
// x* times the region F(dom f): w belongs to it iff x*-affine minorization
// holds up to epsilon and dom f lies in the strip {x y* < alpha}.

#include <optional>
#include <vector>

#include "ecvx/config.hpp"
#include "ecvx/conj.hpp"
#include "ecvx/episet.hpp"
#include "ecvx/hull.hpp"

namespace ecvx {

/// A function reduced to what the subdifferential needs: its conjugate,
/// its value at points, and the hull of its domain.
struct SubdiffData {
  ConvexFn conj;
  std::function<ExtReal(double)> value;
  Interval dom;

  static SubdiffData of(const PiecewiseFn& f) {
    return {fenchel(f), [f](double x) { return f(x); }, f.domain_hull()};
  }
  /// The e-convex hull of f: same conjugate, hull values, same domain.
  static SubdiffData eco_of(const PiecewiseFn& f) {
    HullResult h = eco_hull(f);
    return {fenchel(f), [fn = h.fn](double x) { return fn(x); }, h.fn.dom()};
  }
};

/// {x* : f*(x*) <= xbar x* - f(xbar) + eps}; empty when f(xbar) is not finite.
inline Interval eps_subdiff(const SubdiffData& d, double xbar, double eps) {
  ExtReal fx = d.value(xbar);
  if (!fx.finite()) return Interval::empty();
  const ConvexFn& fs = d.conj;
  ConvexFn phi([fs, xbar](double s) { return Eval{sub_lower(fs(s), ExtReal(xbar * s)), true}; }, fs.dom(),
               minkowski(fs.slopes(), Interval::point(-xbar)));
  return sublevel(phi, eps - fx.value());
}

inline Interval eps_subdiff(const PiecewiseFn& f, double xbar, double eps) {
  return eps_subdiff(SubdiffData::of(f), xbar, eps);
}

/// Direct test of the defining inequality for a single x*.
inline bool in_eps_subdiff(const SubdiffData& d, double xbar, double eps, double xs) {
  ExtReal fx = d.value(xbar);
  if (!fx.finite()) return false;
  double slack = 1e-12 * std::max(1.0, std::abs(fx.value()));
  return d.conj(xs) <= ExtReal(xbar * xs - fx.value() + eps + slack);
}

struct CSubdiff {
  Interval xstar;
  FeasRegion feas;

  bool empty() const { return xstar.is_empty(); }
  bool contains(const W& w) const { return xstar.contains(w[0]) && feas.contains(w[1], w[2]); }
};

inline CSubdiff c_subdiff(const SubdiffData& d, double xbar, double eps) {
  Interval xs = eps_subdiff(d, xbar, eps);
  return {xs, xs.is_empty() ? FeasRegion(std::vector<Interval>{Interval::real_line()}) : feas_region(d.dom)};
}

inline CSubdiff c_subdiff(const PiecewiseFn& f, double xbar, double eps) {
  return c_subdiff(SubdiffData::of(f), xbar, eps);
}

/// Smallest eps >= 0 with x* in the eps-subdifferential: bracket on the
/// geometric grid {0} u {2^k tol}, then bisect. nullopt past the grid.
inline std::optional<double> minimal_eps(const SubdiffData& d, double x0, double xs, double tol) {
  if (in_eps_subdiff(d, x0, 0.0, xs)) return 0.0;
  double lo = 0.0, hi = tol;
  int k = 0;
  while (!in_eps_subdiff(d, x0, hi, xs)) {
    if (++k > 40) return std::nullopt;
    lo = hi;
    hi *= 2;
  }
  for (int i = 0; i < 80 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (in_eps_subdiff(d, x0, mid, xs) ? hi : lo) = mid;
  }
  return hi;
}

struct Lemma9Result {
  double max_residual = 0.0;
  std::size_t points = 0;
  bool ok = true;
};

/// Rebuilds epi f^c from the union over eps of the eps-c-subdifferentials
/// at x0 lifted to height x0 x* + eps - f(x0), and compares envelopes.
inline Lemma9Result lemma9_reconstruct(const PiecewiseFn& f, double x0, const Config& cfg = {}) {
  SubdiffData d = SubdiffData::of(f);
  ExtReal fx0 = f(x0);
  if (!fx0.finite()) throw Error(ErrorCode::OutOfDomain, "point outside dom f");
  CConjugate fc = c_conjugate(f);
  FeasRegion feas = feas_region(d.dom);
  Lemma9Result r;
  std::vector<double> xs = cfg.axis();
  for (double e : {d.conj.dom().lo(), d.conj.dom().hi()})
    if (std::isfinite(e)) xs.push_back(e);
  for (double y : {-1.0, 0.0, 1.0})
    for (double a : {-1.0, 0.0, 0.5, 2.0})
      for (double x : xs) {
        W w{x, y, a};
        ExtReal truth = fc(w);
        ExtReal rebuilt = ExtReal::plus_inf();
        if (feas.contains(y, a)) {
          std::optional<double> e = minimal_eps(d, x0, x, cfg.hull_tol);
          if (e) rebuilt = ExtReal(x0 * x + *e - fx0.value());
        }
        ++r.points;
        if (!truth.finite() && truth == rebuilt) continue;
        // Values beyond the eps grid are out of reach by construction.
        if (truth.finite() && truth.value() - x0 * x + fx0.value() > cfg.hull_tol * std::ldexp(1.0, 40)) continue;
        double diff = truth.finite() && rebuilt.finite() ? std::abs(truth.value() - rebuilt.value())
                                                         : std::numeric_limits<double>::infinity();
        r.max_residual = std::max(r.max_residual, diff);
      }
  r.ok = r.max_residual <= cfg.hull_tol * 1.01;
  return r;
}


struct Thm31iiiResult {
  bool equal = true;
  std::optional<W> witness;
  bool in_lhs = false;
};

namespace detail {

// Union over eps1 in [0, total] of the sums of the two x*-intervals, by
// maximizing the concave endpoint functions of eps1.
inline Interval split_union(const SubdiffData& a, const SubdiffData& b, double xbar, double total) {
  auto sum_at = [&](double e1) {
    return minkowski(eps_subdiff(a, xbar, e1), eps_subdiff(b, xbar, std::max(total - e1, 0.0)));
  };
  if (total <= 0.0) return sum_at(0.0);
  auto hi_of = [&](double e1) {
    Interval I = sum_at(e1);
    return I.is_empty() ? ExtReal::minus_inf() : ExtReal(I.hi());
  };
  auto lo_of = [&](double e1) {
    Interval I = sum_at(e1);
    return I.is_empty() ? ExtReal::minus_inf() : ExtReal(-I.lo());
  };
  Interval E = Interval::closed(0.0, total);
  Extremum h = sup_concave(hi_of, E), l = sup_concave(lo_of, E);
  if (!h.value.finite() && h.value.is_minus_inf()) return Interval::empty();
  return {-l.value.value(), true, h.value.value(), true};
}

}  // namespace detail

/// Compares the eps-c-subdifferential of f + indicator(B) at xbar with the
/// union over the given multiplier functions lh of the split sums
/// d_{eps1} f(xbar) + d_{eps2} (eco lh)(xbar), eps1 + eps2 = eps + (eco lh)(xbar).
inline Thm31iiiResult thm31iii_check(const PiecewiseFn& f, const std::vector<PiecewiseFn>& lambda_h,
                                     const Interval& B, double xbar, double eps, const Config& cfg = {}) {
  CSubdiff lhs = c_subdiff(restricted(f, B), xbar, eps);
  SubdiffData fd = SubdiffData::of(f);
  std::vector<CSubdiff> rhs;
  for (const PiecewiseFn& lh : lambda_h) {
    SubdiffData hd = SubdiffData::eco_of(lh);
    ExtReal hx = hd.value(xbar);
    if (!hx.finite()) continue;
    double total = eps + hx.value();
    if (total < -1e-12) continue;
    Interval xs = detail::split_union(fd, hd, xbar, std::max(total, 0.0));
    if (xs.is_empty()) continue;
    rhs.push_back({xs, feas_region(fd.dom) + feas_region(hd.dom)});
  }
  std::vector<double> xs = cfg.axis();
  auto add_ends = [&](const Interval& I) {
    for (double e : {I.lo(), I.hi()})
      if (std::isfinite(e))
        for (int dir : {-1, +1}) xs.push_back(e + dir * 1e-7 * std::max(1.0, std::abs(e)));
  };
  // Endpoints from the two sides come from different numeric routes, so
  // points within rounding distance of an endpoint are not compared.
  auto near_end = [&](double x) {
    auto close = [&](const Interval& I) {
      return (I.lo_finite() && std::abs(x - I.lo()) <= 1e-9 * std::max(1.0, std::abs(x))) ||
             (I.hi_finite() && std::abs(x - I.hi()) <= 1e-9 * std::max(1.0, std::abs(x)));
    };
    if (close(lhs.xstar)) return true;
    for (const CSubdiff& r : rhs)
      if (close(r.xstar)) return true;
    return false;
  };
  add_ends(lhs.xstar);
  for (const CSubdiff& r : rhs) add_ends(r.xstar);
  xs = detail::merged(xs);
  std::vector<const FeasRegion*> regions{&lhs.feas};
  for (const CSubdiff& r : rhs) regions.push_back(&r.feas);
  const std::vector<double> axis = cfg.axis();
  for (double y : axis)
    for (double a : detail::alpha_samples(regions, y, axis))
      for (double x : xs) {
        if (near_end(x)) continue;
        W w{x, y, a};
        bool in_l = lhs.contains(w);
        bool in_r = false;
        for (const CSubdiff& r : rhs) in_r = in_r || r.contains(w);
        if (in_l != in_r) return {false, w, in_l};
      }
  return {};
}

}  // namespace ecvx
