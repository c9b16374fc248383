#pragma once

// DC programs min f - g subject to finitely many constraints h_t <= 0, the
// multiplier grid, and the feasible sets A and B.

#include <string>
#include <utility>
#include <vector>

#include "ecvx/config.hpp"
#include "ecvx/hull.hpp"

namespace ecvx {

struct Constraint {
  std::string id;
  PiecewiseFn h;
};

struct DCProblem {
  PiecewiseFn f;
  PiecewiseFn g;
  std::vector<Constraint> constraints;
  Config cfg;
  std::vector<std::string> warnings;

  /// Load-time checks: convexity of the data and dom f within dom g.
  void validate() {
    warnings.clear();
    auto need_convex = [](const PiecewiseFn& fn, const std::string& name) {
      if (!is_convex(fn)) throw Error(ErrorCode::InvalidProblem, name + " is not convex");
    };
    need_convex(f, "f");
    need_convex(g, "g");
    for (const Constraint& c : constraints) need_convex(c.h, "constraint " + c.id);
    if (!DCFn(f, g).proper()) warnings.push_back("dom f is not contained in dom g");
  }
};

/// Multiplier with finite support, one entry per constraint.
using Lambda = std::vector<double>;

inline std::string lambda_str(const Lambda& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + ExtReal(l[i]).str();
  return s + ")";
}

/// lambda h = sum_t lambda_t h_t. Zero entries follow the configured
/// convention: dropped, or kept as the indicator of dom h_t.
inline PiecewiseFn lambda_h(const DCProblem& p, const Lambda& l) {
  std::vector<std::pair<double, PiecewiseFn>> terms;
  std::optional<PiecewiseFn> doms;
  for (std::size_t t = 0; t < p.constraints.size(); ++t) {
    const PiecewiseFn& h = p.constraints[t].h;
    if (l[t] != 0.0) {
      terms.push_back({l[t], h});
    } else if (p.cfg.zero_multiplier == ZeroMultiplier::Domain) {
      for (const Interval& D : h.domain()) {
        PiecewiseFn ind = PiecewiseFn::indicator(D);
        doms = doms ? sum(*doms, ind) : ind;
      }
    }
  }
  PiecewiseFn lh = combine(terms);
  return doms ? sum(lh, *doms) : lh;
}

/// Support patterns of at most max_active constraints, times the positive
/// weights of the grid, plus the zero multiplier (listed first).
inline std::vector<Lambda> lambda_grid(const DCProblem& p) {
  const std::size_t n = p.constraints.size();
  std::vector<double> pos;
  for (double w : p.cfg.lambda_weights)
    if (w > 0) pos.push_back(w);
  std::vector<Lambda> out{Lambda(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (double a : pos) {
      Lambda l(n, 0.0);
      l[i] = a;
      out.push_back(l);
    }
  if (p.cfg.max_active >= 2)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (double a : pos)
          for (double b : pos) {
            Lambda l(n, 0.0);
            l[i] = a;
            l[j] = b;
            out.push_back(l);
          }
  return out;
}

/// Directions of the multiplier cone used for the continuous unions: unit
/// vectors and, for pairs, (1, r) for every ratio r of two grid weights.
inline std::vector<Lambda> lambda_directions(const DCProblem& p) {
  const std::size_t n = p.constraints.size();
  std::vector<double> ratios;
  for (double a : p.cfg.lambda_weights)
    for (double b : p.cfg.lambda_weights)
      if (a > 0 && b > 0) ratios.push_back(b / a);
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
  std::vector<Lambda> out;
  for (std::size_t i = 0; i < n; ++i) {
    Lambda l(n, 0.0);
    l[i] = 1.0;
    out.push_back(l);
  }
  if (p.cfg.max_active >= 2)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (double r : ratios) {
          Lambda l(n, 0.0);
          l[i] = 1.0;
          l[j] = r;
          out.push_back(l);
        }
  return out;
}

namespace detail {

// {x : p(x) <= 0} on the piece interval, as maximal subintervals.
inline std::vector<Interval> piece_sublevel(const Piece& pc) {
  const Interval& I = pc.interval;
  std::vector<Interval> out;
  if (I.is_point()) {
    if (pc.poly(I.lo()) <= 0) out.push_back(I);
    return out;
  }
  double B = pc.poly.degree() > 0 ? cauchy_bound(pc.poly) : 1.0;
  double lo = I.lo_finite() ? I.lo() : -B - 1.0, hi = I.hi_finite() ? I.hi() : B + 1.0;
  std::vector<double> cuts{I.lo()};
  for (double r : real_roots(pc.poly, std::min(lo, hi), std::max(lo, hi)))
    if (I.contains(r)) cuts.push_back(r);
  cuts.push_back(I.hi());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    double m = std::isfinite(a) && std::isfinite(b) ? 0.5 * (a + b) : std::isfinite(a) ? a + 1.0 : std::isfinite(b) ? b - 1.0 : 0.0;
    if (a < b && pc.poly(m) <= 0) {
      bool ac = i == 0 ? I.lo_closed() : true;
      bool bc = i + 2 == cuts.size() ? I.hi_closed() : true;
      out.push_back(Interval(a, ac, b, bc));
    }
  }
  // Isolated roots where the polynomial touches zero from above.
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i) out.push_back(Interval::point(cuts[i]));
  return out;
}

inline Interval merge_to_interval(std::vector<Interval> parts) {
  Interval h;
  for (const Interval& I : parts) h = hull(h, I);
  return h;
}

}  // namespace detail

/// A = {x : h_t(x) <= 0 for all t}; sublevel sets of convex functions are
/// intervals, so A is one.
inline Interval feasible_set(const DCProblem& p) {
  Interval A = Interval::real_line();
  for (const Constraint& c : p.constraints) {
    std::vector<Interval> parts;
    for (const Piece& pc : c.h.pieces())
      for (const Interval& I : detail::piece_sublevel(pc)) parts.push_back(I);
    A = intersect(A, detail::merge_to_interval(parts));
  }
  return A;
}

/// {x : (eco phi)(x) <= 0}, with boundaries snapped to exact roots and knots.
inline Interval eco_sublevel_zero(const PiecewiseFn& phi) {
  HullResult h = eco_hull(phi);
  Interval S = sublevel(h.fn, 0.0);
  if (S.is_empty()) return S;
  std::vector<double> exact;
  for (const Piece& pc : phi.pieces()) {
    for (double e : {pc.interval.lo(), pc.interval.hi()})
      if (std::isfinite(e)) exact.push_back(e);
    if (pc.poly.degree() > 0)
      for (double r : real_roots(pc.poly)) exact.push_back(r);
  }
  auto snap = [&](double v) {
    for (double e : exact)
      if (std::abs(e - v) <= 1e-9 * std::max(1.0, std::abs(e))) return e;
    return v;
  };
  double lo = S.lo_finite() ? snap(S.lo()) : S.lo();
  double hi = S.hi_finite() ? snap(S.hi()) : S.hi();
  bool lc = S.lo_closed(), hc = S.hi_closed();
  if (S.lo_finite() && lo != S.lo()) lc = h.fn.dom().contains(lo) && h.fn(lo) <= ExtReal(1e-12);
  if (S.hi_finite() && hi != S.hi()) hc = h.fn.dom().contains(hi) && h.fn(hi) <= ExtReal(1e-12);
  return {lo, lc, hi, hc};
}

/// B = intersection over multipliers of {eco(lambda h) <= 0}. The sublevel
/// set at 0 is invariant under positive scaling, so directions suffice.
inline Interval set_B(const DCProblem& p) {
  Interval B = eco_sublevel_zero(lambda_h(p, Lambda(p.constraints.size(), 0.0)));
  for (const Lambda& d : lambda_directions(p)) B = intersect(B, eco_sublevel_zero(lambda_h(p, d)));
  return B;
}

}  // namespace ecvx
