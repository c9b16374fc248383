#pragma once

// Hulls of one-variable functions. The closed convex hull is the Fenchel
// biconjugate; the e-convex hull agrees with it inside the domain and keeps
// only those endpoints that belong to dom f.

#include <string>

#include "ecvx/config.hpp"
#include "ecvx/conj.hpp"

namespace ecvx {

struct HullResult {
  ConvexFn fn;
  std::string provenance;  // "closed_form" or "grid"
};

inline HullResult convex_lsc_hull(const PiecewiseFn& f) {
  return {conjugate(fenchel(f)), "closed_form"};
}

/// Endpoint rule: a finite endpoint of the hull domain is kept iff it lies
/// in dom f.
inline Interval eco_domain(const PiecewiseFn& f) {
  Interval d = f.domain_hull();
  return {d.lo(), d.lo_finite() && f.in_domain(d.lo()), d.hi(), d.hi_finite() && f.in_domain(d.hi())};
}

inline HullResult eco_hull(const PiecewiseFn& f) {
  HullResult cl = convex_lsc_hull(f);
  return {restrict_to(cl.fn, eco_domain(f)), cl.provenance};
}

inline HullResult eco_hull(const DCFn& f) { return eco_hull(f.as_piecewise()); }

/// Sample points of an interval: window grid, piece knots, and endpoints.
inline std::vector<double> sample_points(const PiecewiseFn& f, const Interval& I, int nodes = 257,
                                         const GridOptions& win = {}) {
  std::vector<double> xs;
  if (I.is_empty()) return xs;
  double a = std::max(I.lo(), win.window_lo), b = std::min(I.hi(), win.window_hi);
  if (a <= b) {
    for (int i = 0; i < nodes; ++i) {
      double x = a + (b - a) * i / std::max(nodes - 1, 1);
      if (I.contains(x)) xs.push_back(x);
    }
  }
  for (const Piece& p : f.pieces())
    for (double e : {p.interval.lo(), p.interval.hi()})
      if (std::isfinite(e))
        for (double x : {e, detail::nudge(e, -1), detail::nudge(e, +1)})
          if (I.contains(x)) xs.push_back(x);
  if (I.lo_finite() && I.lo_closed()) xs.push_back(I.lo());
  if (I.hi_finite() && I.hi_closed()) xs.push_back(I.hi());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline bool is_econvex(const PiecewiseFn& f, const Config& cfg = {}) {
  HullResult h = eco_hull(f);
  if (!f.domain_is_interval() || !(h.fn.dom() == f.domain_hull())) return false;
  for (double x : sample_points(f, f.domain_hull(), 257, cfg.x_grid)) {
    ExtReal fx = f(x), hx = h.fn(x);
    double tol = cfg.hull_tol * std::max(1.0, std::abs(fx.value()));
    if (!near(fx, hx, tol)) return false;
  }
  return true;
}

}  // namespace ecvx
