#pragma once

// One-dimensional suprema/infima over intervals: golden-section search for
// concave (resp. convex) objectives and grid-plus-refinement for general
// ones. Open endpoints are approached as limits and never reported attained.

#include <cmath>
#include <algorithm>
#include <functional>
#include <vector>

#include "ecvx/extreal.hpp"
#include "ecvx/poly.hpp"

namespace ecvx {

using ScalarMap = std::function<ExtReal(double)>;

namespace detail {

inline double nudge(double e, int dir) {
  double d = 1e-11 * std::max(1.0, std::abs(e));
  return e + dir * d;
}

inline double finite_or(double v, double fallback) { return std::isfinite(v) ? v : fallback; }

// Golden-section maximization of a unimodal function on [a, b].
inline Extremum golden_max(const ScalarMap& phi, double a, double b) {
  constexpr double kR = 0.6180339887498949;
  double c = b - kR * (b - a), d = a + kR * (b - a);
  ExtReal fc = phi(c), fd = phi(d);
  for (int i = 0; i < 300; ++i) {
    if (b - a <= 1e-14 * std::max(1.0, std::max(std::abs(a), std::abs(b)))) break;
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + kR * (b - a);
      fd = phi(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - kR * (b - a);
      fc = phi(c);
    }
  }
  return fc < fd ? Extremum{fd, d, true} : Extremum{fc, c, true};
}

// Walks away from `start` in direction dir (+1/-1) while phi increases.
// Returns the bracket end, or sets `unbounded` when phi keeps growing.
inline double expand(const ScalarMap& phi, double start, int dir, bool& unbounded, ExtReal& far_value) {
  double step = 1.0;
  double prev = start;
  ExtReal fprev = phi(start);
  unbounded = false;
  far_value = ExtReal::minus_inf();
  for (int k = 0; k < 62; ++k) {
    double x = start + dir * step;
    ExtReal fx = phi(x);
    if (!(fprev < fx)) return x;
    if (fx.is_plus_inf()) {
      unbounded = true;
      far_value = fx;
      return x;
    }
    // Growth per unit step has died out: approaching a finite limit.
    if (step > 1e6 && (fx.value() - fprev.value()) / (step / 2) < 1e-12) {
      far_value = fx;
      return x;
    }
    prev = x;
    fprev = fx;
    step *= 2;
  }
  unbounded = true;
  far_value = fprev;
  (void)prev;
  return start + dir * step;
}

}  // namespace detail

/// sup of a concave map over I (values -inf allowed only off I).
inline Extremum sup_concave(const ScalarMap& phi, const Interval& I) {
  Extremum best{ExtReal::minus_inf(), 0.0, false};
  if (I.is_empty()) return best;
  // Values that agree up to rounding are treated as ties won by attainment.
  auto offer = [&](const Extremum& e) {
    bool tie = best.value.finite() && e.value.finite() &&
               std::abs(e.value.value() - best.value.value()) <= 1e-12 * std::max(1.0, std::abs(best.value.value()));
    if (tie) {
      if (e.attained && !best.attained) best = e;
      return;
    }
    if (best.value < e.value) best = e;
  };
  if (I.lo_closed()) offer({phi(I.lo()), I.lo(), true});
  if (I.hi_closed()) offer({phi(I.hi()), I.hi(), true});
  if (I.is_point()) return best;

  double a = I.lo(), b = I.hi();
  double mid = I.bounded() ? 0.5 * (a + b) : I.lo_finite() ? a + 1.0 : I.hi_finite() ? b - 1.0 : 0.0;
  if (!I.lo_finite()) {
    bool unb = false;
    ExtReal far;
    a = detail::expand(phi, mid, -1, unb, far);
    if (unb) return {far.is_plus_inf() ? far : ExtReal::plus_inf(), a, false};
    if (far.finite()) offer({far, a, false});
  }
  if (!I.hi_finite()) {
    bool unb = false;
    ExtReal far;
    b = detail::expand(phi, mid, +1, unb, far);
    if (unb) return {far.is_plus_inf() ? far : ExtReal::plus_inf(), b, false};
    if (far.finite()) offer({far, b, false});
  }
  double ia = I.lo_finite() ? detail::nudge(a, +1) : a;
  double ib = I.hi_finite() ? detail::nudge(b, -1) : b;
  if (ia < ib) {
    Extremum g = detail::golden_max(phi, ia, ib);
    // Converging onto a finite endpoint that does not itself carry the
    // value means the supremum is only approached.
    bool at_lo = I.lo_finite() && g.arg - I.lo() <= 1e-9 * std::max(1.0, std::abs(I.lo()));
    bool at_hi = I.hi_finite() && I.hi() - g.arg <= 1e-9 * std::max(1.0, std::abs(I.hi()));
    if (at_lo || at_hi) g.attained = false;
    offer(g);
  }
  if (I.lo_finite() && !I.lo_closed()) offer({phi(detail::nudge(I.lo(), +1)), I.lo(), false});
  if (I.hi_finite() && !I.hi_closed()) offer({phi(detail::nudge(I.hi(), -1)), I.hi(), false});
  return best;
}

/// inf of a convex map over I.
inline Extremum inf_convex(const ScalarMap& phi, const Interval& I) {
  Extremum e = sup_concave([&](double x) { return -phi(x); }, I);
  if (I.is_empty()) return {ExtReal::plus_inf(), 0.0, false};
  return {-e.value, e.arg, e.attained};
}

struct GridOptions {
  double window_lo = -16.0;
  double window_hi = 16.0;
  int nodes = 2049;
};

/// inf of an arbitrary (piecewise smooth) map over I: grid scan of I within
/// the window, golden refinement around the best node, endpoint limits, and
/// a doubling probe beyond the window on unbounded sides.
inline Extremum inf_global(const ScalarMap& phi, const Interval& I, const GridOptions& opt = {}) {
  Extremum best{ExtReal::plus_inf(), 0.0, false};
  if (I.is_empty()) return best;
  auto offer = [&](const Extremum& e) {
    if (e.value < best.value || (e.value == best.value && e.attained && !best.attained)) best = e;
  };
  if (I.lo_closed()) offer({phi(I.lo()), I.lo(), true});
  if (I.hi_closed()) offer({phi(I.hi()), I.hi(), true});
  if (I.is_point()) return best;
  if (I.lo_finite() && !I.lo_closed()) offer({phi(detail::nudge(I.lo(), +1)), I.lo(), false});
  if (I.hi_finite() && !I.hi_closed()) offer({phi(detail::nudge(I.hi(), -1)), I.hi(), false});

  double a = I.lo_finite() ? I.lo() : std::min(opt.window_lo, detail::finite_or(I.hi(), 0.0) - 1.0);
  double b = I.hi_finite() ? I.hi() : std::max(opt.window_hi, detail::finite_or(I.lo(), 0.0) + 1.0);
  int n = std::max(opt.nodes, 3);
  std::vector<double> xs(n);
  std::vector<ExtReal> fs(n);
  int bi = -1;
  for (int i = 0; i < n; ++i) {
    double x = a + (b - a) * i / (n - 1);
    if (i == 0) x = detail::nudge(a, +1);
    if (i == n - 1) x = detail::nudge(b, -1);
    xs[i] = x;
    fs[i] = I.contains(x) ? phi(x) : ExtReal::plus_inf();
    if (bi < 0 || fs[i] < fs[bi]) bi = i;
  }
  if (bi >= 0 && fs[bi].finite()) {
    int l = std::max(bi - 1, 0), r = std::min(bi + 1, n - 1);
    Extremum g = detail::golden_max([&](double x) { return -phi(x); }, xs[l], xs[r]);
    offer({-g.value, g.arg, true});
    offer({fs[bi], xs[bi], true});
  } else if (bi >= 0) {
    offer({fs[bi], xs[bi], true});
  }
  // Beyond the window on unbounded sides.
  for (int dir : {-1, +1}) {
    bool unbounded_side = dir < 0 ? !I.lo_finite() : !I.hi_finite();
    if (!unbounded_side) continue;
    bool unb = false;
    ExtReal far;
    double edge = dir < 0 ? a : b;
    double end = detail::expand([&](double x) { return -phi(x); }, edge, dir, unb, far);
    if (unb) return {ExtReal::minus_inf(), end, false};
    if (far.finite()) offer({-far, end, false});
    Extremum g = detail::golden_max([&](double x) { return -phi(x); }, std::min(edge, end), std::max(edge, end));
    offer({-g.value, g.arg, true});
    // A tail may rise first and fall later: probe at geometric distances.
    std::vector<double> px;
    std::vector<ExtReal> pv;
    for (int k = 0; k <= 62; ++k) {
      px.push_back(edge + dir * std::ldexp(1.0, k));
      pv.push_back(phi(px.back()));
    }
    std::size_t m = 0;
    for (std::size_t i = 1; i < pv.size(); ++i)
      if (pv[i] < pv[m]) m = i;
    if (!(pv[m] < best.value)) continue;
    if (m + 1 == pv.size() && pv[m - 1] > pv[m] && pv[m - 2] > pv[m - 1]) return {ExtReal::minus_inf(), px[m], false};
    offer({pv[m], px[m], true});
    double l = m ? px[m - 1] : edge, r = m + 1 < px.size() ? px[m + 1] : px[m];
    Extremum h = detail::golden_max([&](double x) { return -phi(x); }, std::min(l, r), std::max(l, r));
    offer({-h.value, h.arg, true});
  }
  return best;
}

}  // namespace ecvx
