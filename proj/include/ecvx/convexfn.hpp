#pragma once

// Convex functions of one real variable held as evaluation callbacks plus
// two exact intervals: the effective domain and the domain of the Fenchel
// conjugate ("slopes"). Every constructor below derives both intervals
// from its inputs so that conjugation never has to guess where to search.

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "ecvx/optim1d.hpp"
#include "ecvx/pwfn.hpp"

namespace ecvx {

struct Eval {
  ExtReal value;
  bool attained = true;  // for infima/suprema: whether the bound is achieved
};

class ConvexFn {
 public:
  using Fn = std::function<Eval(double)>;

  ConvexFn(Fn f, Interval dom, Interval slopes)
      : state_(std::make_shared<State>(std::move(f))), dom_(dom), slopes_(slopes) {}

  const Interval& dom() const { return dom_; }
  const Interval& slopes() const { return slopes_; }

  Eval at(double x) const {
    if (!dom_.contains(x)) return {ExtReal::plus_inf(), false};
    {
      std::lock_guard<std::mutex> lock(state_->mu);
      auto it = state_->cache.find(x);
      if (it != state_->cache.end()) return it->second;
    }
    Eval e = state_->f(x);
    std::lock_guard<std::mutex> lock(state_->mu);
    if (state_->cache.size() < 200000) state_->cache.emplace(x, e);
    return e;
  }

  ExtReal operator()(double x) const { return at(x).value; }

  /// A closed form for the Fenchel conjugate, when one is known.
  const ConvexFn* dual() const { return dual_.get(); }
  ConvexFn with_dual(const ConvexFn& d) const {
    ConvexFn out = *this;
    out.dual_ = std::make_shared<const ConvexFn>(d);
    return out;
  }

 private:
  struct State {
    explicit State(Fn fn) : f(std::move(fn)) {}
    Fn f;
    std::map<double, Eval> cache;
    std::mutex mu;
  };
  std::shared_ptr<State> state_;
  Interval dom_;
  Interval slopes_;
  std::shared_ptr<const ConvexFn> dual_;
};

namespace detail {

// Tail piece of f reaching +inf (dir > 0) or -inf (dir < 0), if any.
inline const Piece* tail_piece(const PiecewiseFn& f, int dir) {
  const auto& ps = f.pieces();
  const Piece& p = dir > 0 ? ps.back() : ps.front();
  if (dir > 0 && !p.interval.hi_finite()) return &p;
  if (dir < 0 && !p.interval.lo_finite()) return &p;
  return nullptr;
}

inline Eval fenchel_value(const PiecewiseFn& f, double s) {
  Extremum best{ExtReal::minus_inf(), 0.0, false};
  for (const Piece& p : f.pieces()) {
    Extremum e = maximize_on(Poly::linear(s, 0.0) - p.poly, p.interval);
    if (best.value < e.value || (e.value == best.value && e.attained)) best = e;
  }
  return {best.value, best.attained};
}

// Lower semicontinuous hull of a convex f: values at the ends of the
// closed domain are limits from inside.
inline Eval closure_value(const PiecewiseFn& f, double x) {
  const Interval D = f.domain_hull();
  if (!D.closure().contains(x)) return {ExtReal::plus_inf(), true};
  if (D.is_point()) return {f(x), true};
  if (x == D.lo() || x == D.hi())
    for (const Piece& p : f.pieces())
      if (!p.interval.is_point() && (p.interval.lo() == x || p.interval.hi() == x)) return {ExtReal(p.poly(x)), true};
  return {f(x), true};
}

}  // namespace detail

/// dom f* for a piecewise polynomial f, from the asymptotics of its tails.
/// Empty when f has no affine minorant.
inline Interval conjugate_domain(const PiecewiseFn& f) {
  double lo = -Interval::kInf, hi = Interval::kInf;
  bool lc = false, hc = false;
  if (const Piece* t = detail::tail_piece(f, +1)) {
    const Poly& p = t->poly;
    if (p.degree() >= 2) {
      if (p.leading() < 0) return Interval::empty();
    } else {
      hi = p.coeff(1);
      hc = true;
    }
  }
  if (const Piece* t = detail::tail_piece(f, -1)) {
    const Poly& p = t->poly;
    if (p.degree() >= 2) {
      if (!p.limit_at_infinity(-1).is_plus_inf()) return Interval::empty();
    } else {
      lo = p.coeff(1);
      lc = true;
    }
  }
  return {lo, lc, hi, hc};
}

/// f*(s) = sup_x { s x - f(x) }, exact per piece (critical points of the
/// polynomial pieces plus endpoint limits).
inline ConvexFn fenchel(const PiecewiseFn& f) {
  Interval dom = conjugate_domain(f);
  if (dom.is_empty()) throw Error(ErrorCode::NoMinorant, "function has no affine minorant");
  ConvexFn out([f](double s) { return detail::fenchel_value(f, s); }, dom, f.domain_hull().closure());
  if (!is_convex(f)) return out;
  return out.with_dual(ConvexFn([f](double x) { return detail::closure_value(f, x); }, f.domain_hull().closure(), dom));
}

/// A convex piecewise function seen as a ConvexFn; dom must be an interval.
inline ConvexFn as_convex(const PiecewiseFn& f) {
  if (!f.domain_is_interval()) throw Error(ErrorCode::InvalidProblem, "domain is not an interval");
  Interval slopes = conjugate_domain(f);
  return ConvexFn([f](double x) { return Eval{f(x), true}; }, f.domain_hull(), slopes);
}

/// k*(s) = sup_u { s u - k(u) } by concave maximization over dom k.
inline ConvexFn conjugate(const ConvexFn& k) {
  if (k.dual()) return *k.dual();
  auto fn = [k](double s) {
    if (!k.slopes().contains(s)) return Eval{ExtReal::plus_inf(), false};
    Extremum e = sup_concave([&](double u) { return sub_lower(ExtReal(s * u), k(u)); }, k.dom());
    return Eval{e.value, e.attained};
  };
  return ConvexFn(fn, k.slopes(), k.dom().closure());
}

/// (a (+) b)(x) = inf_u { a(u) + b(x - u) }; `attained` reports exactness.
inline ConvexFn inf_convolution(const ConvexFn& a, const ConvexFn& b) {
  Interval dom = minkowski(a.dom(), b.dom());
  auto fn = [a, b, dom](double x) {
    Interval us = intersect(a.dom(), minkowski(Interval::point(x), scale(-1.0, b.dom())));
    if (us.is_empty() && dom.contains(x)) {
      // x sits on an end of dom and rounding lost the only split, which
      // pairs the matching ends of the two domains
      bool top = !dom.lo_finite() || (dom.hi_finite() && std::abs(x - dom.hi()) <= std::abs(x - dom.lo()));
      double ua = top ? a.dom().hi() : a.dom().lo(), ub = top ? b.dom().hi() : b.dom().lo();
      if (std::isfinite(ua) && std::isfinite(ub)) return Eval{add_lower(a(ua), b(ub)), true};
    }
    const Interval& bd = b.dom();
    const double tol = 1e-12 * (1.0 + std::abs(x));
    auto rest = [&](double u) {
      // x - u can round off an end of dom b that the split actually meets
      double v = x - u;
      if (bd.hi_finite() && v > bd.hi() && v - bd.hi() <= tol && bd.contains(bd.hi())) v = bd.hi();
      if (bd.lo_finite() && v < bd.lo() && bd.lo() - v <= tol && bd.contains(bd.lo())) v = bd.lo();
      return b(v);
    };
    Extremum e = inf_convex([&](double u) { return add_lower(a(u), rest(u)); }, us);
    return Eval{e.value, e.attained};
  };
  ConvexFn ca = conjugate(a), cb = conjugate(b);
  ConvexFn dual([ca, cb](double s) { return Eval{add_lower(ca(s), cb(s)), true}; },
                intersect(a.slopes(), b.slopes()), dom.closure());
  return ConvexFn(fn, dom, intersect(a.slopes(), b.slopes())).with_dual(dual);
}

/// {x in dom g : g(x) <= level} for convex g, located by bisection.
inline Interval sublevel(const ConvexFn& g, double level) {
  Extremum m = inf_convex([&](double x) { return g(x); }, g.dom());
  const double slack = 1e-12 * std::max(1.0, std::abs(level));
  if (level + slack < m.value.value()) return Interval::empty();
  double c = m.arg;
  if (!g.dom().contains(c)) {
    // Minimum approached at an open end: the sublevel set is a half-open
    // interval at that end.
    c = detail::nudge(c, c <= g.dom().lo() ? +1 : -1);
  }
  auto ok = [&](double x) { return g.dom().contains(x) && g(x) <= ExtReal(level + slack); };
  auto edge = [&](int dir, double bound, bool bound_finite, bool& closed) -> double {
    if (!bound_finite) {
      // No slope of g points upward along dir: g never rises that way.
      double s = dir < 0 ? g.slopes().lo() : -g.slopes().hi();
      if (!g.slopes().is_empty() && s >= 0) {
        closed = false;
        return dir * Interval::kInf;
      }
      double step = 1.0;
      while (step < 1e300 && ok(c + dir * step)) step *= 2;
      if (ok(c + dir * step)) {
        closed = false;
        return dir * Interval::kInf;
      }
      bound = c + dir * step;
    } else if (ok(bound)) {
      closed = true;
      return bound;
    } else if (ok(detail::nudge(bound, -dir))) {
      closed = false;
      return bound;
    }
    double in = c, out = bound;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (ok(mid) ? in : out) = mid;
    }
    closed = true;
    return in;
  };
  bool lc = false, hc = false;
  double lo = edge(-1, g.dom().lo(), g.dom().lo_finite(), lc);
  double hi = edge(+1, g.dom().hi(), g.dom().hi_finite(), hc);
  return {lo, lc, hi, hc};
}

/// inf_{r > 0} r phi*(x / r): the closed-cone union over positive multiples
/// of phi, read through conjugates.
inline ConvexFn perspective_inf(const PiecewiseFn& phi) {
  ConvexFn ps = fenchel(phi);
  const Interval D = ps.dom();
  bool pos = !intersect(D, Interval::greater_than(0.0)).is_empty();
  bool neg = !intersect(D, Interval::less_than(0.0)).is_empty();
  bool zero = D.contains(0.0);
  Interval dom;
  if (pos) dom = hull(dom, Interval::greater_than(0.0));
  if (neg) dom = hull(dom, Interval::less_than(0.0));
  if (zero) dom = hull(dom, Interval::point(0.0));
  auto fn = [ps, D](double x) {
    if (x == 0.0) {
      ExtReal v = ps(0.0);
      if (v.is_plus_inf()) return Eval{v, false};
      if (v < ExtReal(0.0)) return Eval{ExtReal::minus_inf(), false};
      return Eval{ExtReal(0.0), v == ExtReal(0.0)};
    }
    // r ranges over {r > 0 : x / r in D}.
    Interval rs;
    Interval Dside = intersect(D, x > 0 ? Interval::greater_than(0.0) : Interval::less_than(0.0));
    if (Dside.is_empty()) return Eval{ExtReal::plus_inf(), false};
    double a = std::abs(Dside.lo()), b = std::abs(Dside.hi());
    bool ac = Dside.lo_closed(), bc = Dside.hi_closed();
    if (x < 0) {
      std::swap(a, b);
      std::swap(ac, bc);
    }
    // x / r in [a, b] (by magnitude)  <=>  r in [|x| / b, |x| / a].
    double rlo = b == Interval::kInf ? 0.0 : std::abs(x) / b;
    double rhi = a == 0.0 ? Interval::kInf : std::abs(x) / a;
    rs = Interval(rlo, bc && rlo > 0.0, rhi, ac && std::isfinite(rhi));
    Extremum e = inf_convex([&](double r) { return scale(r, ps(x / r)); }, rs);
    return Eval{e.value, e.attained};
  };
  ConvexFn hull_phi = conjugate(ps);
  Interval S = sublevel(hull_phi, 0.0);
  ConvexFn dual([](double) { return Eval{ExtReal(0.0), true}; }, S, dom.closure());
  return ConvexFn(fn, dom, S).with_dual(dual);
}

/// Pointwise maximum; conjugate domain from the asymptotic slopes.
inline ConvexFn max_of(const std::vector<ConvexFn>& ks) {
  if (ks.empty()) throw Error(ErrorCode::ImproperResult, "max of no functions");
  Interval dom = Interval::real_line();
  for (const ConvexFn& k : ks) dom = intersect(dom, k.dom());
  double hi = -Interval::kInf, lo = Interval::kInf;
  bool hc = false, lc = false;
  for (const ConvexFn& k : ks) {
    double h = k.slopes().hi(), l = k.slopes().lo();
    if (h > hi || (h == hi && k.slopes().hi_closed())) {
      hc = (h == hi && hc) || k.slopes().hi_closed();
      hi = h;
    }
    if (l < lo || (l == lo && k.slopes().lo_closed())) {
      lc = (l == lo && lc) || k.slopes().lo_closed();
      lo = l;
    }
  }
  if (dom.hi_finite() || dom.is_empty()) {
    hi = Interval::kInf;
    hc = false;
  }
  if (dom.lo_finite() || dom.is_empty()) {
    lo = -Interval::kInf;
    lc = false;
  }
  auto fn = [ks](double x) {
    ExtReal m = ExtReal::minus_inf();
    for (const ConvexFn& k : ks) m = max(m, k(x));
    return Eval{m, true};
  };
  return ConvexFn(fn, dom, Interval(lo, lc, hi, hc));
}

/// k + indicator of U.
inline ConvexFn restrict_to(const ConvexFn& k, const Interval& U) {
  Interval dom = intersect(k.dom(), U);
  Interval s = k.slopes();
  double lo = dom.lo_finite() ? -Interval::kInf : s.lo();
  double hi = dom.hi_finite() ? Interval::kInf : s.hi();
  bool lc = !dom.lo_finite() && s.lo_closed();
  bool hc = !dom.hi_finite() && s.hi_closed();
  return ConvexFn([k](double x) { return k.at(x); }, dom, Interval(lo, lc, hi, hc));
}

}  // namespace ecvx
