#pragma once

// c-conjugates on W = R^3, w = (x*, y*, alpha), for the coupling
// c(x, w) = x x* when x y* < alpha and +inf otherwise. For proper f the
// c-conjugate factors as f*(x*) on the region F(dom f) and +inf off it.

#include <array>

#include "ecvx/convexfn.hpp"
#include "ecvx/feas.hpp"
#include "ecvx/pwfn.hpp"

namespace ecvx {

using W = std::array<double, 3>;

inline FeasRegion feas_region(const Interval& I) {
  if (I.is_empty()) throw Error(ErrorCode::EmptyDomain, "feasibility region of an empty interval");
  return FeasRegion::of(I);
}

struct CConjugate {
  ConvexFn scalar;
  FeasRegion feas;

  ExtReal operator()(const W& w) const {
    if (!feas.contains(w[1], w[2])) return ExtReal::plus_inf();
    return scalar(w[0]);
  }
  ExtReal operator()(double xs, double ys, double alpha) const { return (*this)(W{xs, ys, alpha}); }
};

inline ConvexFn fenchel(const DCFn& f) { return fenchel(f.as_piecewise()); }

inline CConjugate c_conjugate(const PiecewiseFn& f) {
  return {fenchel(f), feas_region(f.domain_hull())};
}

inline CConjugate c_conjugate(const DCFn& f) { return c_conjugate(f.as_piecewise()); }

/// The conjugate of a convex descriptor k whose domain is an interval.
inline CConjugate c_conjugate(const ConvexFn& k) {
  return {conjugate(k), feas_region(k.dom())};
}

/// Infimal convolution on W of two product-form conjugates.
inline CConjugate c_infconv(const CConjugate& a, const CConjugate& b) {
  return {inf_convolution(a.scalar, b.scalar), a.feas + b.feas};
}

/// k^{c'}(x) = sup_w { c'(w, x) - k(w) } for product-form k: the scalar
/// conjugate on the polar of the region, +inf elsewhere.
inline ConvexFn c_prime_conjugate(const CConjugate& k) {
  return restrict_to(conjugate(k.scalar), k.feas.polar());
}

/// f^{cc'}, which is the e-convex hull of f.
inline ConvexFn biconjugate_ccprime(const PiecewiseFn& f) { return c_prime_conjugate(c_conjugate(f)); }

/// (x*, beta, y*, alpha) describes an e-affine minorant of f.
inline bool eaffine_minorant(const PiecewiseFn& f, double xs, double beta, double ys, double alpha) {
  if (!feas_region(f.domain_hull()).contains(ys, alpha)) return false;
  return fenchel(f)(xs) <= ExtReal(beta);
}

/// Pointwise supremum of sums a1 + a2 of e-affine minorants of f1 and f2.
inline ConvexFn sup_etilde(const PiecewiseFn& f1, const PiecewiseFn& f2) {
  return c_prime_conjugate(c_infconv(c_conjugate(f1), c_conjugate(f2)));
}

}  // namespace ecvx
