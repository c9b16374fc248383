#pragma once

// Brute-force references built only from point evaluation of piecewise
// functions on dense grids. None of them calls the library's conjugation,
// hull or optimization code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ecvx/pwfn.hpp"

namespace oracle {

using ecvx::ExtReal;
using ecvx::Interval;
using ecvx::PiecewiseFn;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Grid over [lo, hi] plus every finite piece endpoint and points just
// inside the pieces.
inline std::vector<double> grid(const PiecewiseFn& f, double lo, double hi, int n) {
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
  for (const auto& p : f.pieces())
    for (double e : {p.interval.lo(), p.interval.hi()})
      if (std::isfinite(e))
        for (double d : {0.0, -1e-9, 1e-9, -1e-6, 1e-6}) xs.push_back(e + d);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> in;
  for (double x : xs)
    if (f.in_domain(x)) in.push_back(x);
  return in;
}

/// sup_x { s x - f(x) } over a grid of dom f.
inline double conjugate(const PiecewiseFn& f, double s, double lo = -40, double hi = 40, int n = 40000) {
  double best = -kInf;
  for (double x : grid(f, lo, hi, n)) best = std::max(best, s * x - f(x).value());
  return best;
}

/// The c-conjugate straight from its definition: +inf as soon as a grid
/// point of dom f leaves the strip x y* < alpha.
inline double c_conjugate(const PiecewiseFn& f, double xs, double ys, double alpha, double lo = -40, double hi = 40,
                          int n = 40000) {
  double best = -kInf;
  for (double x : grid(f, lo, hi, n)) {
    if (!(x * ys < alpha)) return kInf;
    best = std::max(best, xs * x - f(x).value());
  }
  return best;
}

/// inf_u { a(u) + b(x - u) } for callables on a grid of u.
template <class A, class B>
double inf_convolution(const A& a, const B& b, double x, double lo = -20, double hi = 20, int n = 40000) {
  double best = kInf;
  for (int i = 0; i <= n; ++i) {
    double u = lo + (hi - lo) * i / n;
    double v = a(u) + b(x - u);
    if (!std::isnan(v)) best = std::min(best, v);
  }
  return best;
}

/// Grid biconjugate of f at x: sup over slopes s of s x - f*(s), with f*
/// from the grid conjugate.
inline double biconjugate(const PiecewiseFn& f, double x, double slo = -30, double shi = 30, int n = 3000) {
  double best = -kInf;
  for (int i = 0; i <= n; ++i) {
    double s = slo + (shi - slo) * i / n;
    double fs = conjugate(f, s, -40, 40, 4000);
    if (std::isfinite(fs)) best = std::max(best, s * x - fs);
  }
  return best;
}

/// Convexity by sampling the three-point inequality on a grid of dom f.
inline bool convex_by_sampling(const PiecewiseFn& f, double lo = -10, double hi = 10, int n = 200) {
  std::vector<double> xs = grid(f, lo, hi, n);
  for (std::size_t i = 0; i < xs.size(); i += 3)
    for (std::size_t k = i + 2; k < xs.size(); k += 5)
      for (std::size_t j = i + 1; j < k; j += 7) {
        double t = (xs[k] - xs[j]) / (xs[k] - xs[i]);
        double lhs = f(xs[j]).value(), rhs = t * f(xs[i]).value() + (1 - t) * f(xs[k]).value();
        if (lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs))) return false;
      }
  return true;
}

/// Random convex piecewise fixtures: affine or convex quadratic on a random
/// interval (open or closed ends).
inline PiecewiseFn random_convex(std::mt19937& rng, bool quadratic) {
  std::uniform_real_distribution<double> U(-2, 2);
  std::uniform_int_distribution<int> kind(0, 3);
  double a = std::round(U(rng) * 4) / 4, b = a + 0.5 + std::abs(std::round(U(rng) * 4) / 4);
  Interval I;
  switch (kind(rng)) {
    case 0:
      I = Interval::closed(a, b);
      break;
    case 1:
      I = Interval::at_least(a);
      break;
    case 2:
      I = Interval::greater_than(a);
      break;
    default:
      I = Interval::real_line();
  }
  double c0 = std::round(U(rng) * 4) / 4, c1 = std::round(U(rng) * 4) / 4;
  double c2 = quadratic ? 0.25 + std::abs(std::round(U(rng) * 4) / 4) : 0.0;
  return PiecewiseFn::poly_on(I, ecvx::Poly{c0, c1, c2});
}

}  // namespace oracle
