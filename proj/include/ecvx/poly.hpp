#pragma once

// Real polynomials of small degree: evaluation, real roots by derivative
// bracketing, and exact extremization over an interval.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "ecvx/extreal.hpp"

namespace ecvx {

class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<double> c) : c_(c) { trim(); }
  explicit Poly(std::vector<double> c) : c_(std::move(c)) { trim(); }

  static Poly constant(double a) { return Poly({a}); }
  static Poly linear(double slope, double intercept) { return Poly({intercept, slope}); }

  /// Ascending coefficients; empty means the zero polynomial.
  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  double coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

  double operator()(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Poly derivative() const {
    std::vector<double> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(static_cast<double>(i) * c_[i]);
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator*(double s, const Poly& p) {
    std::vector<double> r = p.c_;
    for (double& v : r) v *= s;
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Limit at +inf (dir > 0) or -inf (dir < 0).
  ExtReal limit_at_infinity(int dir) const {
    int d = degree();
    if (d == 0) return ExtReal(coeff(0));
    bool positive = leading() > 0;
    if (dir < 0 && d % 2 == 1) positive = !positive;
    return positive ? ExtReal::plus_inf() : ExtReal::minus_inf();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  std::vector<double> c_;
};

namespace detail {

inline double bisect_root(const Poly& p, double a, double b) {
  double fa = p(a);
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    double fm = p(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline double cauchy_bound(const Poly& p) {
  double m = 0.0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p.coeff(i) / p.leading()));
  return 1.0 + m;
}

}  // namespace detail

/// Real roots of p in the closed range [a, b] (a, b finite), sorted, with
/// even-multiplicity roots detected at critical points.
inline std::vector<double> real_roots(const Poly& p, double a, double b) {
  std::vector<double> out;
  if (p.degree() == 0) return out;
  if (p.degree() == 1) {
    double r = -p.coeff(0) / p.coeff(1);
    if (r >= a && r <= b) out.push_back(r);
    return out;
  }
  std::vector<double> knots{a};
  for (double c : real_roots(p.derivative(), a, b)) knots.push_back(c);
  knots.push_back(b);
  double scale = 0.0;
  for (double c : p.coeffs()) scale = std::max(scale, std::abs(c));
  double zero_tol = 1e-13 * std::max(1.0, scale);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double l = knots[i], r = knots[i + 1];
    double fl = p(l), fr = p(r);
    if (std::abs(fl) <= zero_tol && (out.empty() || std::abs(out.back() - l) > 1e-12)) {
      out.push_back(l);
      continue;
    }
    if (l < r && (fl < 0) != (fr < 0) && std::abs(fr) > zero_tol) out.push_back(detail::bisect_root(p, l, r));
  }
  double fb = p(b);
  if (std::abs(fb) <= zero_tol && (out.empty() || std::abs(out.back() - b) > 1e-12)) out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double u, double v) { return std::abs(u - v) < 1e-12; }),
            out.end());
  return out;
}

inline std::vector<double> real_roots(const Poly& p) {
  if (p.degree() == 0) return {};
  double B = detail::cauchy_bound(p);
  return real_roots(p, -B, B);
}

struct Extremum {
  ExtReal value;
  double arg = 0.0;
  bool attained = false;
};

/// sup of p over I, treating open endpoints as limits (not attained).
/// The empty interval yields -inf.
inline Extremum maximize_on(const Poly& p, const Interval& I) {
  Extremum best{ExtReal::minus_inf(), 0.0, false};
  if (I.is_empty()) return best;
  auto offer = [&](ExtReal v, double x, bool att) {
    if (best.value < v || (v == best.value && att && !best.attained)) best = {v, x, att};
  };
  if (I.lo_finite()) offer(ExtReal(p(I.lo())), I.lo(), I.lo_closed());
  if (I.hi_finite()) offer(ExtReal(p(I.hi())), I.hi(), I.hi_closed());
  if (!I.lo_finite()) offer(p.limit_at_infinity(-1), I.lo(), false);
  if (!I.hi_finite()) offer(p.limit_at_infinity(+1), I.hi(), false);
  if (!I.is_point()) {
    double a = I.lo_finite() ? I.lo() : (I.hi_finite() ? I.hi() - 1.0 : -1.0);
    double b = I.hi_finite() ? I.hi() : (I.lo_finite() ? I.lo() + 1.0 : 1.0);
    offer(ExtReal(p(0.5 * (a + b))), 0.5 * (a + b), true);
    Poly dp = p.derivative();
    if (dp.degree() > 0) {
      double B = detail::cauchy_bound(dp);
      double lo = I.lo_finite() ? I.lo() : -B;
      double hi = I.hi_finite() ? I.hi() : B;
      for (double r : real_roots(dp, lo, hi))
        if (I.contains(r)) offer(ExtReal(p(r)), r, true);
    }
  }
  return best;
}

inline Extremum minimize_on(const Poly& p, const Interval& I) {
  Extremum e = maximize_on((-1.0) * p, I);
  if (I.is_empty()) return {ExtReal::plus_inf(), 0.0, false};
  return {-e.value, e.arg, e.attained};
}

}  // namespace ecvx
