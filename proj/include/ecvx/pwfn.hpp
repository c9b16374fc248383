#pragma once

// Proper functions R -> R u {+inf} given as polynomial pieces on disjoint
// intervals, and differences of two such functions.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecvx/extreal.hpp"
#include "ecvx/poly.hpp"

namespace ecvx {

inline constexpr int kMaxDegree = 4;

struct Piece {
  Interval interval;
  Poly poly;
};

class PiecewiseFn {
 public:
  PiecewiseFn() : PiecewiseFn(std::vector<Piece>{{Interval::real_line(), Poly{}}}) {}

  explicit PiecewiseFn(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    pieces_.erase(std::remove_if(pieces_.begin(), pieces_.end(),
                                 [](const Piece& p) { return p.interval.is_empty(); }),
                  pieces_.end());
    if (pieces_.empty()) throw Error(ErrorCode::ImproperResult, "function is identically +inf");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
      if (a.interval.lo() != b.interval.lo()) return a.interval.lo() < b.interval.lo();
      return a.interval.lo_closed() && !b.interval.lo_closed();
    });
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (pieces_[i].poly.degree() > kMaxDegree)
        throw Error(ErrorCode::InvalidProblem, "piece degree exceeds 4");
      if (i > 0 && !intersect(pieces_[i - 1].interval, pieces_[i].interval).is_empty())
        throw Error(ErrorCode::InvalidProblem, "overlapping pieces");
    }
  }

  static PiecewiseFn zero() { return PiecewiseFn(); }
  static PiecewiseFn indicator(const Interval& D) { return PiecewiseFn({{D, Poly{}}}); }
  static PiecewiseFn poly_on(const Interval& D, Poly p) { return PiecewiseFn({{D, std::move(p)}}); }

  const std::vector<Piece>& pieces() const { return pieces_; }

  const Piece* piece_at(double x) const {
    for (const Piece& p : pieces_)
      if (p.interval.contains(x)) return &p;
    return nullptr;
  }

  ExtReal operator()(double x) const {
    const Piece* p = piece_at(x);
    return p ? ExtReal(p->poly(x)) : ExtReal::plus_inf();
  }

  bool in_domain(double x) const { return piece_at(x) != nullptr; }

  /// dom f as a list of maximal disjoint intervals.
  std::vector<Interval> domain() const {
    std::vector<Interval> out;
    for (const Piece& p : pieces_) {
      if (!out.empty()) {
        Interval& last = out.back();
        bool touch = last.hi() == p.interval.lo() && (last.hi_closed() || p.interval.lo_closed());
        if (touch) {
          last = hull(last, p.interval);
          continue;
        }
      }
      out.push_back(p.interval);
    }
    return out;
  }

  /// Convex hull of dom f.
  Interval domain_hull() const {
    Interval h;
    for (const Piece& p : pieces_) h = hull(h, p.interval);
    return h;
  }

  bool domain_is_interval() const { return domain().size() == 1; }

  /// Largest degree among the pieces.
  int degree() const {
    int d = 0;
    for (const Piece& p : pieces_) d = std::max(d, p.poly.degree());
    return d;
  }

 private:
  std::vector<Piece> pieces_;
};

inline PiecewiseFn scaled(double s, const PiecewiseFn& f) {
  std::vector<Piece> out;
  for (const Piece& p : f.pieces()) out.push_back({p.interval, s * p.poly});
  return PiecewiseFn(std::move(out));
}

/// f + g on dom f n dom g.
inline PiecewiseFn sum(const PiecewiseFn& f, const PiecewiseFn& g) {
  std::vector<Piece> out;
  for (const Piece& a : f.pieces())
    for (const Piece& b : g.pieces()) {
      Interval I = intersect(a.interval, b.interval);
      if (!I.is_empty()) out.push_back({I, a.poly + b.poly});
    }
  if (out.empty()) throw Error(ErrorCode::ImproperResult, "sum has empty domain");
  return PiecewiseFn(std::move(out));
}

/// f + indicator of S.
inline PiecewiseFn restricted(const PiecewiseFn& f, const Interval& S) {
  return sum(f, PiecewiseFn::indicator(S));
}

/// Nonnegative combination sum_i w_i f_i. Zero weights drop their entry;
/// the empty combination is the zero function on R.
inline PiecewiseFn combine(const std::vector<std::pair<double, PiecewiseFn>>& terms) {
  std::optional<PiecewiseFn> acc;
  for (const auto& [w, f] : terms) {
    if (w < 0) throw Error(ErrorCode::InvalidProblem, "negative multiplier");
    if (w == 0.0) continue;
    PiecewiseFn t = scaled(w, f);
    acc = acc ? sum(*acc, t) : t;
  }
  return acc ? *acc : PiecewiseFn::zero();
}

/// Convexity on an interval domain: convex pieces, continuity and
/// non-decreasing slopes at interior knots, upward jumps allowed only at
/// closed domain endpoints.
inline bool is_convex(const PiecewiseFn& f, double tol = 1e-9) {
  if (!f.domain_is_interval()) return false;
  const Interval D = f.domain_hull();
  for (const Piece& p : f.pieces()) {
    if (p.interval.is_point() || p.poly.degree() < 2) continue;
    if (minimize_on(p.poly.derivative().derivative(), p.interval).value < ExtReal(-tol)) return false;
  }
  // Interior knots.
  const auto& ps = f.pieces();
  std::vector<double> knots;
  for (const Piece& p : ps) {
    if (p.interval.lo_finite() && D.interior().contains(p.interval.lo())) knots.push_back(p.interval.lo());
    if (p.interval.hi_finite() && D.interior().contains(p.interval.hi())) knots.push_back(p.interval.hi());
  }
  for (double b : knots) {
    const Piece* left = nullptr;
    const Piece* right = nullptr;
    for (const Piece& p : ps) {
      if (p.interval.is_point()) continue;
      if (p.interval.hi() == b) left = &p;
      if (p.interval.lo() == b) right = &p;
    }
    double fb = f(b).value();
    double scale = std::max(1.0, std::abs(fb));
    if (left && std::abs(left->poly(b) - fb) > tol * scale) return false;
    if (right && std::abs(right->poly(b) - fb) > tol * scale) return false;
    if (left && right && left->poly.derivative()(b) > right->poly.derivative()(b) + tol * scale) return false;
  }
  // Endpoint values may only jump up.
  auto check_end = [&](double e) {
    const Piece* at = f.piece_at(e);
    if (!at || !at->interval.is_point()) return true;
    for (const Piece& p : ps)
      if (!p.interval.is_point() && (p.interval.lo() == e || p.interval.hi() == e))
        return at->poly(e) >= p.poly(e) - tol * std::max(1.0, std::abs(p.poly(e)));
    return true;
  };
  if (D.lo_finite() && D.lo_closed() && !check_end(D.lo())) return false;
  if (D.hi_finite() && D.hi_closed() && !check_end(D.hi())) return false;
  return true;
}

/// plus - minus, with the value +inf off dom plus and -inf on
/// dom plus \ dom minus.
class DCFn {
 public:
  DCFn(PiecewiseFn plus, PiecewiseFn minus) : plus_(std::move(plus)), minus_(std::move(minus)) {}

  const PiecewiseFn& plus() const { return plus_; }
  const PiecewiseFn& minus() const { return minus_; }

  ExtReal operator()(double x) const {
    ExtReal p = plus_(x);
    if (p.is_plus_inf()) return p;
    return sub_lower(p, minus_(x));
  }

  /// dom plus is contained in dom minus (the difference is proper).
  bool proper() const {
    for (const Interval& I : plus_.domain()) {
      bool covered = false;
      for (const Interval& J : minus_.domain()) covered = covered || J.contains(I);
      if (!covered) return false;
    }
    return true;
  }

  /// The difference as a single piecewise function; requires proper().
  PiecewiseFn as_piecewise() const {
    if (!proper()) throw Error(ErrorCode::ImproperResult, "dom f is not contained in dom g");
    return sum(plus_, scaled(-1.0, minus_));
  }

 private:
  PiecewiseFn plus_;
  PiecewiseFn minus_;
};

struct InfResult {
  ExtReal value;
  std::optional<double> argmin;  // set only when the infimum is attained
};

/// inf over S of a piecewise function, exact per piece.
inline InfResult infimum_over(const PiecewiseFn& f, const Interval& S) {
  InfResult best{ExtReal::plus_inf(), std::nullopt};
  bool best_attained = false;
  for (const Piece& p : f.pieces()) {
    Interval I = intersect(p.interval, S);
    if (I.is_empty()) continue;
    Extremum e = minimize_on(p.poly, I);
    if (e.value < best.value || (e.value == best.value && e.attained && !best_attained)) {
      best.value = e.value;
      best_attained = e.attained;
      best.argmin = e.attained ? std::optional<double>(e.arg) : std::nullopt;
    }
  }
  return best;
}

/// Complement in R of a sorted list of disjoint intervals.
inline std::vector<Interval> complement(const std::vector<Interval>& parts) {
  std::vector<Interval> out;
  double lo = -Interval::kInf;
  bool lo_closed = false;
  for (const Interval& J : parts) {
    Interval gap(lo, lo_closed, J.lo(), !J.lo_closed());
    if (!gap.is_empty()) out.push_back(gap);
    lo = J.hi();
    lo_closed = !J.hi_closed();
  }
  Interval tail(lo, lo_closed, Interval::kInf, false);
  if (!tail.is_empty()) out.push_back(tail);
  return out;
}

inline InfResult infimum_over(const DCFn& f, const Interval& S) {
  // Points of dom plus outside dom minus give -inf.
  for (const Interval& P : f.plus().domain())
    for (const Interval& G : complement(f.minus().domain())) {
      Interval R = intersect(intersect(P, G), S);
      if (R.is_empty()) continue;
      double x = R.lo_closed() ? R.lo() : R.hi_closed() ? R.hi() : 0.0;
      if (!R.contains(x))
        x = R.bounded() ? 0.5 * (R.lo() + R.hi()) : R.lo_finite() ? R.lo() + 1.0 : R.hi() - 1.0;
      return {ExtReal::minus_inf(), x};
    }
  std::vector<Piece> diff;
  for (const Piece& a : f.plus().pieces())
    for (const Piece& b : f.minus().pieces()) {
      Interval I = intersect(a.interval, b.interval);
      if (!I.is_empty()) diff.push_back({I, a.poly - b.poly});
    }
  if (diff.empty()) return {ExtReal::plus_inf(), std::nullopt};
  return infimum_over(PiecewiseFn(std::move(diff)), S);
}

}  // namespace ecvx
