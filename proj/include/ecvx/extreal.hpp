#pragma once

// Extended reals with the "-inf wins" addition rule, and intervals of the
// real line with explicit endpoint openness.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ecvx {

enum class ErrorCode {
  EmptyDomain,
  ImproperResult,
  NoMinorant,
  ImproperEnvelope,
  InvalidProblem,
  ParseError,
  UnknownExample,
  OutOfDomain,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ExtReal {
 public:
  enum class Kind { Finite, PlusInf, MinusInf };

  constexpr ExtReal() = default;
  constexpr ExtReal(double v) {  // NOLINT: implicit from scalars is intended
    if (v == std::numeric_limits<double>::infinity()) {
      kind_ = Kind::PlusInf;
    } else if (v == -std::numeric_limits<double>::infinity()) {
      kind_ = Kind::MinusInf;
    } else {
      value_ = v;
    }
  }

  static constexpr ExtReal plus_inf() { return ExtReal(Kind::PlusInf); }
  static constexpr ExtReal minus_inf() { return ExtReal(Kind::MinusInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  constexpr bool is_minus_inf() const { return kind_ == Kind::MinusInf; }

  // Finite value; +-infinity map to the IEEE infinities.
  constexpr double value() const {
    switch (kind_) {
      case Kind::PlusInf:
        return std::numeric_limits<double>::infinity();
      case Kind::MinusInf:
        return -std::numeric_limits<double>::infinity();
      default:
        return value_;
    }
  }

  constexpr ExtReal operator-() const {
    switch (kind_) {
      case Kind::PlusInf:
        return minus_inf();
      case Kind::MinusInf:
        return plus_inf();
      default:
        return ExtReal(-value_);
    }
  }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) {
    return a.value() < b.value() || (a.is_minus_inf() && !b.is_minus_inf()) ||
           (!a.is_plus_inf() && b.is_plus_inf());
  }
  friend constexpr bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend constexpr bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend constexpr bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  std::string str() const {
    if (is_plus_inf()) return "inf";
    if (is_minus_inf()) return "-inf";
    std::ostringstream os;
    os.precision(12);
    os << value_;
    return os.str();
  }

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.str(); }

/// Addition where any clash of opposite infinities resolves to -inf.
constexpr ExtReal add_lower(const ExtReal& a, const ExtReal& b) {
  if (a.is_minus_inf() || b.is_minus_inf()) return ExtReal::minus_inf();
  if (a.is_plus_inf() || b.is_plus_inf()) return ExtReal::plus_inf();
  return ExtReal(a.value() + b.value());
}

constexpr ExtReal sub_lower(const ExtReal& a, const ExtReal& b) { return add_lower(a, -b); }

/// s * x for a finite scalar s; 0 * (+-inf) is taken as 0.
constexpr ExtReal scale(double s, const ExtReal& x) {
  if (s == 0.0) return ExtReal(0.0);
  if (x.finite()) return ExtReal(s * x.value());
  return (s > 0) == x.is_plus_inf() ? ExtReal::plus_inf() : ExtReal::minus_inf();
}

constexpr ExtReal min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
constexpr ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

inline bool near(const ExtReal& a, const ExtReal& b, double tol) {
  if (!a.finite() || !b.finite()) return a == b;
  return std::abs(a.value() - b.value()) <= tol;
}

/// Interval of the real line. Infinite endpoints are always open; the
/// distinguished empty interval is represented by `empty_`.
class Interval {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  Interval() = default;  // EMPTY
  Interval(double lo, bool lo_closed, double hi, bool hi_closed)
      : lo_(lo), hi_(hi), lo_closed_(lo_closed && std::isfinite(lo)),
        hi_closed_(hi_closed && std::isfinite(hi)), empty_(false) {
    if (std::isnan(lo) || std::isnan(hi)) throw Error(ErrorCode::ImproperResult, "NaN endpoint");
    if (lo > hi || (lo == hi && !(lo_closed_ && hi_closed_))) *this = Interval();
  }

  static Interval empty() { return {}; }
  static Interval real_line() { return {-kInf, false, kInf, false}; }
  static Interval closed(double a, double b) { return {a, true, b, true}; }
  static Interval open(double a, double b) { return {a, false, b, false}; }
  static Interval point(double a) { return {a, true, a, true}; }
  static Interval at_least(double a) { return {a, true, kInf, false}; }
  static Interval greater_than(double a) { return {a, false, kInf, false}; }
  static Interval at_most(double b) { return {-kInf, false, b, true}; }
  static Interval less_than(double b) { return {-kInf, false, b, false}; }

  bool is_empty() const { return empty_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }
  bool lo_finite() const { return !empty_ && std::isfinite(lo_); }
  bool hi_finite() const { return !empty_ && std::isfinite(hi_); }
  bool bounded() const { return lo_finite() && hi_finite(); }
  bool is_point() const { return !empty_ && lo_ == hi_; }

  bool contains(double x) const {
    if (empty_) return false;
    bool above = lo_closed_ ? x >= lo_ : x > lo_;
    bool below = hi_closed_ ? x <= hi_ : x < hi_;
    return above && below;
  }

  bool contains(const Interval& o) const {
    if (o.empty_) return true;
    if (empty_) return false;
    bool lo_ok = o.lo_ > lo_ || (o.lo_ == lo_ && (lo_closed_ || !o.lo_closed_));
    bool hi_ok = o.hi_ < hi_ || (o.hi_ == hi_ && (hi_closed_ || !o.hi_closed_));
    return lo_ok && hi_ok;
  }

  Interval closure() const {
    if (empty_) return *this;
    return {lo_, true, hi_, true};
  }
  Interval interior() const {
    if (empty_) return *this;
    return {lo_, false, hi_, false};
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.lo_closed_ == b.lo_closed_ &&
           a.hi_closed_ == b.hi_closed_;
  }

  std::string str() const {
    if (empty_) return "EMPTY";
    auto num = [](double v) { return ExtReal(v).str(); };
    return std::string(lo_closed_ ? "[" : "]") + num(lo_) + "," + num(hi_) +
           (hi_closed_ ? "]" : "[");
  }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
  bool lo_closed_ = false;
  bool hi_closed_ = false;
  bool empty_ = true;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& I) { return os << I.str(); }

inline Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo = std::max(a.lo(), b.lo());
  double hi = std::min(a.hi(), b.hi());
  bool lc = (a.lo() == lo ? a.lo_closed() : true) && (b.lo() == lo ? b.lo_closed() : true);
  bool hc = (a.hi() == hi ? a.hi_closed() : true) && (b.hi() == hi ? b.hi_closed() : true);
  return {lo, lc, hi, hc};
}

/// Minkowski sum; a side is closed only when both summands are closed there.
inline Interval minkowski(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return {a.lo() + b.lo(), a.lo_closed() && b.lo_closed(), a.hi() + b.hi(),
          a.hi_closed() && b.hi_closed()};
}

/// Smallest interval containing both.
inline Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  double lo = std::min(a.lo(), b.lo());
  double hi = std::max(a.hi(), b.hi());
  bool lc = (a.lo() == lo && a.lo_closed()) || (b.lo() == lo && b.lo_closed());
  bool hc = (a.hi() == hi && a.hi_closed()) || (b.hi() == hi && b.hi_closed());
  return {lo, lc, hi, hc};
}

inline Interval scale(double s, const Interval& I) {
  if (I.is_empty()) return I;
  if (s == 0.0) return Interval::point(0.0);
  if (s > 0) return {s * I.lo(), I.lo_closed(), s * I.hi(), I.hi_closed()};
  return {s * I.hi(), I.hi_closed(), s * I.lo(), I.lo_closed()};
}

struct Support {
  ExtReal value;
  bool attained = false;
};

/// sup_{x in I} x*y and whether some x in I achieves it.
inline Support strict_support(const Interval& I, double y) {
  if (I.is_empty()) throw Error(ErrorCode::EmptyDomain, "strict_support of an empty interval");
  if (y == 0.0) return {ExtReal(0.0), true};
  if (y > 0) {
    if (!I.hi_finite()) return {ExtReal::plus_inf(), false};
    return {ExtReal(I.hi() * y), I.hi_closed()};
  }
  if (!I.lo_finite()) return {ExtReal::plus_inf(), false};
  return {ExtReal(I.lo() * y), I.lo_closed()};
}

/// I is contained in the open half-line {x : x*y < alpha}.
inline bool inside_strict_halfline(const Interval& I, double y, double alpha) {
  Support s = strict_support(I, y);
  if (!s.value.finite()) return false;
  return alpha > s.value.value() || (alpha == s.value.value() && !s.attained);
}

}  // namespace ecvx
