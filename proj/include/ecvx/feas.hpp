#pragma once

// Sets of (y, alpha) in R^2 of the form F(I_1) + ... + F(I_n), where
// F(I) = {(y, alpha) : x*y < alpha for every x in I}. Each such set is the
// strict or non-strict epigraph of a support function, so it is described
// exactly by the profile (H, L) plus which boundary rays belong to it.

#include <string>
#include <vector>

#include "ecvx/extreal.hpp"

namespace ecvx {

class FeasRegion {
 public:
  FeasRegion() : FeasRegion(std::vector<Interval>{Interval::real_line()}) {}

  explicit FeasRegion(std::vector<Interval> summands) : summands_(std::move(summands)) { build(); }

  static FeasRegion of(const Interval& I) { return FeasRegion(std::vector<Interval>{I}); }

  const std::vector<Interval>& summands() const { return summands_; }

  /// The whole plane (some summand is empty, or the closures do not meet).
  bool whole() const { return whole_; }
  double H() const { return H_; }
  double L() const { return L_; }
  bool boundary_pos() const { return e_pos_; }
  bool boundary_neg() const { return e_neg_; }
  bool boundary_zero() const { return e_zero_; }

  /// Lower boundary m(y): the support function of the common closure.
  ExtReal floor(double y) const {
    if (whole_) return ExtReal::minus_inf();
    if (y > 0) return std::isfinite(H_) ? ExtReal(H_ * y) : ExtReal::plus_inf();
    if (y < 0) return std::isfinite(L_) ? ExtReal(L_ * y) : ExtReal::plus_inf();
    return ExtReal(0.0);
  }

  bool contains(double y, double alpha) const {
    if (whole_) return true;
    ExtReal m = floor(y);
    if (!m.finite()) return false;
    if (alpha > m.value()) return true;
    if (alpha < m.value()) return false;
    return y > 0 ? e_pos_ : y < 0 ? e_neg_ : e_zero_;
  }

  /// Minkowski sum.
  friend FeasRegion operator+(const FeasRegion& a, const FeasRegion& b) {
    std::vector<Interval> s = a.summands_;
    s.insert(s.end(), b.summands_.begin(), b.summands_.end());
    return FeasRegion(std::move(s));
  }

  bool subset_of(const FeasRegion& o) const {
    if (o.whole_) return true;
    if (whole_) return false;
    bool pos = !std::isfinite(H_) ||
               (std::isfinite(o.H_) && (H_ > o.H_ || (H_ == o.H_ && (!e_pos_ || o.e_pos_))));
    bool neg = !std::isfinite(L_) ||
               (std::isfinite(o.L_) && (L_ < o.L_ || (L_ == o.L_ && (!e_neg_ || o.e_neg_))));
    bool zero = !e_zero_ || o.e_zero_;
    return pos && neg && zero;
  }

  friend bool operator==(const FeasRegion& a, const FeasRegion& b) {
    return a.subset_of(b) && b.subset_of(a);
  }

  /// {x : x*y < alpha for all (y, alpha) in the region}.
  Interval polar() const {
    if (whole_ || e_zero_) return Interval::empty();
    return {L_, !e_neg_, H_, !e_pos_};
  }

  /// Readable form, one clause per sign of y*.
  std::string describe() const {
    if (whole_) return "all (y*, alpha)";
    auto side = [](const std::string& cond, double T, bool e) {
      if (!std::isfinite(T)) return cond + ": none";
      return cond + ": alpha " + (e ? ">= " : "> ") + ExtReal(T).str() + " y*";
    };
    return side("y* > 0", H_, e_pos_) + "; y* = 0: alpha " + (e_zero_ ? ">= 0" : "> 0") + "; " +
           side("y* < 0", L_, e_neg_);
  }

  std::string str() const {
    if (whole_) return "R^2";
    auto side = [](double v, bool e) { return ExtReal(v).str() + (e ? "(closed)" : "(open)"); };
    return "F{H=" + side(H_, e_pos_) + ", L=" + side(L_, e_neg_) + ", zero=" + (e_zero_ ? "closed" : "open") + "}";
  }

 private:
  void build() {
    H_ = Interval::kInf;
    L_ = -Interval::kInf;
    for (const Interval& I : summands_) {
      if (I.is_empty()) {
        whole_ = true;
        return;
      }
      H_ = std::min(H_, I.hi());
      L_ = std::max(L_, I.lo());
    }
    if (H_ < L_) {
      whole_ = true;
      return;
    }
    // A boundary point needs every summand to take a nonzero share whose
    // support value is not attained.
    auto plus_ok = [](const Interval& I, double T) { return I.hi() == T && !I.hi_closed(); };
    auto minus_ok = [](const Interval& I, double T) { return I.lo() == T && !I.lo_closed(); };
    auto ray = [&](double T, bool need_plus, bool need_minus) {
      if (!std::isfinite(T)) return false;
      bool any_plus = false, any_minus = false;
      for (const Interval& I : summands_) {
        bool p = plus_ok(I, T), m = minus_ok(I, T);
        if (!p && !m) return false;
        any_plus = any_plus || p;
        any_minus = any_minus || m;
      }
      if (need_plus && !any_plus) return false;
      if (need_minus && !any_minus) return false;
      if (need_plus && need_minus) {
        // Both signs must come from distinct summands.
        for (std::size_t i = 0; i < summands_.size(); ++i)
          for (std::size_t j = 0; j < summands_.size(); ++j)
            if (i != j && plus_ok(summands_[i], T) && minus_ok(summands_[j], T)) return true;
        return false;
      }
      return true;
    };
    e_pos_ = ray(H_, true, false);
    e_neg_ = ray(L_, false, true);
    e_zero_ = H_ == L_ && ray(H_, true, true);
  }

  std::vector<Interval> summands_;
  bool whole_ = false;
  double H_ = 0.0, L_ = 0.0;
  bool e_pos_ = false, e_neg_ = false, e_zero_ = false;
};

}  // namespace ecvx
