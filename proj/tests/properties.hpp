#pragma once

// Property checks shared by the unit tests and the acceptance binary. Each
// returns a Tally; the references come from oracles.hpp.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ecvx/fixtures.hpp"
#include "oracles.hpp"

namespace props {

using namespace ecvx;

struct Tally {
  int checks = 0;
  int failed = 0;
  std::vector<std::string> first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failed;
    if (first.size() < 5) first.push_back(what);
  }
  bool ok() const { return failed == 0 && checks > 0; }
  std::string str() const {
    std::string s = std::to_string(checks - failed) + "/" + std::to_string(checks);
    for (const std::string& f : first) s += "\n    " + f;
    return s;
  }
  Tally& operator+=(const Tally& o) {
    checks += o.checks;
    failed += o.failed;
    for (const std::string& f : o.first)
      if (first.size() < 5) first.push_back(f);
    return *this;
  }
};

struct Named {
  std::string name;
  PiecewiseFn fn;
};

inline std::vector<Named> fixture_functions() {
  std::vector<Named> out;
  auto add = [&](const std::string& id, const DCProblem& p) {
    out.push_back({id + ".f", p.f});
    out.push_back({id + ".g", p.g});
    for (const Constraint& c : p.constraints) out.push_back({id + "." + c.id, c.h});
  };
  add("weak_duality", fixtures::weak_duality());
  add("econvex_necessity", fixtures::econvex_necessity());
  add("sets_ab", fixtures::sets_ab());
  add("cubic", fixtures::cubic());
  return out;
}

inline std::string w_str(double x, double y, double a) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x << ", " << y << ", " << a << ")";
  return os.str();
}

inline bool values_match(ExtReal lib, double ref, double tol) {
  if (std::isinf(ref)) return lib.is_plus_inf() && ref > 0;
  return lib.finite() && std::abs(lib.value() - ref) <= tol * std::max(1.0, std::abs(ref));
}

/// sup of x y over dom f read off the piece endpoints, and whether some
/// point of dom f attains it.
struct StripSup {
  double value;
  bool attained;
};

inline StripSup strip_sup(const PiecewiseFn& f, double y) {
  if (y == 0) return {0.0, true};
  Interval d = f.domain_hull();
  double e = y > 0 ? d.hi() : d.lo();
  if (!std::isfinite(e)) return {oracle::kInf, false};
  return {y * e, f.in_domain(e)};
}

/// Some alpha1 puts y1 in F(dom a) and (y - y1, alpha - alpha1) in F(dom b).
inline bool split_feasible(const PiecewiseFn& a, const PiecewiseFn& b, double y1, double y, double alpha) {
  StripSup sa = strip_sup(a, y1), sb = strip_sup(b, y - y1);
  if (std::isinf(sa.value) || std::isinf(sb.value)) return false;
  double room = alpha - sa.value - sb.value;
  return room > 0 || (room == 0 && !sa.attained && !sb.attained);
}

/// f sampled on a grid of its domain, with the largest and smallest sample.
struct Sampled {
  std::vector<double> xs, fx;

  explicit Sampled(const PiecewiseFn& f, double lo = -80, double hi = 80, int n = 80000) {
    xs = oracle::grid(f, lo, hi, n);
    for (double x : xs) fx.push_back(f(x).value());
  }
  /// sup over samples of s x - f(x); +inf when widening the window from
  /// |x| <= 40 to |x| <= 80 still raises it.
  double conjugate(double s) const {
    double inner = -oracle::kInf, outer = -oracle::kInf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double v = s * xs[i] - fx[i];
      outer = std::max(outer, v);
      if (std::abs(xs[i]) <= 40) inner = std::max(inner, v);
    }
    return outer > inner + 1e-7 ? oracle::kInf : outer;
  }
  /// Every sample satisfies x y < a.
  bool in_strip(double y, double a) const { return y * xs.front() < a && y * xs.back() < a; }
  double c_conjugate(double xs_, double y, double a) const { return in_strip(y, a) ? conjugate(xs_) : oracle::kInf; }
};

/// Random W point: y* on a quarter grid, alpha on a sixteenth grid, so
/// that boundary cases come up with exact products.
inline W random_w(std::mt19937& rng) {
  std::uniform_real_distribution<double> X(-3, 3);
  std::uniform_int_distribution<int> Y(-8, 8), A(-64, 64);
  return {X(rng), Y(rng) / 4.0, A(rng) / 16.0};
}

inline Tally c_conjugate_vs_raw(const Named& f, int points, unsigned seed) {
  Tally t;
  Sampled s(f.fn);
  CConjugate lib = c_conjugate(f.fn);
  std::mt19937 rng(seed);
  for (int i = 0; i < points; ++i) {
    W w = random_w(rng);
    double ref = s.c_conjugate(w[0], w[1], w[2]);
    ExtReal got = lib(w);
    t.expect(values_match(got, ref, 1e-4),
             f.name + " at " + w_str(w[0], w[1], w[2]) + ": " + got.str() + " vs " + std::to_string(ref));
  }
  return t;
}

/// inf over w1 + w2 = w of a^c(w1) + b^c(w2), with both conjugates taken
/// from samples. The (y*, alpha) split is feasible iff some y1 leaves room
/// for alpha; the strip bound is piecewise linear in y1 with kinks at 0 and
/// y*, so those and two far points are enough. The x* split runs over a
/// 0.005 grid.
inline Tally c_infconv_vs_raw(const Named& a, const Named& b, int points, unsigned seed) {
  Tally t;
  Sampled sa(a.fn, -20, 20, 8000), sb(b.fn, -20, 20, 8000);
  auto conj = [](const Sampled& s, double u) {
    double inner = -oracle::kInf, outer = -oracle::kInf;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      double v = u * s.xs[i] - s.fx[i];
      outer = std::max(outer, v);
      if (std::abs(s.xs[i]) <= 10) inner = std::max(inner, v);
    }
    return outer > inner + 1e-7 ? oracle::kInf : outer;
  };
  const double h = 0.005;
  const int U = 2000;  // u in [-10, 10]
  const int V = 2600;  // x* - u in [-13, 13]
  std::vector<double> ca(2 * U + 1), cb(2 * V + 1);
  for (int i = -U; i <= U; ++i) ca[i + U] = conj(sa, i * h);
  for (int i = -V; i <= V; ++i) cb[i + V] = conj(sb, i * h);
  CConjugate lib = c_infconv(c_conjugate(a.fn), c_conjugate(b.fn));
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> X(-600, 600);
  for (int k = 0; k < points; ++k) {
    W w = random_w(rng);
    int xi = X(rng);
    w[0] = xi * h;
    bool feasible = false;
    for (double y1 : {0.0, w[1], -64.0, 64.0}) feasible = feasible || split_feasible(a.fn, b.fn, y1, w[1], w[2]);
    double ref = oracle::kInf;
    if (feasible)
      for (int i = -U; i <= U; ++i) {
        int j = xi - i;
        if (j < -V || j > V) continue;
        ref = std::min(ref, ca[i + U] + cb[j + V]);
      }
    ExtReal got = lib(w);
    t.expect(values_match(got, ref, 1e-4), a.name + " with " + b.name + " at " + w_str(w[0], w[1], w[2]) + ": " +
                                               got.str() + " vs " + std::to_string(ref));
  }
  return t;
}

/// Up to k points spread over dom f inside [-4, 4].
inline std::vector<double> domain_points(const PiecewiseFn& f, int k) {
  std::vector<double> all = oracle::grid(f, -4, 4, 64), out;
  if (all.empty()) return out;
  for (int i = 0; i < k; ++i) out.push_back(all[(all.size() - 1) * i / std::max(k - 1, 1)]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Tally reconstruction(const Named& f, int points = 5) {
  Tally t;
  for (double x0 : domain_points(f.fn, points)) {
    Lemma9Result r = lemma9_reconstruct(f.fn, x0);
    t.expect(r.ok, f.name + " at x0 = " + std::to_string(x0) + ": residual " + std::to_string(r.max_residual));
  }
  return t;
}

/// c-eps-subdifferentials of f sit inside those of its e-convex hull. The
/// hull side is also checked pointwise against the defining inequality.
inline Tally subdiff_inclusion(const Named& f, int pairs, unsigned seed) {
  Tally t;
  SubdiffData hull = SubdiffData::eco_of(f.fn);
  std::vector<double> xs = oracle::grid(f.fn, -4, 4, 256);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  std::uniform_real_distribution<double> E(0, 2);
  for (int i = 0; i < pairs; ++i) {
    double x = xs[pick(rng)], eps = i % 10 == 0 ? 0.0 : E(rng);
    CSubdiff a = c_subdiff(f.fn, x, eps), b = c_subdiff(hull, x, eps);
    bool ok = a.empty() || (b.xstar.contains(a.xstar) && a.feas.subset_of(b.feas));
    if (ok && !a.empty())
      for (double s : {a.xstar.lo(), a.xstar.hi()})
        if (std::isfinite(s)) {
          // step inside: the endpoints come from a root search
          double c = std::isfinite(a.xstar.lo()) && std::isfinite(a.xstar.hi()) ? 0.5 * (a.xstar.lo() + a.xstar.hi())
                                                                                 : s + (s == a.xstar.lo() ? 1.0 : -1.0);
          double in = s + 1e-6 * (c - s);
          if (a.xstar.contains(in)) ok = ok && in_eps_subdiff(hull, x, eps + 1e-9, in);
        }
    t.expect(ok, f.name + " at x = " + std::to_string(x) + ", eps = " + std::to_string(eps) + ": " + a.xstar.str() +
                     " vs " + b.xstar.str());
  }
  return t;
}

inline Tally hull_vs_biconjugate(const Named& f) {
  Tally t;
  ConvexFn e = eco_hull(f.fn).fn, b = biconjugate_ccprime(f.fn);
  t.expect(e.dom() == b.dom(), f.name + ": domains " + e.dom().str() + " vs " + b.dom().str());
  for (double x : oracle::grid(f.fn, -6, 6, 240)) {
    ExtReal u = e(x), v = b(x);
    t.expect(near(u, v, 1e-6 * std::max(1.0, u.finite() ? std::abs(u.value()) : 1.0)),
             f.name + " at " + std::to_string(x) + ": " + u.str() + " vs " + v.str());
  }
  return t;
}

/// f: random quartic or convex quadratic on a random interval. g: random
/// convex quadratic, which is e-convex.
inline std::pair<PiecewiseFn, PiecewiseFn> random_toland_pair(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-2, 2);
  PiecewiseFn g = oracle::random_convex(rng, true);
  PiecewiseFn f = oracle::random_convex(rng, true);
  if (rng() % 2) {
    auto q = [&] { return std::round(U(rng) * 4) / 4; };
    f = PiecewiseFn::poly_on(f.domain_hull(), Poly{q(), q(), q(), q(), 0.5 + std::abs(q())});
  }
  return {f, g};
}

inline Tally toland(int pairs, unsigned seed) {
  Tally t;
  std::mt19937 rng(seed);
  for (int i = 0; i < pairs; ++i) {
    auto [f, g] = random_toland_pair(rng);
    TolandResult r = toland_check(f, g);
    t.expect(r.agree, "pair " + std::to_string(i) + ": inf(f - g) = " + r.primal.str() + ", dual " + r.dual.str());
  }
  return t;
}

/// Random one-constraint problems with e-convex g whose approximation
/// condition verifies. Equal leading curvature in f and g is avoided: the
/// dual side then subtracts two conjugates of the same growth, and the
/// cancellation swamps the result in double precision.
inline std::vector<DCProblem> random_problems(int count, unsigned seed, int max_tries = 400) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-2, 2);
  auto q = [&] { return std::round(U(rng) * 4) / 4; };
  std::vector<DCProblem> out;
  for (int tries = 0; tries < max_tries && static_cast<int>(out.size()) < count; ++tries) {
    DCProblem p;
    double g2 = std::abs(q());
    p.g = PiecewiseFn::poly_on(Interval::real_line(), Poly{q(), q(), g2});
    // f curves more than g, so f - g is bounded below on its domain
    PiecewiseFn base = oracle::random_convex(rng, true);
    const Piece& fp = base.pieces().front();
    std::vector<double> c = fp.poly.coeffs();
    c.resize(3, 0.0);
    p.f = PiecewiseFn::poly_on(fp.interval, Poly{c[0], c[1], c[2] + g2});
    double t = q();
    p.constraints = {{"h", PiecewiseFn::poly_on(Interval::real_line(), Poly{t, q() >= 0 ? 1.0 : -1.0})}};
    p.validate();
    Interval B = set_B(p);
    if (intersect(B, p.f.domain_hull()).is_empty() || !is_econvex(p.g, p.cfg)) continue;
    if (!check_AC(p.f, PiecewiseFn::indicator(B), p.cfg).holds) continue;
    out.push_back(p);
  }
  return out;
}

/// Random one-constraint problems for the cross-validation: h affine on a
/// half-line, zero multipliers read as the indicator of dom h.
inline std::vector<DCProblem> random_half_line_problems(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-2, 2);
  auto q = [&] { return std::round(U(rng) * 4) / 4; };
  std::vector<DCProblem> out;
  for (int tries = 0; tries < 50 * count && static_cast<int>(out.size()) < count; ++tries) {
    DCProblem p;
    double g2 = std::abs(q());
    p.g = PiecewiseFn::poly_on(Interval::real_line(), Poly{q(), q(), g2});
    p.f = PiecewiseFn::poly_on(Interval::real_line(), Poly{q(), q(), g2 + 0.25 + std::abs(q())});
    double t = q();
    Interval D = rng() % 2 ? Interval::at_least(t) : Interval::at_most(t);
    p.constraints = {{"h", PiecewiseFn::poly_on(D, Poly{q(), q() >= 0 ? 1.0 : -1.0})}};
    p.cfg.zero_multiplier = ZeroMultiplier::Domain;
    p.validate();
    if (intersect(set_B(p), p.f.domain_hull()).is_empty()) continue;
    out.push_back(p);
  }
  return out;
}

inline Tally relation_chain(int count, unsigned seed) {
  Tally t;
  std::vector<DCProblem> ps = random_problems(count, seed);
  t.expect(static_cast<int>(ps.size()) == count, "only " + std::to_string(ps.size()) + " problems qualified");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const DCProblem& p = ps[i];
    ExtReal vP = v_primal(p), s = v_dual_standard(p).value, b = v_dual_bar(p).value, d = v_dual_tilde(p).value;
    auto tol = [](ExtReal v) { return 1e-6 * std::max(1.0, v.finite() ? std::abs(v.value()) : 1.0); };
    bool ok = (vP >= s || near(vP, s, tol(vP))) && near(s, b, tol(s)) && (b >= d || near(b, d, tol(b)));
    t.expect(ok, "problem " + std::to_string(i) + ": " + vP.str() + " >= " + s.str() + " = " + b.str() +
                     " >= " + d.str());
  }
  return t;
}

}  // namespace props
