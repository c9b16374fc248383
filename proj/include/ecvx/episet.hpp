#pragma once

// Upward-closed subsets of W x R built as unions of product blocks
// {(w, beta) : (y*, alpha) in feas, beta >= s(x*)}, where s is a convex
// scalar function. Minkowski sums of unions distribute over the blocks.

#include <optional>
#include <string>
#include <vector>

#include "ecvx/config.hpp"
#include "ecvx/conj.hpp"

namespace ecvx {

struct EpiBlock {
  CConjugate conj;
  // When set, beta equal to the scalar value belongs to the block only if
  // the value is attained (sums and unions over rays).
  bool needs_attainment = false;
  std::string label;
};

class EpiCSet {
 public:
  EpiCSet() = default;
  explicit EpiCSet(std::vector<EpiBlock> blocks) : blocks_(std::move(blocks)) {}

  static EpiCSet epi(const CConjugate& c, std::string label = "") {
    return EpiCSet({EpiBlock{c, false, std::move(label)}});
  }

  const std::vector<EpiBlock>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  friend EpiCSet operator|(const EpiCSet& a, const EpiCSet& b) {
    std::vector<EpiBlock> out = a.blocks_;
    out.insert(out.end(), b.blocks_.begin(), b.blocks_.end());
    return EpiCSet(std::move(out));
  }

  /// Minkowski sum.
  friend EpiCSet operator+(const EpiCSet& a, const EpiCSet& b) {
    std::vector<EpiBlock> out;
    for (const EpiBlock& p : a.blocks_)
      for (const EpiBlock& q : b.blocks_)
        out.push_back({c_infconv(p.conj, q.conj), true, p.label + "+" + q.label});
    return EpiCSet(std::move(out));
  }

  bool contains(const W& w, double beta) const {
    for (const EpiBlock& b : blocks_) {
      if (!b.conj.feas.contains(w[1], w[2])) continue;
      Eval e = b.conj.scalar.at(w[0]);
      if (ExtReal(beta) > e.value) return true;
      if (ExtReal(beta) == e.value && (e.attained || !b.needs_attainment)) return true;
    }
    return false;
  }

  /// inf { beta : (w, beta) in S }.
  ExtReal envelope(const W& w) const {
    ExtReal m = ExtReal::plus_inf();
    for (const EpiBlock& b : blocks_)
      if (b.conj.feas.contains(w[1], w[2])) m = min(m, b.conj.scalar(w[0]));
    return m;
  }

 private:
  std::vector<EpiBlock> blocks_;
};

/// The smallest e'-convex set containing S, as the epigraph of a single
/// c-conjugate: k = envelope^{c'} is the maximum of the blockwise
/// c'-conjugates, and the hull is epi k^c.
inline CConjugate eprime_hull(const EpiCSet& S) {
  if (S.empty()) throw Error(ErrorCode::ImproperEnvelope, "envelope is identically +inf");
  std::vector<ConvexFn> parts;
  for (const EpiBlock& b : S.blocks()) parts.push_back(c_prime_conjugate(b.conj));
  ConvexFn k = max_of(parts);
  if (k.dom().is_empty()) throw Error(ErrorCode::ImproperEnvelope, "hull envelope is identically -inf");
  return c_conjugate(k);
}

struct Witness {
  W w{};
  double beta = 0.0;
  bool in_first = false;
  bool in_second = false;
};

struct SetComparison {
  bool equal = true;
  std::optional<Witness> witness;
};

namespace detail {

inline std::vector<double> merged(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// x* samples: the W axis plus finite ends of every scalar domain in reach.
inline std::vector<double> xstar_samples(const std::vector<const EpiCSet*>& sets, const Config& cfg) {
  std::vector<double> xs = cfg.axis();
  for (const EpiCSet* s : sets)
    for (const EpiBlock& b : s->blocks())
      for (double e : {b.conj.scalar.dom().lo(), b.conj.scalar.dom().hi()})
        if (std::isfinite(e) && std::abs(e) <= 4 * cfg.w_window)
          for (double x : {e, nudge(e, -1), nudge(e, +1)}) xs.push_back(x);
  return merged(xs);
}

// alpha samples for a given y*: the axis plus every region boundary.
inline std::vector<double> alpha_samples(const std::vector<const FeasRegion*>& regions, double y,
                                         const std::vector<double>& axis) {
  std::vector<double> as = axis;
  for (const FeasRegion* r : regions) {
    ExtReal m = r->floor(y);
    if (m.finite())
      for (double a : {m.value(), nudge(m.value(), -1), nudge(m.value(), +1)}) as.push_back(a);
  }
  return merged(as);
}

}  // namespace detail

/// Compares two sets on the W grid: envelope values within tolerance and
/// membership at the envelope values (boundary strictness).
inline SetComparison compare_sets(const EpiCSet& A, const EpiCSet& B, const Config& cfg = {}) {
  std::vector<const FeasRegion*> regions;
  for (const EpiCSet* s : {&A, &B})
    for (const EpiBlock& b : s->blocks()) regions.push_back(&b.conj.feas);
  const std::vector<double> axis = cfg.axis();
  const std::vector<double> xs = detail::xstar_samples({&A, &B}, cfg);
  for (double y : axis) {
    for (double a : detail::alpha_samples(regions, y, axis)) {
      for (double x : xs) {
        W w{x, y, a};
        ExtReal ea = A.envelope(w), eb = B.envelope(w);
        double tol = cfg.hull_tol * std::max(1.0, ea.finite() ? std::abs(ea.value()) : 1.0);
        if (!near(ea, eb, tol)) {
          double beta = ea < eb ? (ea.finite() ? ea.value() : eb.finite() ? eb.value() - 1.0 : 0.0)
                                : (eb.finite() ? eb.value() : ea.value() - 1.0);
          return {false, Witness{w, beta, A.contains(w, beta), B.contains(w, beta)}};
        }
        if (!ea.finite()) continue;
        double beta = std::max(ea.value(), eb.value());
        bool ia = A.contains(w, beta), ib = B.contains(w, beta);
        if (ia != ib) return {false, Witness{w, beta, ia, ib}};
      }
    }
  }
  return {};
}

inline SetComparison set_equal(const EpiCSet& A, const EpiCSet& B, const Config& cfg = {}) {
  return compare_sets(A, B, cfg);
}

inline bool is_eprime_convex(const EpiCSet& S, const Config& cfg = {}) {
  std::optional<CConjugate> hull;
  try {
    hull = eprime_hull(S);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ImproperEnvelope) throw;
    return false;
  }
  return compare_sets(S, EpiCSet::epi(*hull), cfg).equal;
}

}  // namespace ecvx
