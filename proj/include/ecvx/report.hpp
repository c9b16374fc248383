#pragma once

// Text reports followed by a machine-readable JSON block. Nothing
// time- or machine-dependent is printed, so identical inputs give
// byte-identical output.

#include <sstream>
#include <string>
#include <vector>

#include "ecvx/fixtures.hpp"
#include "ecvx/problem_io.hpp"
#include "ecvx/subdiff.hpp"

namespace ecvx {

struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  Json json = Json::object();

  void add(const std::string& key, const std::string& text, Json value) {
    lines.push_back({key, text});
    json[key] = std::move(value);
  }
  void add(const std::string& key, const std::string& text) { add(key, text, text); }

  std::string str() const {
    std::ostringstream os;
    for (const auto& [k, v] : lines) os << k << ": " << v << "\n";
    os << "--- json ---\n" << json.dump(2) << "\n";
    return os.str();
  }
};

inline Json interval_json(const Interval& I) {
  if (I.is_empty()) return "empty";
  return io::interval_json(I);
}

inline Json lambda_json(const Lambda& l) {
  Json a = Json::array();
  for (double v : l) a.push_back(fmt_double(v));
  return a;
}

inline Json witness_json(const Witness& w) {
  return Json{{"x*", fmt_double(w.w[0])},
              {"y*", fmt_double(w.w[1])},
              {"alpha", fmt_double(w.w[2])},
              {"beta", fmt_double(w.beta)},
              {"in_first", w.in_first},
              {"in_second", w.in_second}};
}

inline std::string witness_text(const Witness& w) {
  return "(x*,y*,alpha;beta) = (" + fmt_double(w.w[0]) + ", " + fmt_double(w.w[1]) + ", " + fmt_double(w.w[2]) +
         "; " + fmt_double(w.beta) + ") in first: " + (w.in_first ? "yes" : "no") +
         ", in second: " + (w.in_second ? "yes" : "no");
}

inline void add_provenance(Report& r, const DCProblem& p, const std::string& sample = "") {
  const Config& c = p.cfg;
  Json weights = Json::array();
  std::string wt;
  for (double w : c.lambda_weights) {
    weights.push_back(fmt_double(w));
    wt += (wt.empty() ? "" : " ") + fmt_double(w);
  }
  Json prov{{"x_window", Json::array({fmt_double(c.x_grid.window_lo), fmt_double(c.x_grid.window_hi)})},
            {"grid_n", c.x_grid.nodes},
            {"inner_nodes", c.inner_nodes},
            {"w_nodes", c.w_nodes},
            {"w_window", fmt_double(c.w_window)},
            {"tolerance", fmt_double(c.hull_tol)},
            {"lambda_weights", weights},
            {"lambda_count", lambda_grid(p).size()},
            {"max_active", c.max_active},
            {"zero_multiplier", c.zero_multiplier == ZeroMultiplier::Domain ? "domain" : "empty_support"},
            {"inner_convention", "infimum over dom G, finite - (+inf) = -inf"},
            {"dual_values", "suprema over the finite multiplier grid (lower bounds of the full suprema)"}};
  if (!sample.empty()) prov["constraint_sample"] = sample;
  r.lines.push_back({"grid", "x in [" + fmt_double(c.x_grid.window_lo) + ", " + fmt_double(c.x_grid.window_hi) +
                                 "], " + std::to_string(c.x_grid.nodes) + " nodes; W axis " +
                                 std::to_string(c.w_nodes) + " nodes in +-" + fmt_double(c.w_window)});
  r.lines.push_back({"multipliers", std::to_string(lambda_grid(p).size()) + " (weights " + wt + ", at most " +
                                        std::to_string(c.max_active) + " active)"});
  r.lines.push_back({"zero multiplier", c.zero_multiplier == ZeroMultiplier::Domain ? "indicator of dom h" : "dropped"});
  if (!sample.empty()) r.lines.push_back({"constraint sample", sample});
  for (const std::string& w : p.warnings) r.lines.push_back({"warning", w});
  r.json["provenance"] = prov;
  if (!p.warnings.empty()) r.json["warnings"] = p.warnings;
}

inline void add_dual(Report& r, const std::string& key, ExtReal value, const std::optional<Lambda>& argmax) {
  std::string text = fmt_ext(value);
  Json j{{"value", fmt_ext(value)}};
  if (argmax) {
    text += " at lambda = " + lambda_str(*argmax);
    j["argmax"] = lambda_json(*argmax);
  }
  r.add(key, text, j);
}

inline Report eval_report(const DCProblem& p, const std::string& name = "", const std::string& sample = "") {
  Report r;
  if (!name.empty()) r.add("problem", name);
  DualityReport d = tfl_strong_duality(p, false);
  r.add("A", d.A.str(), interval_json(d.A));
  r.add("B", d.B.str(), interval_json(d.B));
  r.add("v(P)", fmt_ext(d.vP));
  r.add("inf over B", fmt_ext(d.inf_B));
  add_dual(r, "v(DL)", d.vDL, d.lDL);
  add_dual(r, "v(DL bar)", d.vDLbar, d.lDLbar);
  add_dual(r, "v(DL tilde)", d.vDLtilde, d.lDLtilde);
  r.add("g e-convex", d.g_econvex ? "true" : "false", d.g_econvex);
  r.add("classification", gap_str(d.gap));
  add_provenance(r, p, sample);
  return r;
}

inline void add_condition(Report& r, const std::string& key, const ConditionResult& c) {
  std::string text = c.holds ? "true" : "false";
  Json j{{"holds", c.holds}};
  if (c.witness) {
    text += "; witness " + witness_text(*c.witness);
    j["witness"] = witness_json(*c.witness);
  }
  if (!c.note.empty()) {
    text += "; " + c.note;
    j["note"] = c.note;
  }
  r.add(key, text, j);
}

/// which: ac, eccq, eccq2, ecc or all.
inline Report check_report(const DCProblem& p, const std::string& which, const std::string& name = "",
                           const std::string& sample = "") {
  Report r;
  if (!name.empty()) r.add("problem", name);
  bool all = which == "all";
  Interval A = feasible_set(p), B = set_B(p);
  r.add("A", A.str(), interval_json(A));
  r.add("B", B.str(), interval_json(B));
  if (all || which == "ac") {
    if (B.is_empty()) add_condition(r, "AC", {false, std::nullopt, "B is empty"});
    else add_condition(r, "AC", check_AC(p.f, PiecewiseFn::indicator(B), p.cfg));
  }
  if (all || which == "eccq") add_condition(r, "ECCQ", check_ECCQ(p));
  if (all || which == "eccq2") add_condition(r, "ECCQII", check_ECCQII(p));
  if (all || which == "ecc") add_condition(r, "ECC", check_ECC(p));
  if (all) {
    bool ge = is_econvex(p.g, p.cfg);
    r.add("g e-convex", ge ? "true" : "false", ge);
    CrossValidation cv = thm31_cross_validate(p);
    r.add("cross-validation",
          std::string(cv.applicable ? "hypotheses hold" : "hypotheses not met (diagnostic)") +
              "; set test " + (cv.ecc ? "true" : "false") + ", conjugate formula " + (cv.formula ? "true" : "false") +
              ", subdifferential identity " + (cv.subdiff ? "true" : "false") + (cv.agree() ? " (agree)" : " (disagree)"),
          Json{{"applicable", cv.applicable},
               {"ecc", cv.ecc},
               {"formula", cv.formula},
               {"subdiff", cv.subdiff},
               {"agree", cv.agree()}});
  }
  add_provenance(r, p, sample);
  return r;
}

inline Report reproduce_report(const fixtures::Outcome& o) {
  Report r;
  r.add("example", o.id);
  Json rows = Json::array();
  for (const fixtures::Row& row : o.rows) {
    r.lines.push_back({row.name, std::string(row.pass ? "PASS" : "FAIL") + " (expected " + row.expected + ", got " +
                                     row.actual + ")"});
    rows.push_back(Json{{"check", row.name}, {"expected", row.expected}, {"actual", row.actual}, {"pass", row.pass}});
  }
  r.json["checks"] = rows;
  r.add("result", o.pass() ? "PASS" : "FAIL");
  return r;
}

inline Report subdiff_report(const PiecewiseFn& f, double xbar, double eps, const Config& cfg) {
  if (!f(xbar).finite()) throw Error(ErrorCode::OutOfDomain, "x = " + fmt_double(xbar) + " is outside dom f");
  if (eps < 0) throw Error(ErrorCode::InvalidProblem, "eps must be >= 0");
  Report r;
  CSubdiff c = c_subdiff(f, xbar, eps);
  r.add("x", fmt_double(xbar));
  r.add("eps", fmt_double(eps));
  r.add("x* set", c.xstar.str(), interval_json(c.xstar));
  r.add("(y*,alpha) region", c.feas.describe());
  CSubdiff h = c_subdiff(SubdiffData::eco_of(f), xbar, eps);
  bool inc = h.xstar.contains(c.xstar);
  r.add("contained in hull subdifferential", inc ? "true" : "false", inc);
  Lemma9Result l = lemma9_reconstruct(f, xbar, cfg);
  r.add("reconstruction residual", fmt_double(l.max_residual),
        Json{{"max", fmt_double(l.max_residual)}, {"points", l.points}, {"ok", l.ok}});
  return r;
}

}  // namespace ecvx
