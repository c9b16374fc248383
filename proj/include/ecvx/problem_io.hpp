#pragma once

// JSON problem files. Scalars are strings holding a decimal, a rational
// "p/q", "inf" or "-inf" (plain JSON numbers are accepted too). Unknown
// keys are rejected everywhere.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecvx/problem.hpp"

namespace ecvx {

using Json = nlohmann::ordered_json;

struct FunctionDef {
  std::string id;
  std::vector<Piece> pieces;
  friend bool operator==(const FunctionDef& a, const FunctionDef& b) {
    if (a.id != b.id || a.pieces.size() != b.pieces.size()) return false;
    for (std::size_t i = 0; i < a.pieces.size(); ++i)
      if (!(a.pieces[i].interval == b.pieces[i].interval) || !(a.pieces[i].poly == b.pieces[i].poly)) return false;
    return true;
  }
};

struct ConstraintRef {
  std::string id;
  std::string function;
  friend bool operator==(const ConstraintRef&, const ConstraintRef&) = default;
};

struct FileConfig {
  std::optional<std::pair<double, double>> x_window;
  std::optional<int> grid_n;
  std::optional<std::vector<double>> lambda_grid;
  std::optional<double> tolerance;
  std::optional<std::string> constraint_sample;
  std::optional<std::string> zero_multiplier;  // "empty_support" | "domain"
  std::optional<int> w_nodes;
  std::optional<double> w_window;
  std::optional<int> max_active;
  friend bool operator==(const FileConfig&, const FileConfig&) = default;
};

struct ProblemFile {
  std::string name;
  std::vector<FunctionDef> functions;
  std::string f_id, g_id;
  std::vector<ConstraintRef> constraints;
  FileConfig config;
  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Shortest round-tripping text for a double.
inline std::string fmt_double(double v) {
  if (v == Interval::kInf) return "inf";
  if (v == -Interval::kInf) return "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string fmt_ext(const ExtReal& x) { return x.finite() ? fmt_double(x.value()) : x.str(); }

namespace io {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, (path.empty() ? "" : path + ": ") + msg);
}

inline double parse_plain(const std::string& s, const std::string& path) {
  if (s == "inf" || s == "+inf") return Interval::kInf;
  if (s == "-inf") return -Interval::kInf;
  if (s.empty()) fail(path, "empty scalar");
  const char* b = s.c_str();
  char* end = nullptr;
  double v = std::strtod(b, &end);
  if (end != b + s.size() || !std::isfinite(v)) fail(path, "bad scalar \"" + s + "\"");
  return v;
}

inline double scalar(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) fail(path, "expected a scalar");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_plain(s, path);
  double p = parse_plain(s.substr(0, slash), path), q = parse_plain(s.substr(slash + 1), path);
  if (q == 0.0 || !std::isfinite(p) || !std::isfinite(q)) fail(path, "bad rational \"" + s + "\"");
  return p / q;
}

inline void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(path, "unknown key \"" + it.key() + "\"");
}

inline const Json& need(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

inline int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline Interval interval(const Json& j, const std::string& path) {
  only_keys(j, path, {"lo", "lo_closed", "hi", "hi_closed"});
  double lo = scalar(need(j, path, "lo"), path + "/lo"), hi = scalar(need(j, path, "hi"), path + "/hi");
  bool lc = boolean(need(j, path, "lo_closed"), path + "/lo_closed");
  bool hc = boolean(need(j, path, "hi_closed"), path + "/hi_closed");
  if ((lc && !std::isfinite(lo)) || (hc && !std::isfinite(hi)))
    throw Error(ErrorCode::InvalidProblem, path + ": an infinite endpoint cannot be closed");
  Interval I(lo, lc, hi, hc);
  if (I.is_empty()) throw Error(ErrorCode::InvalidProblem, path + ": empty interval");
  return I;
}

inline Json interval_json(const Interval& I) {
  return Json{{"lo", fmt_double(I.lo())},
              {"lo_closed", I.lo_closed()},
              {"hi", fmt_double(I.hi())},
              {"hi_closed", I.hi_closed()}};
}

inline std::string where(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace io

inline ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    auto cut = msg.find(": ", msg.find("parse error"));
    throw Error(ErrorCode::ParseError, io::where(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                                           (cut == std::string::npos ? msg : msg.substr(cut + 2)));
  }
  using namespace io;
  ProblemFile pf;
  only_keys(j, "", {"name", "functions", "objective", "constraints", "config"});
  if (j.contains("name")) pf.name = str(j["name"], "/name");
  const Json& fns = array(need(j, "", "functions"), "/functions");
  for (std::size_t i = 0; i < fns.size(); ++i) {
    std::string path = "/functions/" + std::to_string(i);
    only_keys(fns[i], path, {"id", "pieces"});
    FunctionDef fd;
    fd.id = str(need(fns[i], path, "id"), path + "/id");
    const Json& ps = array(need(fns[i], path, "pieces"), path + "/pieces");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      std::string pp = path + "/pieces/" + std::to_string(k);
      only_keys(ps[k], pp, {"interval", "coeffs"});
      Interval I = interval(need(ps[k], pp, "interval"), pp + "/interval");
      std::vector<double> c;
      const Json& cs = array(need(ps[k], pp, "coeffs"), pp + "/coeffs");
      for (std::size_t m = 0; m < cs.size(); ++m) c.push_back(scalar(cs[m], pp + "/coeffs/" + std::to_string(m)));
      fd.pieces.push_back({I, Poly(c)});
    }
    pf.functions.push_back(std::move(fd));
  }
  const Json& obj = need(j, "", "objective");
  only_keys(obj, "/objective", {"f", "g"});
  pf.f_id = str(need(obj, "/objective", "f"), "/objective/f");
  pf.g_id = str(need(obj, "/objective", "g"), "/objective/g");
  if (j.contains("constraints")) {
    const Json& cs = array(j["constraints"], "/constraints");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string path = "/constraints/" + std::to_string(i);
      only_keys(cs[i], path, {"id", "function"});
      pf.constraints.push_back({str(need(cs[i], path, "id"), path + "/id"),
                                str(need(cs[i], path, "function"), path + "/function")});
    }
  }
  if (j.contains("config")) {
    const Json& c = j["config"];
    only_keys(c, "/config",
              {"x_window", "grid_n", "lambda_grid", "tolerance", "constraint_sample", "zero_multiplier", "w_nodes",
               "w_window", "max_active"});
    FileConfig& fc = pf.config;
    if (c.contains("x_window")) {
      const Json& w = array(c["x_window"], "/config/x_window");
      if (w.size() != 2) fail("/config/x_window", "expected [lo, hi]");
      fc.x_window = {{scalar(w[0], "/config/x_window/0"), scalar(w[1], "/config/x_window/1")}};
    }
    if (c.contains("grid_n")) fc.grid_n = integer(c["grid_n"], "/config/grid_n");
    if (c.contains("lambda_grid")) {
      const Json& l = array(c["lambda_grid"], "/config/lambda_grid");
      std::vector<double> v;
      for (std::size_t i = 0; i < l.size(); ++i) v.push_back(scalar(l[i], "/config/lambda_grid/" + std::to_string(i)));
      fc.lambda_grid = v;
    }
    if (c.contains("tolerance")) fc.tolerance = scalar(c["tolerance"], "/config/tolerance");
    if (c.contains("constraint_sample")) fc.constraint_sample = str(c["constraint_sample"], "/config/constraint_sample");
    if (c.contains("zero_multiplier")) {
      fc.zero_multiplier = str(c["zero_multiplier"], "/config/zero_multiplier");
      if (*fc.zero_multiplier != "empty_support" && *fc.zero_multiplier != "domain")
        fail("/config/zero_multiplier", "expected \"empty_support\" or \"domain\"");
    }
    if (c.contains("w_nodes")) fc.w_nodes = integer(c["w_nodes"], "/config/w_nodes");
    if (c.contains("w_window")) fc.w_window = scalar(c["w_window"], "/config/w_window");
    if (c.contains("max_active")) fc.max_active = integer(c["max_active"], "/config/max_active");
  }
  return pf;
}

inline Json to_json(const ProblemFile& pf) {
  Json j = Json::object();
  if (!pf.name.empty()) j["name"] = pf.name;
  Json fns = Json::array();
  for (const FunctionDef& fd : pf.functions) {
    Json ps = Json::array();
    for (const Piece& p : fd.pieces) {
      Json cs = Json::array();
      for (double c : p.poly.coeffs()) cs.push_back(fmt_double(c));
      ps.push_back(Json{{"interval", io::interval_json(p.interval)}, {"coeffs", cs}});
    }
    fns.push_back(Json{{"id", fd.id}, {"pieces", ps}});
  }
  j["functions"] = fns;
  j["objective"] = Json{{"f", pf.f_id}, {"g", pf.g_id}};
  Json cs = Json::array();
  for (const ConstraintRef& c : pf.constraints) cs.push_back(Json{{"id", c.id}, {"function", c.function}});
  j["constraints"] = cs;
  const FileConfig& fc = pf.config;
  Json c = Json::object();
  if (fc.x_window) c["x_window"] = Json::array({fmt_double(fc.x_window->first), fmt_double(fc.x_window->second)});
  if (fc.grid_n) c["grid_n"] = *fc.grid_n;
  if (fc.lambda_grid) {
    Json l = Json::array();
    for (double v : *fc.lambda_grid) l.push_back(fmt_double(v));
    c["lambda_grid"] = l;
  }
  if (fc.tolerance) c["tolerance"] = fmt_double(*fc.tolerance);
  if (fc.constraint_sample) c["constraint_sample"] = *fc.constraint_sample;
  if (fc.zero_multiplier) c["zero_multiplier"] = *fc.zero_multiplier;
  if (fc.w_nodes) c["w_nodes"] = *fc.w_nodes;
  if (fc.w_window) c["w_window"] = fmt_double(*fc.w_window);
  if (fc.max_active) c["max_active"] = *fc.max_active;
  if (!c.empty()) j["config"] = c;
  return j;
}

inline std::string serialize(const ProblemFile& pf) { return to_json(pf).dump(2) + "\n"; }

inline ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

inline PiecewiseFn function_of(const ProblemFile& pf, const std::string& id) {
  for (const FunctionDef& fd : pf.functions)
    if (fd.id == id) {
      if (fd.pieces.empty()) throw Error(ErrorCode::InvalidProblem, "function " + id + " has no pieces");
      return PiecewiseFn(fd.pieces);
    }
  throw Error(ErrorCode::InvalidProblem, "unknown function id \"" + id + "\"");
}

/// Builds and validates the program described by a file.
inline DCProblem to_problem(const ProblemFile& pf) {
  std::set<std::string> ids;
  for (const FunctionDef& fd : pf.functions)
    if (!ids.insert(fd.id).second) throw Error(ErrorCode::InvalidProblem, "duplicate function id \"" + fd.id + "\"");
  DCProblem p;
  p.f = function_of(pf, pf.f_id);
  p.g = function_of(pf, pf.g_id);
  for (const ConstraintRef& c : pf.constraints) p.constraints.push_back({c.id, function_of(pf, c.function)});
  const FileConfig& fc = pf.config;
  Config& cfg = p.cfg;
  if (fc.x_window) {
    if (!(fc.x_window->first < fc.x_window->second)) throw Error(ErrorCode::InvalidProblem, "empty x_window");
    cfg.x_grid.window_lo = fc.x_window->first;
    cfg.x_grid.window_hi = fc.x_window->second;
  }
  if (fc.grid_n) {
    if (*fc.grid_n < 3) throw Error(ErrorCode::InvalidProblem, "grid_n must be at least 3");
    cfg.x_grid.nodes = *fc.grid_n;
  }
  if (fc.lambda_grid) {
    for (double w : *fc.lambda_grid)
      if (w < 0 || !std::isfinite(w)) throw Error(ErrorCode::InvalidProblem, "lambda_grid entries must be finite and >= 0");
    cfg.lambda_weights = *fc.lambda_grid;
  }
  if (fc.tolerance) {
    if (!(*fc.tolerance > 0)) throw Error(ErrorCode::InvalidProblem, "tolerance must be positive");
    cfg.hull_tol = *fc.tolerance;
  }
  if (fc.zero_multiplier)
    cfg.zero_multiplier = *fc.zero_multiplier == "domain" ? ZeroMultiplier::Domain : ZeroMultiplier::EmptySupport;
  if (fc.w_nodes) {
    if (*fc.w_nodes < 2) throw Error(ErrorCode::InvalidProblem, "w_nodes must be at least 2");
    cfg.w_nodes = *fc.w_nodes;
  }
  if (fc.w_window) {
    if (!(*fc.w_window > 0)) throw Error(ErrorCode::InvalidProblem, "w_window must be positive");
    cfg.w_window = *fc.w_window;
  }
  if (fc.max_active) {
    if (*fc.max_active < 1 || *fc.max_active > 2) throw Error(ErrorCode::InvalidProblem, "max_active must be 1 or 2");
    cfg.max_active = *fc.max_active;
  }
  p.validate();
  return p;
}

/// The file form of an in-memory program (inverse of to_problem up to ids).
inline ProblemFile to_file(const DCProblem& p, const std::string& name = "") {
  ProblemFile pf;
  pf.name = name;
  pf.functions.push_back({"f", p.f.pieces()});
  pf.functions.push_back({"g", p.g.pieces()});
  pf.f_id = "f";
  pf.g_id = "g";
  for (const Constraint& c : p.constraints) {
    std::string fid = c.id == "f" || c.id == "g" ? "h_" + c.id : c.id;
    pf.functions.push_back({fid, c.h.pieces()});
    pf.constraints.push_back({c.id, fid});
  }
  const Config def;
  if (p.cfg.lambda_weights != def.lambda_weights) pf.config.lambda_grid = p.cfg.lambda_weights;
  if (p.cfg.zero_multiplier == ZeroMultiplier::Domain) pf.config.zero_multiplier = "domain";
  return pf;
}

}  // namespace ecvx
