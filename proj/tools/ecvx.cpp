#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ecvx/report.hpp"

namespace {

int exit_code(ecvx::ErrorCode c) {
  switch (c) {
    case ecvx::ErrorCode::ParseError:
    case ecvx::ErrorCode::UnknownExample:
      return 2;
    default:
      return 3;
  }
}

struct Loaded {
  ecvx::ProblemFile file;
  ecvx::DCProblem problem;
};

Loaded load(const std::string& path) {
  Loaded l{ecvx::load_problem_file(path), {}};
  l.problem = ecvx::to_problem(l.file);
  return l;
}

std::string sample_of(const ecvx::ProblemFile& f) { return f.config.constraint_sample.value_or(""); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrange duality diagnostics for one-dimensional DC programs"};
  app.require_subcommand(1);

  std::string file, which = "all", example;
  int lambda_max = -1, grid = -1;
  double tol = -1, at = 0, eps = 0;
  std::string fn_id;

  CLI::App* eval = app.add_subcommand("eval", "optimal values, dual values and gap classification");
  eval->add_option("file", file, "problem file (JSON)")->required();
  eval->add_option("--lambda-max", lambda_max, "largest multiplier weight kept in the grid");
  eval->add_option("--grid", grid, "nodes of the 1-D scans")->check(CLI::Range(3, 1 << 20));
  eval->add_option("--tol", tol, "comparison tolerance")->check(CLI::PositiveNumber);

  CLI::App* check = app.add_subcommand("check", "regularity conditions with witnesses");
  check->add_option("file", file, "problem file (JSON)")->required();
  check->add_option("--check", which, "condition")->check(CLI::IsMember({"ac", "eccq", "eccq2", "ecc", "all"}));

  CLI::App* repro = app.add_subcommand("reproduce", "run a built-in example against its expected values");
  std::vector<std::string> ids;
  for (const auto& e : ecvx::fixtures::examples()) ids.push_back(e.id);
  repro->add_option("id", example, "example id")->required()->check(CLI::IsMember(ids));

  CLI::App* sub = app.add_subcommand("subdiff", "epsilon-c-subdifferential of f at a point");
  sub->add_option("file", file, "problem file (JSON)")->required();
  sub->add_option("--at", at, "point x")->required();
  sub->add_option("--eps", eps, "epsilon >= 0")->required();
  sub->add_option("--fn", fn_id, "function id (default: the objective's f)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) {
      Loaded l = load(file);
      ecvx::Config& cfg = l.problem.cfg;
      if (lambda_max >= 0) {
        std::vector<double> kept;
        for (double w : cfg.lambda_weights)
          if (w <= lambda_max) kept.push_back(w);
        cfg.lambda_weights = kept;
      }
      if (grid > 0) cfg.x_grid.nodes = grid;
      if (tol > 0) cfg.hull_tol = tol;
      std::cout << ecvx::eval_report(l.problem, l.file.name, sample_of(l.file)).str();
      return 0;
    }
    if (*check) {
      Loaded l = load(file);
      std::cout << ecvx::check_report(l.problem, which, l.file.name, sample_of(l.file)).str();
      return 0;
    }
    if (*repro) {
      ecvx::fixtures::Outcome o = ecvx::fixtures::reproduce(example);
      std::cout << ecvx::reproduce_report(o).str();
      return o.pass() ? 0 : 4;
    }
    if (*sub) {
      Loaded l = load(file);
      ecvx::PiecewiseFn f = fn_id.empty() ? l.problem.f : ecvx::function_of(l.file, fn_id);
      std::cout << ecvx::subdiff_report(f, at, eps, l.problem.cfg).str();
      return 0;
    }
  } catch (const ecvx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 0;
}
