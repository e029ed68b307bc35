#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "vgc/problem_io.hpp"
#include "vgc/verify.hpp"

using namespace vgc;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, verification_failed = 1, input_error = 2, solver_failure = 3 };

struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string problem_path;
  std::string out = ".";
  std::optional<int> grid;
  std::optional<double> tau, eps, delta;
  std::vector<std::string> overrides;
  std::vector<double> at;
  std::optional<int> refine;
  bool dump_config = false;
};

ProblemConfig load(const Options& o) {
  ProblemConfig cfg = load_problem(o.problem_path);
  for (const auto& s : o.overrides) apply_override(cfg, s);
  if (o.grid) cfg.cells = *o.grid;
  if (o.tau) cfg.tau = *o.tau;
  if (o.eps) cfg.eps = *o.eps;
  if (o.delta) cfg.delta = *o.delta;
  if (o.refine) cfg.refine = *o.refine;
  return cfg;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p);
  if (!f) throw InputFailure("cannot write " + p.string());
  f << content;
}

Problem prepare(const ProblemConfig& cfg) {
  Problem p = build_problem(cfg);
  for (const auto& w : p.functional.audit_warnings()) std::cerr << "warning: " << w << "\n";
  for (const auto& w : assumption_warnings(p.domain, p.body)) std::cerr << "warning: " << w << "\n";
  return p;
}

std::shared_ptr<const DistanceField> field_for(const Problem& p) {
  return std::make_shared<const DistanceField>(sample_field(p.domain, p.body, p.grid));
}

Solution solve(const Problem& p, const ProblemConfig& cfg, std::shared_ptr<const DistanceField> field) {
  const SolverConfig sc = build_solver_config(cfg);
  Solution s;
  try {
    if (cfg.method == "penalized" || cfg.eps > 0.0) s = solve_penalized(p, field, cfg.eps, cfg.delta, sc);
    else s = solve_double_obstacle(p, field, sc);
  } catch (const InfeasibleEps& e) {
    throw InputFailure(e.what());
  } catch (const InvalidProblem& e) {
    throw InputFailure(e.what());
  } catch (const Error& e) {
    throw SolverFailure(e.what());
  }
  return s;
}

void write_solution(const fs::path& dir, const Problem& p, const Solution& s) {
  std::ofstream f(dir / "u.csv");
  write_grid_header(f, s.grid);
  f << "i,j,x,y,u,label\n";
  for (int j = 0; j < s.grid.ny; ++j) {
    for (int i = 0; i < s.grid.nx; ++i) {
      const std::size_t k = s.grid.index(i, j);
      const Vec2 c = s.grid.center(i, j);
      f << i << "," << j << "," << format_double(c.x()) << "," << format_double(c.y()) << ","
        << format_double(s.u[k]) << "," << static_cast<int>(s.regions[k]) << "\n";
    }
  }
  nlohmann::ordered_json j;
  j["energy"] = s.energy;
  j["iterations"] = s.iterations;
  j["kkt_residual"] = s.kkt_residual;
  j["max_gauge_of_gradient"] = max_gauge_of_gradient(s, p.body);
  j["plastic_cell_count"] = count_region(s, Region::plastic_plus) + count_region(s, Region::plastic_minus);
  j["status"] = to_string(s.status);
  write_file(dir / "summary.json", j.dump(2) + "\n");
}

void write_field(const fs::path& path, const DistanceField& f, bool ridge_only) {
  std::ofstream os(path);
  if (!os) throw InputFailure("cannot write " + path.string());
  write_field_csv(os, f, ridge_only);
}

int run_gauge_eval(const Options& o) {
  const ProblemConfig cfg = load(o);
  const ConvexBody body = build_body(cfg);
  if (o.at.size() != 2) throw InputFailure("gauge-eval needs --at x y");
  const Vec2 x(o.at[0], o.at[1]);
  nlohmann::ordered_json j;
  j["body"] = body.describe();
  j["x"] = {x.x(), x.y()};
  j["gauge"] = body.gauge(x);
  j["polar_gauge"] = body.polar_gauge(x);
  if (x.norm() > 0.0) {
    const Vec2 sg = body.subgradient(x);
    j["gradient"] = {sg.x(), sg.y()};
    const SupportPoint sp = body.support_point(x);
    j["support_point"] = {sp.point.x(), sp.point.y()};
    j["support_ambiguous"] = sp.ambiguous;
  }
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  write_file(fs::path(o.out) / "gauge.json", text);
  return ok;
}

int run_field(const Options& o, bool ridge_only) {
  const ProblemConfig cfg = load(o);
  const Problem p = prepare(cfg);
  const auto field = field_for(p);
  write_field(fs::path(o.out) / (ridge_only ? "ridge.csv" : "field.csv"), *field, ridge_only);
  return ok;
}

int run_solve(const Options& o) {
  const ProblemConfig cfg = load(o);
  const Problem p = prepare(cfg);
  const Solution s = solve(p, cfg, field_for(p));
  write_solution(o.out, p, s);
  if (!s.converged()) {
    std::cerr << "solver did not converge: " << to_string(s.status) << "\n";
    return solver_failure;
  }
  return ok;
}

int run_verify(const Options& o, bool with_fields) {
  const ProblemConfig cfg = load(o);
  const Problem p = prepare(cfg);
  const auto field = field_for(p);
  if (with_fields) {
    write_field(fs::path(o.out) / "field.csv", *field, false);
    write_field(fs::path(o.out) / "ridge.csv", *field, true);
  }
  const Solution s = solve(p, cfg, field);
  write_solution(o.out, p, s);
  if (!s.converged()) {
    std::cerr << "solver did not converge: " << to_string(s.status) << "\n";
    return solver_failure;
  }
  VerificationReport report = verify_solution(p, s);
  if (cfg.refine > 0) {
    std::vector<Solution> fine;
    std::vector<const Solution*> seq{&s};
    ProblemConfig c = cfg;
    fine.reserve(cfg.refine);
    for (int r = 0; r < cfg.refine; ++r) {
      c.cells *= 2;
      const Problem pr = build_problem(c);
      fine.push_back(solve(pr, c, field_for(pr)));
      if (!fine.back().converged()) return solver_failure;
    }
    for (const auto& f : fine) seq.push_back(&f);
    report.checks.push_back(check_w2inf_stability(seq, p.domain));
  }
  write_file(fs::path(o.out) / "report.json", report.to_json() + "\n");
  for (const auto& c : report.checks)
    std::cout << c.name << ": " << to_string(c.status) << " (measured " << format_double(c.measured) << ", threshold "
              << format_double(c.threshold) << ")" << (c.exploratory ? " [exploratory]" : "") << "\n";
  return report.failed() ? verification_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-constrained variational problems on planar domains"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("problem", o.problem_path, "Problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--grid", o.grid, "Cells across the longer side");
    sub->add_option("--tau", o.tau, "Load tau");
    sub->add_option("--eps", o.eps, "Mollification radius");
    sub->add_option("--delta", o.delta, "Penalty width");
    sub->add_option("--set", o.overrides, "Override section.key=value");
    sub->add_flag("--dump-config", o.dump_config, "Print the effective problem file and exit");
  };
  auto* gauge = app.add_subcommand("gauge-eval", "Evaluate gauge, polar gauge and gradient at a point");
  common(gauge);
  gauge->add_option("--at", o.at, "Point x y")->expected(2);
  auto* field = app.add_subcommand("distance-field", "Write the sampled distance field to field.csv");
  common(field);
  auto* ridge = app.add_subcommand("ridge", "Write ridge cells to ridge.csv");
  common(ridge);
  auto* solve_cmd = app.add_subcommand("solve", "Solve and write u.csv and summary.json");
  common(solve_cmd);
  auto* verify = app.add_subcommand("verify", "Solve, run the structural checks and write report.json");
  common(verify);
  verify->add_option("--refine", o.refine, "Extra grid refinements for the regularity check");
  auto* pipeline = app.add_subcommand("pipeline", "distance-field, solve and verify in sequence");
  common(pipeline);
  pipeline->add_option("--refine", o.refine, "Extra grid refinements for the regularity check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  try {
    if (o.dump_config) {
      std::cout << dump_problem(load(o));
      return ok;
    }
    fs::create_directories(o.out);
    if (gauge->parsed()) return run_gauge_eval(o);
    if (field->parsed()) return run_field(o, false);
    if (ridge->parsed()) return run_field(o, true);
    if (solve_cmd->parsed()) return run_solve(o);
    if (verify->parsed()) return run_verify(o, false);
    if (pipeline->parsed()) return run_verify(o, true);
  } catch (const SolverFailure& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return solver_failure;
  } catch (const InputFailure& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
