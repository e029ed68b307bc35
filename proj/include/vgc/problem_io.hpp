#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vgc/solver.hpp"

namespace vgc {

// One boundary record of a custom loop: `segment x0 y0 x1 y1` or `arc cx cy r a0 a1`.
struct ArcRecord {
  std::string kind;
  std::vector<double> values;
  bool operator==(const ArcRecord&) const = default;
};

// Plain data behind a problem file. Sections are [body], [domain], [functional],
// [grid], [solver] and [verify]; every line inside a section is `key = value`.
struct ProblemConfig {
  std::string body_kind = "disk";  // disk, ellipse, p_ball, polygon
  std::vector<double> body_params{1.0};

  std::string domain_kind = "disk";  // disk, rect, polygon, annulus_sector, loops
  std::vector<double> domain_params{1.0};
  std::vector<std::vector<ArcRecord>> loops;

  std::string f_kind = "half_square";  // half_square, quadratic
  std::vector<double> f_params;        // a11 a12 a22 for quadratic
  std::string g_kind = "linear";       // linear, quadratic
  double c = 0.0;
  double tau = 1.0;

  int cells = 64;
  std::optional<std::array<double, 4>> bbox;  // xmin xmax ymin ymax

  std::string method = "projected_newton";  // projected_newton, projected_gradient, penalized
  int max_iters = 500;
  double tol = 1e-9;
  double eps = 0.0;
  double delta = 1e-4;
  double contact_tol = -1.0;
  int smoothing_levels = 8;

  int refine = 0;  // extra refinements used by the regularity check

  bool operator==(const ProblemConfig&) const = default;
};

ProblemConfig parse_problem(std::istream& in, const std::string& source = "<input>");
ProblemConfig load_problem(const std::string& path);
std::string dump_problem(const ProblemConfig& cfg);

// `section.key=value`, with the same value syntax as the file.
void apply_override(ProblemConfig& cfg, const std::string& assignment);

ConvexBody build_body(const ProblemConfig& cfg);
Domain build_domain(const ProblemConfig& cfg);
FunctionalSpec build_functional(const ProblemConfig& cfg);
Grid build_grid(const ProblemConfig& cfg, const Domain& domain);
Problem build_problem(const ProblemConfig& cfg);
SolverConfig build_solver_config(const ProblemConfig& cfg);

}  // namespace vgc
