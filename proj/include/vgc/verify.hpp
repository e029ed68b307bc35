#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vgc/solver.hpp"

namespace vgc {

enum class CheckStatus { pass, fail, skipped };

struct Check {
  std::string name;
  std::string anchor;  // statement being checked, in words
  CheckStatus status = CheckStatus::skipped;
  double measured = 0.0;
  double threshold = 0.0;
  std::string reason;
  bool exploratory = false;
  std::vector<std::pair<int, int>> locations;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool failed() const;
  const Check* find(const std::string& name) const;
  std::string to_json() const;
};

// max gamma°(D_h u) <= 1 + factor h Lip.
Check check_gradient_constraint(const Solution& sol, const ConvexBody& body, double factor = 4.0);
// Obstacle-contact plastic set against {gamma°(D_h u) >= 1 - tol}; skipped unless K is strictly convex.
Check check_ep_characterization(const Solution& sol, const ConvexBody& body, double max_fraction = 0.05);
// Cell distance between plastic cells and ridge cells of the matching distance.
Check check_ridge_noncontact(const Solution& sol, const DistanceField& field, bool exploratory = false,
                             double min_cells = 2.0);
// Cells on the segment from a plastic cell to its closest boundary point stay plastic.
Check check_segment_plasticity(const Solution& sol, const DistanceField& field, int n_samples = 50,
                               double min_fraction = 0.99);
// Interior max second difference across refinements h, h/2, h/4.
Check check_w2inf_stability(const std::vector<const Solution*>& sols, const Domain& domain, double max_ratio = 1.2);
double interior_second_difference(const Solution& sol, const Domain& domain, double min_distance);
// <grad I_h(u), v - u> >= -tol for random feasible v.
Check check_variational_inequality(const Solution& sol, int n_samples = 20, double tol = 1e-8,
                                   unsigned seed = 20240601u);
// Discrete Euler-Lagrange residual <= tol on P+ and >= -tol on P-.
Check check_euler_lagrange_signs(const Solution& sol, double tol = 1e-8);

VerificationReport verify_solution(const Problem& problem, const Solution& sol);

const char* to_string(CheckStatus s);

}  // namespace vgc
