#pragma once

#include <Eigen/Sparse>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vgc/distance.hpp"

namespace vgc {

// F(Z) = 1/2 <A Z, Z> and g(v) = c v^2 / 2 - tau v.
struct FunctionalSpec {
  enum class FKind { half_square, quadratic };
  enum class GKind { linear, quadratic };

  FKind f_kind = FKind::half_square;
  Mat2 A = Mat2::Identity();
  GKind g_kind = GKind::linear;
  double c = 0.0;
  double tau = 0.0;
  // Growth constants c1..c9 when supplied; informational only.
  std::optional<std::array<double, 9>> bound_constants;

  static FunctionalSpec make(FKind f, const Mat2& A, GKind g, double c, double tau);

  double F(const Vec2& z) const { return 0.5 * z.dot(A * z); }
  Vec2 DF(const Vec2& z) const { return A * z; }
  const Mat2& D2F() const { return A; }
  double g(double v) const { return 0.5 * c * v * v - tau * v; }
  double dg(double v) const { return c * v - tau; }
  double d2g() const { return c; }
  double c8() const;  // smallest eigenvalue of D^2 F
  double c9() const;  // largest eigenvalue of D^2 F

  void validate() const;
  std::vector<std::string> audit_warnings() const;
};

struct Problem {
  Domain domain;
  ConvexBody body;
  FunctionalSpec functional;
  Grid grid;
  double eps = 0.0;
};

// Cells taking part in a solve and their links to the rest of the grid.
// Direction order is east, west, north, south.
struct Discretization {
  Grid grid;
  std::vector<int> unknown;        // per cell: unknown index or -1
  std::vector<std::size_t> cell;   // per unknown: cell index
  std::vector<std::array<int, 4>> nb;        // neighbour unknown, or -1 when pinned
  std::vector<std::array<double, 4>> theta;  // distance to the neighbour value, in cells
  std::vector<std::array<double, 4>> value;  // pinned neighbour value

  std::size_t size() const { return cell.size(); }
  // Dirichlet zero on the curved boundary, distances found by bisection.
  static Discretization from_domain(const Domain& domain, const Grid& grid);
  // Unknowns on the mask; neighbours off the mask pinned to the given values one cell away.
  // With a level function, positive on the mask, the boundary sits at its linear zero
  // crossing and the pinned value is interpolated there.
  static Discretization from_mask(const Grid& grid, const std::vector<char>& mask, const std::vector<double>& pinned,
                                  const std::vector<double>& level = {});

  // Second-order centred gradient at an unknown, aware of boundary distances.
  Vec2 gradient(const Eigen::VectorXd& u, std::size_t p) const;
};

// Quadrature of integral F(Du) + g(u): E(u) = u^T K u / 2 + k^T u + c0 + h^2 sum g(u_i).
class DiscreteEnergy {
public:
  DiscreteEnergy(std::shared_ptr<const Discretization> disc, const FunctionalSpec& fs);

  double value(const Eigen::VectorXd& u) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const;
  const Eigen::SparseMatrix<double>& hessian() const { return H_; }  // includes c h^2 I
  const Discretization& disc() const { return *disc_; }
  std::shared_ptr<const Discretization> disc_ptr() const { return disc_; }
  const FunctionalSpec& functional() const { return fs_; }

private:
  std::shared_ptr<const Discretization> disc_;
  FunctionalSpec fs_;
  Eigen::SparseMatrix<double> H_;
  Eigen::VectorXd k_;
  double c0_ = 0.0;
};

enum class SolveStatus { converged, max_iters, stalled };
enum class Region { elastic = 0, plastic_plus = 1, plastic_minus = 2, free_boundary = 3, exterior = 4 };

struct SolverConfig {
  enum class Method { projected_newton, projected_gradient };
  Method method = Method::projected_newton;
  int max_iters = 500;
  double tol = 1e-9;
  double contact_tol = -1.0;  // negative: 1e-9 * diam(U)
};

struct Solution {
  Grid grid;
  std::shared_ptr<const DiscreteEnergy> energy_model;
  std::shared_ptr<const DistanceField> field;
  Eigen::VectorXd u_free;           // values at the unknowns
  std::vector<double> u;            // per cell, zero off the unknowns
  std::vector<double> lower, upper; // obstacles per unknown
  std::vector<Region> regions;      // per cell
  std::vector<char> gradient_plastic;  // per cell: gamma°(D_h u) >= 1 - tol
  double energy = 0.0;
  int iterations = 0;
  double kkt_residual = 0.0;
  SolveStatus status = SolveStatus::stalled;
  std::vector<double> energy_history;
  double lipschitz = 1.0;  // max |z| over the polar body

  const Discretization& disc() const { return energy_model->disc(); }
  bool converged() const { return status == SolveStatus::converged; }
};

struct Obstacles {
  std::vector<double> phi, psi;  // per cell
  std::vector<char> feasible;    // per cell: inside U and phi < psi
  double delta = 0.0;
};

Obstacles build_obstacles(const Problem& problem, const DistanceField& field, double eps);

Solution solve_double_obstacle(const Problem& problem, const SolverConfig& cfg = {});
Solution solve_double_obstacle(const Problem& problem, std::shared_ptr<const DistanceField> field,
                               const SolverConfig& cfg = {});

// Penalty function used by the penalized solver and its primitive.
double penalty_beta(double t, double delta);
double penalty_beta_prime(double t, double delta);
double penalty_beta_primitive(double t, double delta);

Solution solve_penalized(const Problem& problem, double eps, double delta, const SolverConfig& cfg = {});
Solution solve_penalized(const Problem& problem, std::shared_ptr<const DistanceField> field, double eps,
                         double delta, const SolverConfig& cfg = {});

// Energy of a per-cell field (zero outside U) under the Dirichlet discretization.
double energy(const Problem& problem, const std::vector<double>& u);

// Plastic where the obstacle gap is at most tol; the gradient classification uses
// gamma°(D_h u) >= 1 - grad_tol (negative: 2 h Lip).
void classify_regions(Solution& sol, const ConvexBody& body, double tol, double grad_tol = -1.0);

double free_boundary_radius(const Solution& sol, const Vec2& center);
double interpolate(const Solution& sol, const Vec2& x);
int count_region(const Solution& sol, Region r);
double max_gauge_of_gradient(const Solution& sol, const ConvexBody& body);

struct PipelineResult {
  std::vector<Solution> stages;
  std::vector<double> differences;  // L-infinity distance between consecutive stages
  double final_audit = 0.0;         // max gamma°(D_h u) of the last stage with the original body
};

PipelineResult smoothing_pipeline(const Problem& problem, int k_max, const SolverConfig& cfg = {});

const char* to_string(SolveStatus s);

}  // namespace vgc
