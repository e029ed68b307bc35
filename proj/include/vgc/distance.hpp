#pragma once

#include <iosfwd>
#include <vector>

#include "vgc/convex_body.hpp"
#include "vgc/domain.hpp"
#include "vgc/grid.hpp"

namespace vgc {

struct DistanceOptions {
  double tol_val = 1e-8;         // multiplicity band in gauge value, times diam(U)
  double cluster_radius = 1e-6;  // hit merge radius, times diam(U)
  double ridge_band = 1e-3;      // |1 - kappa_K d| below this is labelled ridge
  double residual_margin = 1e-10;
  int seeds = 32;
};

struct Hit {
  Vec2 point = Vec2::Zero();
  int arc = -1;
  double t = 0.0;
  int corner = -1;  // set when the hit is an arc endpoint at a corner
};

struct ClosestPointResult {
  double distance = 0.0;
  std::vector<Hit> hits;
  int multiplicity() const { return static_cast<int>(hits.size()); }
};

ClosestPointResult closest_points(const Domain& domain, const ConvexBody& body, const Vec2& x,
                                  const DistanceOptions& opt = {});

double distance(const Domain& domain, const ConvexBody& body, const Vec2& x);
double distance_reflected(const Domain& domain, const ConvexBody& body, const Vec2& x);

Vec2 grad_distance(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt = {});
Mat2 hess_distance(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt = {});
// Trace of hess_distance.
double laplacian_distance(const Domain& domain, const ConvexBody& body, const Vec2& x,
                          const DistanceOptions& opt = {});
double ridge_residual(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt = {});

enum class RidgeLabel { off_ridge = 0, multiplicity_ridge = 1, curvature_ridge = 2, exterior = 3 };

struct DistanceField {
  Grid grid;
  std::vector<char> inside;
  std::vector<double> d, dbar;
  std::vector<Hit> hit, hit_bar;  // first closest point of each cell
  std::vector<int> multiplicity, multiplicity_bar;
  std::vector<double> residual, residual_bar;  // NaN where undefined
  std::vector<RidgeLabel> label, label_bar;
};

DistanceField sample_field(const Domain& domain, const ConvexBody& body, const Grid& grid,
                           const DistanceOptions& opt = {});

// Rows `i,j,x,y,d,dbar,label` after the grid header; with ridge_only only
// ridge cells are written.
void write_field_csv(std::ostream& os, const DistanceField& f, bool ridge_only = false);

}  // namespace vgc
