#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vgc/convex_body.hpp"

namespace vgc {

// Boundary arc parametrized over [0, 1]. Orientation is chosen so that
// perp(y'(t)) points into the domain.
class BoundaryArc {
public:
  enum class Kind { segment, circular, parametric };

  using Curve = std::function<Vec2(double)>;

  static BoundaryArc segment(Vec2 p0, Vec2 p1);
  // Counterclockwise when angle1 > angle0, clockwise otherwise.
  static BoundaryArc circular(Vec2 center, double radius, double angle0, double angle1);
  static BoundaryArc parametric(Curve y, Curve dy, Curve d2y);

  Kind kind() const { return kind_; }
  Vec2 point(double t) const;
  Vec2 tangent(double t) const;   // y'(t)
  Vec2 second(double t) const;    // y''(t)
  double curvature(double t) const;
  Vec2 start() const { return point(0.0); }
  Vec2 end() const { return point(1.0); }

  // Circular arcs: center, radius, angle0, angle1. Segments: p0, p1.
  const std::vector<double>& parameters() const { return params_; }
  // Length bound and a sagitta-style deviation bound used by chord subdivision.
  double length_estimate() const;

private:
  Kind kind_ = Kind::segment;
  std::vector<double> params_;
  Curve y_, dy_, d2y_;
};

enum class CornerClass { nonreentrant, strict_reentrant, nonstrict_reentrant };

struct Corner {
  Vec2 point;
  int arc_in = -1;   // arc ending at the corner
  int arc_out = -1;  // arc starting at the corner
  double opening_angle = 0.0;
  CornerClass cls = CornerClass::nonreentrant;
};

enum class Location { inside, outside, boundary };

struct BoundaryFrame {
  Vec2 point;
  Vec2 normal;  // inward, |normal| = |y'(t)|
  double curvature = 0.0;
};

class Domain {
public:
  // Each loop is a closed chain of arcs in order. The outer loop runs
  // counterclockwise and holes clockwise.
  explicit Domain(std::vector<std::vector<BoundaryArc>> loops);

  static Domain disk(double r, Vec2 center = Vec2::Zero());
  static Domain rectangle(double x0, double y0, double x1, double y1);
  static Domain polygon(const std::vector<Vec2>& vertices);
  // {r0 < |x| < r1, a0 < angle < a1}, with the four corners rounded by fillets of
  // the given radius when fillet > 0.
  static Domain annulus_sector(double r0, double r1, double a0, double a1, double fillet);

  const std::vector<BoundaryArc>& arcs() const { return arcs_; }
  const std::vector<Corner>& corners() const { return corners_; }
  int loop_of(int arc) const { return loop_id_[arc]; }
  std::size_t loop_count() const { return loop_sizes_.size(); }
  std::size_t loop_size(std::size_t l) const { return loop_sizes_[l]; }
  int loop_start(std::size_t l) const { return loop_start_[l]; }

  Vec2 bbox_min() const { return bbox_min_; }
  Vec2 bbox_max() const { return bbox_max_; }
  double diameter() const { return (bbox_max_ - bbox_min_).norm(); }
  bool has_reentrant_corner() const;

  Location contains(const Vec2& x, double tol = 1e-12) const;
  double winding_number(const Vec2& x) const;
  // Euclidean distance from x to the boundary.
  double boundary_distance(const Vec2& x) const;

  BoundaryFrame boundary_frame(int arc, double t) const;
  // Corner index at an arc endpoint, or -1 for the smooth closure of a single-arc loop.
  int corner_at(int arc, double t) const;

  std::string description;

private:
  void validate();
  void classify_corners();

  std::vector<BoundaryArc> arcs_;
  std::vector<int> loop_id_;
  std::vector<std::size_t> loop_sizes_;
  std::vector<int> loop_start_;
  std::vector<Corner> corners_;
  std::vector<int> corner_at_start_;  // corner at t = 0 of each arc, or -1
  std::vector<int> corner_at_end_;
  Vec2 bbox_min_, bbox_max_;
};

// Inward K-normal D gamma°(nu) at a boundary point.
Vec2 k_normal(const Domain& domain, const ConvexBody& body, int arc, double t);
// K-curvature (1/|nu|^2) <D^2 gamma°(nu) nu', nu^perp>; zero on segments.
double k_curvature(const Domain& domain, const ConvexBody& body, int arc, double t);
// Same quantity through the radius of curvature of the body, kappa * r_K.
double k_curvature_via_radius(const Domain& domain, const ConvexBody& body, int arc, double t);

// Curved arcs whose normal passes a direction where the body boundary is flat.
std::vector<std::string> assumption_warnings(const Domain& domain, const ConvexBody& body);

const char* to_string(CornerClass c);

}  // namespace vgc
