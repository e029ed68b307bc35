#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vgc/common.hpp"

namespace vgc {

// Boundary radius of a star-shaped body in polar form, theta -> rho(theta).
struct RadialFunction {
  std::function<double(double)> rho;
  std::function<double(double)> drho;
  std::function<double(double)> d2rho;
};

struct GaugeBounds {
  double c_lower = 0.0;  // c_lower |x| <= gamma(x)
  double c_upper = 0.0;  // gamma(x) <= c_upper |x|
};

struct GaugeJet {
  double value = 0.0;
  Vec2 gradient = Vec2::Zero();
  std::optional<Mat2> hessian;
};

// Point of the boundary with a prescribed outward normal.
struct SupportPoint {
  Vec2 point = Vec2::Zero();
  bool ambiguous = false;  // polygon edge normal: point is the edge midpoint
};

namespace detail {
class BodyImpl;
}

class ConvexBody {
public:
  enum class Kind { polygon, smooth, disk, ellipse, p_ball };

  static ConvexBody disk(double r);
  static ConvexBody ellipse(double a, double b);
  static ConvexBody p_ball(double p);
  static ConvexBody polygon(std::vector<Vec2> vertices);
  static ConvexBody smooth(RadialFunction rho);

  Kind kind() const;
  bool reflected() const { return sign_ < 0; }
  bool is_smooth() const { return kind() != Kind::polygon; }
  bool strictly_convex() const;

  double gauge(const Vec2& x) const;
  double polar_gauge(const Vec2& x) const;
  Vec2 grad_gauge(const Vec2& x) const;
  Vec2 grad_polar_gauge(const Vec2& x) const;
  Mat2 hess_gauge(const Vec2& x) const;
  Mat2 hess_polar_gauge(const Vec2& x) const;
  GaugeJet gauge_jet(const Vec2& x) const;
  GaugeJet polar_gauge_jet(const Vec2& x) const;

  // Non-throwing variants used by the distance and solver code. For a polygon the
  // gradient is a subgradient and the Hessian is zero.
  Vec2 subgradient(const Vec2& x) const;
  Mat2 hess_gauge_or_zero(const Vec2& x) const;
  SupportPoint support_point(const Vec2& x) const;

  // Radius of curvature of the boundary at the point with outward normal n.
  double curvature_radius(const Vec2& n) const;

  ConvexBody polar_body() const;
  ConvexBody reflect() const;
  ConvexBody smooth_approximation(int k) const;

  GaugeBounds gauge_bounds() const;
  const std::vector<Vec2>& degenerate_normals() const { return degenerate_; }
  double diameter() const;
  double max_radius() const;     // max |y| over the body
  double min_support() const;    // min over unit directions of the support function

  // Parameters as given at construction; polygon vertices for the polygon kind.
  std::vector<double> parameters() const;
  const std::vector<Vec2>& vertices() const;
  std::string describe() const;

private:
  ConvexBody(std::shared_ptr<const detail::BodyImpl> impl, double sign);
  void init_cached();

  std::shared_ptr<const detail::BodyImpl> impl_;
  double sign_ = 1.0;
  std::vector<Vec2> degenerate_;
};

}  // namespace vgc
