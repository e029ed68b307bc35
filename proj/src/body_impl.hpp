#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vgc/convex_body.hpp"

namespace vgc::detail {

// Body evaluated without reflection. Inputs are nonzero unless stated.
class BodyImpl {
public:
  virtual ~BodyImpl() = default;

  virtual ConvexBody::Kind kind() const = 0;
  virtual double gauge(const Vec2& x) const = 0;
  virtual Vec2 grad_gauge(const Vec2& x, bool* kink) const = 0;
  virtual Mat2 hess_gauge(const Vec2& x) const = 0;
  virtual double polar_gauge(const Vec2& x) const = 0;
  virtual SupportPoint support(const Vec2& x) const = 0;
  virtual Mat2 hess_polar(const Vec2& x) const = 0;
  virtual double curvature_radius(const Vec2& n) const = 0;
  virtual std::shared_ptr<const BodyImpl> polar() const = 0;

  virtual std::vector<Vec2> degenerate_normals() const { return {}; }
  virtual bool strictly_convex() const { return true; }
  virtual std::vector<double> parameters() const { return {}; }
  virtual const std::vector<Vec2>* vertices() const { return nullptr; }
  virtual std::string describe() const = 0;
  // Directions where the support function has a kink.
  virtual std::vector<double> support_kinks() const { return {}; }

  virtual GaugeBounds gauge_bounds() const;
  virtual double diameter() const;
  virtual double max_radius() const;
  virtual double min_support() const;
};

using BodyPtr = std::shared_ptr<const BodyImpl>;

// Star-shaped body given by its radial function. The gauge side has closed forms;
// the support side needs the inverse Gauss map, found by a bracketed Newton
// iteration seeded from a table of normal angles.
class RadialCore {
public:
  using Jet = std::function<void(double, double&, double&, double&)>;

  RadialCore(Jet jet, int table_size);

  void eval(double theta, double& r, double& r1, double& r2) const { jet_(theta, r, r1, r2); }

  double gauge(const Vec2& x) const;
  Vec2 grad_gauge(const Vec2& x) const;
  Mat2 hess_gauge(const Vec2& x) const;
  // Coefficient h + h'' of the gauge Hessian at unit direction angle phi.
  double gauge_curvature_factor(double phi) const;

  // Boundary parameter whose outward normal has angle phi.
  double theta_star(double phi) const;
  double polar_gauge(const Vec2& x) const;
  Vec2 support(const Vec2& x) const;
  Mat2 hess_polar(const Vec2& x) const;
  double radius_of_curvature(double theta) const;

  bool strictly_convex() const { return strictly_convex_; }

private:
  Jet jet_;
  std::vector<double> theta_;
  std::vector<double> psi_;
  bool strictly_convex_ = true;
};

// Body given by a radial core, or the polar of that core when dual is set.
BodyPtr make_radial_body(std::shared_ptr<const RadialCore> core, bool dual, std::string description);

// Smooth strictly convex outer approximation; see smoothing.cpp.
BodyPtr make_smooth_approximation(const BodyPtr& body, int k);

}  // namespace vgc::detail
