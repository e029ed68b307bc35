#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vgc {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline Vec2 unit_vec(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Counterclockwise rotation by a right angle: v^perp = (-v2, v1).
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

inline double angle_of(const Vec2& v) { return std::atan2(v.y(), v.x()); }

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define VGC_ERROR(Name)                \
  class Name : public Error {          \
  public:                              \
    using Error::Error;                \
  }

VGC_ERROR(InvalidBody);
VGC_ERROR(NondifferentiablePoint);
VGC_ERROR(ZeroVector);
VGC_ERROR(CurvatureDegenerate);
VGC_ERROR(InvalidDomain);
VGC_ERROR(CornerPoint);
VGC_ERROR(OnRidge);
VGC_ERROR(AtCornerShadow);
VGC_ERROR(MultiplicityRidge);
VGC_ERROR(OutsideDomain);
VGC_ERROR(Unsupported);
VGC_ERROR(InfeasibleEps);
VGC_ERROR(InvalidProblem);
VGC_ERROR(ParseError);

#undef VGC_ERROR

// Thrown for a polygonal body when the direction is an edge normal; carries the
// edge midpoint, which is what the non-throwing query returns.
class AmbiguousNormal : public Error {
public:
  AmbiguousNormal(const std::string& what, Vec2 midpoint) : Error(what), midpoint(midpoint) {}
  Vec2 midpoint;
};

}  // namespace vgc
