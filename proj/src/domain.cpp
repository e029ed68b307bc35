#include "vgc/domain.hpp"

#include <algorithm>
#include <limits>

namespace vgc {

namespace {

constexpr double kCuspBand = 1e-6;
constexpr double kStraightBand = 1e-6;

double chord_angle(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 p = a - x, q = b - x;
  return std::atan2(cross(p, q), p.dot(q));
}

// Angle swept around x by a circular arc of sweep at most pi/2. Pieces whose
// chord passes too close to x are split.
double circular_piece_angle(const Vec2& x, const Vec2& c, double r, double t0, double t1, int depth) {
  const Vec2 y0 = c + r * unit_vec(t0), y1 = c + r * unit_vec(t1);
  const Vec2 e = y1 - y0;
  const double s = std::clamp((x - y0).dot(e) / e.squaredNorm(), 0.0, 1.0);
  if ((x - y0 - s * e).norm() <= 1e-9 * e.norm() && depth < 40) {
    const double tm = 0.5 * (t0 + t1);
    return circular_piece_angle(x, c, r, t0, tm, depth + 1) + circular_piece_angle(x, c, r, tm, t1, depth + 1);
  }
  double a = chord_angle(x, y0, y1);
  if ((x - c).norm() < r && (x - 0.5 * (y0 + y1)).dot(unit_vec(0.5 * (t0 + t1))) > 0.0)
    a += std::copysign(kTwoPi, t1 - t0);
  return a;
}

}  // namespace

BoundaryArc BoundaryArc::segment(Vec2 p0, Vec2 p1) {
  BoundaryArc a;
  a.kind_ = Kind::segment;
  a.params_ = {p0.x(), p0.y(), p1.x(), p1.y()};
  return a;
}

BoundaryArc BoundaryArc::circular(Vec2 center, double radius, double angle0, double angle1) {
  if (!(radius > 0.0)) throw InvalidDomain("circular arc radius must be positive");
  if (angle0 == angle1) throw InvalidDomain("circular arc has zero sweep");
  BoundaryArc a;
  a.kind_ = Kind::circular;
  a.params_ = {center.x(), center.y(), radius, angle0, angle1};
  return a;
}

BoundaryArc BoundaryArc::parametric(Curve y, Curve dy, Curve d2y) {
  if (!y || !dy || !d2y) throw InvalidDomain("parametric arc needs y, y' and y''");
  BoundaryArc a;
  a.kind_ = Kind::parametric;
  a.y_ = std::move(y);
  a.dy_ = std::move(dy);
  a.d2y_ = std::move(d2y);
  return a;
}

Vec2 BoundaryArc::point(double t) const {
  switch (kind_) {
    case Kind::segment:
      return Vec2(params_[0], params_[1]) + t * Vec2(params_[2] - params_[0], params_[3] - params_[1]);
    case Kind::circular:
      return Vec2(params_[0], params_[1]) + params_[2] * unit_vec(params_[3] + t * (params_[4] - params_[3]));
    case Kind::parametric:
      return y_(t);
  }
  return Vec2::Zero();
}

Vec2 BoundaryArc::tangent(double t) const {
  switch (kind_) {
    case Kind::segment:
      return Vec2(params_[2] - params_[0], params_[3] - params_[1]);
    case Kind::circular: {
      const double sweep = params_[4] - params_[3];
      return params_[2] * sweep * perp(unit_vec(params_[3] + t * sweep));
    }
    case Kind::parametric:
      return dy_(t);
  }
  return Vec2::Zero();
}

Vec2 BoundaryArc::second(double t) const {
  switch (kind_) {
    case Kind::segment:
      return Vec2::Zero();
    case Kind::circular: {
      const double sweep = params_[4] - params_[3];
      return -params_[2] * sweep * sweep * unit_vec(params_[3] + t * sweep);
    }
    case Kind::parametric:
      return d2y_(t);
  }
  return Vec2::Zero();
}

double BoundaryArc::curvature(double t) const {
  if (kind_ == Kind::segment) return 0.0;
  const Vec2 d1 = tangent(t);
  return cross(d1, second(t)) / std::pow(d1.norm(), 3.0);
}

double BoundaryArc::length_estimate() const {
  switch (kind_) {
    case Kind::segment:
      return (end() - start()).norm();
    case Kind::circular:
      return params_[2] * std::abs(params_[4] - params_[3]);
    case Kind::parametric: {
      double len = 0.0;
      for (int i = 0; i < 256; ++i) len += (point((i + 1) / 256.0) - point(i / 256.0)).norm();
      return len;
    }
  }
  return 0.0;
}

Domain::Domain(std::vector<std::vector<BoundaryArc>> loops) {
  if (loops.empty()) throw InvalidDomain("domain needs at least one loop");
  for (std::size_t l = 0; l < loops.size(); ++l) {
    if (loops[l].empty()) throw InvalidDomain("empty boundary loop");
    loop_start_.push_back(static_cast<int>(arcs_.size()));
    loop_sizes_.push_back(loops[l].size());
    for (auto& a : loops[l]) {
      arcs_.push_back(std::move(a));
      loop_id_.push_back(static_cast<int>(l));
    }
  }
  validate();
}

void Domain::validate() {
  bbox_min_ = Vec2::Constant(std::numeric_limits<double>::infinity());
  bbox_max_ = -bbox_min_;
  for (const auto& a : arcs_) {
    std::vector<double> ts;
    const int n = a.kind() == BoundaryArc::Kind::parametric ? 512 : 2;
    for (int i = 0; i <= n; ++i) ts.push_back(static_cast<double>(i) / n);
    if (a.kind() == BoundaryArc::Kind::circular) {
      const auto& p = a.parameters();
      const double lo = std::min(p[3], p[4]), hi = std::max(p[3], p[4]);
      for (double q = std::ceil(lo / (0.5 * kPi)) * 0.5 * kPi; q <= hi; q += 0.5 * kPi)
        ts.push_back((q - p[3]) / (p[4] - p[3]));
    }
    for (double t : ts) {
      const Vec2 y = a.point(t);
      bbox_min_ = bbox_min_.cwiseMin(y);
      bbox_max_ = bbox_max_.cwiseMax(y);
    }
  }
  const double diam = diameter();
  if (!(diam > 0.0) || !std::isfinite(diam)) throw InvalidDomain("degenerate boundary");

  for (std::size_t l = 0; l < loop_sizes_.size(); ++l) {
    const int s = loop_start_[l], n = static_cast<int>(loop_sizes_[l]);
    for (int i = 0; i < n; ++i) {
      const auto& a = arcs_[s + i];
      const auto& b = arcs_[s + (i + 1) % n];
      if ((a.end() - b.start()).norm() > 1e-9 * diam)
        throw InvalidDomain("boundary loop " + std::to_string(l) + " is not closed at arc " + std::to_string(s + i));
      for (int k = 0; k <= 32; ++k) {
        if (a.tangent(k / 32.0).norm() <= 1e-14 * diam)
          throw InvalidDomain("arc " + std::to_string(s + i) + " has a degenerate parametrization");
      }
    }
  }

  classify_corners();

  // Signed area by the shoelace rule on a fine polyline.
  for (std::size_t l = 0; l < loop_sizes_.size(); ++l) {
    double area = 0.0;
    const int s = loop_start_[l], n = static_cast<int>(loop_sizes_[l]);
    for (int i = 0; i < n; ++i) {
      const auto& a = arcs_[s + i];
      constexpr int m = 256;
      for (int k = 0; k < m; ++k) area += 0.5 * cross(a.point(double(k) / m), a.point(double(k + 1) / m));
    }
    if (l == 0 && area <= 0.0) throw InvalidDomain("outer boundary loop must run counterclockwise");
    if (l > 0 && area >= 0.0) throw InvalidDomain("hole boundary loops must run clockwise");
  }

  const double eps = 1e-4 * diam;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const auto& a = arcs_[i];
    const Vec2 probe = a.point(0.5) + eps * perp(a.tangent(0.5)).normalized();
    if (std::abs(winding_number(probe)) < 0.5)
      throw InvalidDomain("arc " + std::to_string(i) + " is oriented with its normal pointing outward");
  }
}

void Domain::classify_corners() {
  corner_at_start_.assign(arcs_.size(), -1);
  corner_at_end_.assign(arcs_.size(), -1);
  for (std::size_t l = 0; l < loop_sizes_.size(); ++l) {
    const int s = loop_start_[l], n = static_cast<int>(loop_sizes_[l]);
    for (int i = 0; i < n; ++i) {
      const int ia = s + i, ib = s + (i + 1) % n;
      const auto& a = arcs_[ia];
      const auto& b = arcs_[ib];
      const Vec2 tin = a.tangent(1.0).normalized(), tout = b.tangent(0.0).normalized();
      const double turn = std::atan2(cross(tin, tout), tin.dot(tout));
      const double opening = kPi - turn;
      if (opening < kCuspBand || opening > kTwoPi - kCuspBand)
        throw InvalidDomain("boundary has a cusp between arcs " + std::to_string(ia) + " and " + std::to_string(ib));
      if (std::abs(turn) <= kStraightBand) {
        // A C^2 join (or the closure of a single-arc loop) is not a corner.
        const double ka = a.curvature(1.0), kb = b.curvature(0.0);
        if (ia == ib || std::abs(ka - kb) <= 1e-6 * (1.0 + std::abs(ka))) continue;
      }
      Corner c;
      c.point = b.start();
      c.arc_in = ia;
      c.arc_out = ib;
      c.opening_angle = opening;
      if (std::abs(opening - kPi) <= kStraightBand) c.cls = CornerClass::nonstrict_reentrant;
      else if (opening < kPi) c.cls = CornerClass::nonreentrant;
      else c.cls = CornerClass::strict_reentrant;
      corner_at_end_[ia] = static_cast<int>(corners_.size());
      corner_at_start_[ib] = static_cast<int>(corners_.size());
      corners_.push_back(c);
    }
  }
}

bool Domain::has_reentrant_corner() const {
  return std::any_of(corners_.begin(), corners_.end(),
                     [](const Corner& c) { return c.cls != CornerClass::nonreentrant; });
}

double Domain::winding_number(const Vec2& x) const {
  double total = 0.0;
  for (const auto& a : arcs_) {
    switch (a.kind()) {
      case BoundaryArc::Kind::segment:
        total += chord_angle(x, a.start(), a.end());
        break;
      case BoundaryArc::Kind::circular: {
        // Chord angle plus the full turn when x sits in the circular segment
        // between a sub-arc and its chord.
        const auto& p = a.parameters();
        const Vec2 c(p[0], p[1]);
        const double r = p[2], sweep = p[4] - p[3];
        const int pieces = static_cast<int>(std::ceil(std::abs(sweep) / (0.5 * kPi)));
        for (int k = 0; k < pieces; ++k)
          total += circular_piece_angle(x, c, r, p[3] + sweep * k / pieces, p[3] + sweep * (k + 1) / pieces, 0);
        break;
      }
      case BoundaryArc::Kind::parametric: {
        const double dist = std::max(boundary_distance(x), 1e-12 * diameter());
        double dev = 0.0;
        for (int k = 0; k <= 64; ++k) dev = std::max(dev, a.second(k / 64.0).norm());
        const int pieces = std::clamp(static_cast<int>(std::ceil(std::sqrt(dev / (4.0 * dist)))), 64, 1 << 20);
        Vec2 prev = a.start();
        for (int k = 1; k <= pieces; ++k) {
          const Vec2 cur = a.point(static_cast<double>(k) / pieces);
          total += chord_angle(x, prev, cur);
          prev = cur;
        }
        break;
      }
    }
  }
  return total / kTwoPi;
}

double Domain::boundary_distance(const Vec2& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : arcs_) {
    switch (a.kind()) {
      case BoundaryArc::Kind::segment: {
        const Vec2 p0 = a.start(), e = a.end() - p0;
        const double t = std::clamp((x - p0).dot(e) / e.squaredNorm(), 0.0, 1.0);
        best = std::min(best, (x - p0 - t * e).norm());
        break;
      }
      case BoundaryArc::Kind::circular: {
        const auto& p = a.parameters();
        const Vec2 c(p[0], p[1]);
        best = std::min({best, (x - a.start()).norm(), (x - a.end()).norm()});
        const Vec2 v = x - c;
        if (v.norm() > 0.0) {
          const double lo = std::min(p[3], p[4]), hi = std::max(p[3], p[4]);
          double ang = angle_of(v);
          ang = lo + std::fmod(std::fmod(ang - lo, kTwoPi) + kTwoPi, kTwoPi);
          if (ang <= hi) best = std::min(best, std::abs(v.norm() - p[2]));
        } else {
          best = std::min(best, p[2]);
        }
        break;
      }
      case BoundaryArc::Kind::parametric: {
        constexpr int m = 128;
        int kbest = 0;
        double dbest = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= m; ++k) {
          const double dd = (x - a.point(double(k) / m)).norm();
          if (dd < dbest) {
            dbest = dd;
            kbest = k;
          }
        }
        double t = double(kbest) / m;
        for (int it = 0; it < 30; ++it) {
          const Vec2 r = a.point(t) - x, d1 = a.tangent(t), d2 = a.second(t);
          const double f1 = r.dot(d1), f2 = d1.squaredNorm() + r.dot(d2);
          if (f2 <= 0.0) break;
          const double tn = std::clamp(t - f1 / f2, std::max(0.0, t - 1.0 / m), std::min(1.0, t + 1.0 / m));
          if (std::abs(tn - t) < 1e-15) break;
          t = tn;
        }
        best = std::min({best, dbest, (x - a.point(t)).norm()});
        break;
      }
    }
  }
  return best;
}

Location Domain::contains(const Vec2& x, double tol) const {
  if (boundary_distance(x) <= tol) return Location::boundary;
  return std::abs(winding_number(x)) > 0.5 ? Location::inside : Location::outside;
}

int Domain::corner_at(int arc, double t) const {
  if (t <= 1e-12) return corner_at_start_[arc];
  if (t >= 1.0 - 1e-12) return corner_at_end_[arc];
  return -1;
}

BoundaryFrame Domain::boundary_frame(int arc, double t) const {
  if (arc < 0 || arc >= static_cast<int>(arcs_.size())) throw InvalidDomain("arc index out of range");
  if (t < 0.0 || t > 1.0) throw InvalidDomain("arc parameter outside [0, 1]");
  if (corner_at(arc, t) >= 0) throw CornerPoint("boundary point is a corner");
  const auto& a = arcs_[arc];
  return {a.point(t), perp(a.tangent(t)), a.curvature(t)};
}

Domain Domain::disk(double r, Vec2 center) {
  Domain d({{BoundaryArc::circular(center, r, 0.0, kTwoPi)}});
  d.description = "disk";
  return d;
}

Domain Domain::polygon(const std::vector<Vec2>& v) {
  if (v.size() < 3) throw InvalidDomain("polygon domain needs at least three vertices");
  std::vector<BoundaryArc> loop;
  for (std::size_t i = 0; i < v.size(); ++i) loop.push_back(BoundaryArc::segment(v[i], v[(i + 1) % v.size()]));
  Domain d({loop});
  d.description = "polygon";
  return d;
}

Domain Domain::rectangle(double x0, double y0, double x1, double y1) {
  if (!(x1 > x0 && y1 > y0)) throw InvalidDomain("rectangle needs x0 < x1 and y0 < y1");
  Domain d = polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
  d.description = "rect";
  return d;
}

Domain Domain::annulus_sector(double r0, double r1, double a0, double a1, double rho) {
  if (!(r0 > 0.0 && r1 > r0 && a1 > a0 && a1 - a0 < kPi))
    throw InvalidDomain("annulus sector needs 0 < r0 < r1 and 0 < a1 - a0 < pi");
  std::vector<BoundaryArc> loop;
  if (rho <= 0.0) {
    loop.push_back(BoundaryArc::circular(Vec2::Zero(), r1, a0, a1));
    loop.push_back(BoundaryArc::segment(r1 * unit_vec(a1), r0 * unit_vec(a1)));
    loop.push_back(BoundaryArc::circular(Vec2::Zero(), r0, a1, a0));
    loop.push_back(BoundaryArc::segment(r0 * unit_vec(a0), r1 * unit_vec(a0)));
  } else {
    if (!(2.0 * rho < r1 - r0)) throw InvalidDomain("fillet radius too large for the annulus width");
    const double b = std::asin(rho / (r1 - rho));
    const double bi = std::asin(rho / (r0 + rho));
    if (!(a0 + b < a1 - b && a0 + bi < a1 - bi)) throw InvalidDomain("fillet radius too large for the sector angle");
    const Vec2 c1 = (r1 - rho) * unit_vec(a0 + b), c2 = (r1 - rho) * unit_vec(a1 - b);
    const Vec2 c3 = (r0 + rho) * unit_vec(a1 - bi), c4 = (r0 + rho) * unit_vec(a0 + bi);
    loop.push_back(BoundaryArc::circular(c1, rho, a0 - 0.5 * kPi, a0 + b));
    loop.push_back(BoundaryArc::circular(Vec2::Zero(), r1, a0 + b, a1 - b));
    loop.push_back(BoundaryArc::circular(c2, rho, a1 - b, a1 + 0.5 * kPi));
    loop.push_back(BoundaryArc::segment((r1 - rho) * std::cos(b) * unit_vec(a1), (r0 + rho) * std::cos(bi) * unit_vec(a1)));
    loop.push_back(BoundaryArc::circular(c3, rho, a1 + 0.5 * kPi, a1 + kPi - bi));
    loop.push_back(BoundaryArc::circular(Vec2::Zero(), r0, a1 - bi, a0 + bi));
    loop.push_back(BoundaryArc::circular(c4, rho, a0 + bi + kPi, a0 + 1.5 * kPi));
    loop.push_back(BoundaryArc::segment((r0 + rho) * std::cos(bi) * unit_vec(a0), (r1 - rho) * std::cos(b) * unit_vec(a0)));
  }
  Domain d({loop});
  d.description = "annulus_sector";
  return d;
}

Vec2 k_normal(const Domain& domain, const ConvexBody& body, int arc, double t) {
  return body.grad_polar_gauge(domain.boundary_frame(arc, t).normal);
}

double k_curvature(const Domain& domain, const ConvexBody& body, int arc, double t) {
  const BoundaryFrame f = domain.boundary_frame(arc, t);
  const auto& a = domain.arcs()[arc];
  if (a.kind() == BoundaryArc::Kind::segment) return 0.0;
  const Vec2 dnu = perp(a.second(t));
  return (body.hess_polar_gauge(f.normal) * dnu).dot(perp(f.normal)) / f.normal.squaredNorm();
}

double k_curvature_via_radius(const Domain& domain, const ConvexBody& body, int arc, double t) {
  const BoundaryFrame f = domain.boundary_frame(arc, t);
  if (domain.arcs()[arc].kind() == BoundaryArc::Kind::segment) return 0.0;
  return f.curvature * body.curvature_radius(f.normal);
}

std::vector<std::string> assumption_warnings(const Domain& domain, const ConvexBody& body) {
  std::vector<std::string> out;
  const auto& mus = body.degenerate_normals();
  if (mus.empty()) return out;
  for (std::size_t i = 0; i < domain.arcs().size(); ++i) {
    const auto& a = domain.arcs()[i];
    if (a.kind() == BoundaryArc::Kind::segment) continue;
    constexpr int m = 512;
    bool hit = false;
    for (int k = 0; k < m && !hit; ++k) {
      const Vec2 n0 = perp(a.tangent(double(k) / m)).normalized();
      const Vec2 n1 = perp(a.tangent(double(k + 1) / m)).normalized();
      for (const auto& mu : mus) {
        // The normal sweeps across mu (or touches it) on this sub-interval.
        const double s0 = cross(n0, mu), s1 = cross(n1, mu);
        if (n0.dot(mu) > 0.0 && (s0 == 0.0 || s0 * s1 < 0.0)) hit = true;
      }
    }
    if (hit)
      out.push_back("arc " + std::to_string(i) +
                    " is curved where its normal meets a direction of zero curvature of the body boundary");
  }
  return out;
}

const char* to_string(CornerClass c) {
  switch (c) {
    case CornerClass::nonreentrant:
      return "nonreentrant";
    case CornerClass::strict_reentrant:
      return "strict_reentrant";
    case CornerClass::nonstrict_reentrant:
      return "nonstrict_reentrant";
  }
  return "?";
}

}  // namespace vgc
