#include "vgc/distance.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace vgc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ArcObjective {
  const BoundaryArc& arc;
  const ConvexBody& body;
  const Vec2& x;

  double value(double t) const { return body.gauge(x - arc.point(t)); }

  // f' and f'' of t -> gamma(x - y(t)).
  void derivs(double t, double& f1, double& f2) const {
    const Vec2 z = x - arc.point(t);
    if (z.x() == 0.0 && z.y() == 0.0) {
      f1 = 0.0;
      f2 = 0.0;
      return;
    }
    const Vec2 d1 = arc.tangent(t), d2 = arc.second(t);
    const Vec2 g = body.subgradient(z);
    f1 = -g.dot(d1);
    f2 = d1.dot(body.hess_gauge_or_zero(z) * d1) - g.dot(d2);
  }

  // Local minimizer in [a, b]: safeguarded Newton on f' with bisection fallback.
  double minimize(double a, double b) const {
    double fa1, fa2, fb1, fb2;
    derivs(a, fa1, fa2);
    if (fa1 >= 0.0) return a;
    derivs(b, fb1, fb2);
    if (fb1 <= 0.0) return b;
    double t = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
      double f1, f2;
      derivs(t, f1, f2);
      if (f1 == 0.0) return t;
      if (f1 < 0.0) a = t;
      else b = t;
      if (b - a <= 1e-15) break;
      double tn = f2 > 0.0 ? t - f1 / f2 : 0.5 * (a + b);
      if (!(tn > a && tn < b)) tn = 0.5 * (a + b);
      if (std::abs(tn - t) <= 1e-16) break;
      t = tn;
    }
    return t;
  }
};

struct Candidate {
  double value;
  int arc;
  double t;
  Vec2 point;
};

// K-curvature evaluated on the arc itself, also valid at arc endpoints.
double arc_k_curvature(const BoundaryArc& a, const ConvexBody& body, double t) {
  if (a.kind() == BoundaryArc::Kind::segment) return 0.0;
  const Vec2 nu = perp(a.tangent(t));
  return (body.hess_polar_gauge(nu) * perp(a.second(t))).dot(perp(nu)) / nu.squaredNorm();
}

double arc_laplacian(const BoundaryArc& a, const ConvexBody& body, double t, double d) {
  if (a.kind() == BoundaryArc::Kind::segment) return 0.0;
  const Vec2 nu = perp(a.tangent(t));
  const double kappa = a.curvature(t);
  const double kk = arc_k_curvature(a, body, t);
  const double h = body.polar_gauge(nu);
  const double n = nu.norm();
  const double dg2 = body.grad_polar_gauge(nu).squaredNorm();
  return -kappa * n * n * n * dg2 / (h * h * h * (1.0 - kk * d));
}

bool on_ray(const Vec2& v, const Vec2& dir) {
  return v.dot(dir) > 0.0 && std::abs(cross(v, dir)) <= 1e-9 * v.norm() * dir.norm();
}

double hit_residual(const Domain& domain, const ConvexBody& body, const Hit& h, double d) {
  if (h.corner >= 0) {
    const Corner& c = domain.corners()[h.corner];
    switch (c.cls) {
      case CornerClass::nonreentrant:
        return 0.0;
      case CornerClass::strict_reentrant:
        return 1.0;
      case CornerClass::nonstrict_reentrant:
        return std::min(1.0 - arc_k_curvature(domain.arcs()[c.arc_in], body, 1.0) * d,
                        1.0 - arc_k_curvature(domain.arcs()[c.arc_out], body, 0.0) * d);
    }
  }
  return 1.0 - arc_k_curvature(domain.arcs()[h.arc], body, h.t) * d;
}

const Hit& unique_hit(const ClosestPointResult& r) {
  if (r.multiplicity() > 1) throw OnRidge("point has more than one closest boundary point");
  return r.hits.front();
}

void require_smooth(const ConvexBody& body) {
  if (!body.is_smooth()) throw Unsupported("derivatives of the distance need a smooth body");
}

}  // namespace

ClosestPointResult closest_points(const Domain& domain, const ConvexBody& body, const Vec2& x,
                                  const DistanceOptions& opt) {
  const double diam = domain.diameter();
  std::vector<Candidate> cand;
  for (std::size_t ai = 0; ai < domain.arcs().size(); ++ai) {
    const auto& arc = domain.arcs()[ai];
    const ArcObjective obj{arc, body, x};
    auto push = [&](double t) { cand.push_back({obj.value(t), static_cast<int>(ai), t, arc.point(t)}); };
    push(0.0);
    push(1.0);
    if (arc.kind() == BoundaryArc::Kind::segment) {
      // t -> gamma(x - y(t)) is convex on a segment.
      push(obj.minimize(0.0, 1.0));
      continue;
    }
    const int n = opt.seeds;
    std::vector<double> f(n + 1);
    for (int k = 0; k <= n; ++k) f[k] = obj.value(static_cast<double>(k) / n);
    for (int k = 0; k <= n; ++k) {
      const bool left = k == 0 || f[k] <= f[k - 1];
      const bool right = k == n || f[k] <= f[k + 1];
      if (!(left && right)) continue;
      const double a = static_cast<double>(std::max(k - 1, 0)) / n;
      const double b = static_cast<double>(std::min(k + 1, n)) / n;
      const double t = obj.minimize(a, b);
      push(obj.value(t) <= f[k] ? t : static_cast<double>(k) / n);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cand) best = std::min(best, c.value);
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

  ClosestPointResult out;
  out.distance = best;
  const double tol = opt.tol_val * diam, radius = opt.cluster_radius * diam;
  for (const auto& c : cand) {
    if (c.value > best + tol) break;
    bool merged = false;
    for (const auto& h : out.hits) {
      if ((h.point - c.point).norm() <= radius) {
        merged = true;
        break;
      }
    }
    if (merged) continue;
    Hit h;
    h.point = c.point;
    h.arc = c.arc;
    h.t = c.t;
    h.corner = domain.corner_at(c.arc, c.t);
    out.hits.push_back(h);
  }
  return out;
}

double distance(const Domain& domain, const ConvexBody& body, const Vec2& x) {
  if (domain.contains(x, 0.0) == Location::outside) throw OutsideDomain("point lies outside the domain");
  return closest_points(domain, body, x).distance;
}

double distance_reflected(const Domain& domain, const ConvexBody& body, const Vec2& x) {
  return distance(domain, body.reflect(), x);
}

Vec2 grad_distance(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt) {
  require_smooth(body);
  if (domain.contains(x, 0.0) != Location::inside) throw OutsideDomain("point is not inside the domain");
  const ClosestPointResult r = closest_points(domain, body, x, opt);
  const Hit& h = unique_hit(r);
  if (h.corner >= 0) {
    const Corner& c = domain.corners()[h.corner];
    if (c.cls == CornerClass::nonreentrant) throw OnRidge("closest point is a nonreentrant corner");
    if (c.cls == CornerClass::strict_reentrant) return body.grad_gauge(x - h.point);
    const Vec2 nu = perp(domain.arcs()[c.arc_out].tangent(0.0));
    return nu / body.polar_gauge(nu);
  }
  if (hit_residual(domain, body, h, r.distance) < opt.residual_margin) throw OnRidge("point lies on the curvature ridge");
  const Vec2 nu = perp(domain.arcs()[h.arc].tangent(h.t));
  return nu / body.polar_gauge(nu);
}

Mat2 hess_distance(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt) {
  require_smooth(body);
  if (domain.contains(x, 0.0) != Location::inside) throw OutsideDomain("point is not inside the domain");
  const ClosestPointResult r = closest_points(domain, body, x, opt);
  const Hit& h = unique_hit(r);
  const Vec2 v = x - h.point;
  const Vec2 zeta = perp(v).normalized();
  double lap = 0.0;
  if (h.corner >= 0) {
    const Corner& c = domain.corners()[h.corner];
    const auto& ain = domain.arcs()[c.arc_in];
    const auto& aout = domain.arcs()[c.arc_out];
    switch (c.cls) {
      case CornerClass::nonreentrant:
        throw OnRidge("closest point is a nonreentrant corner");
      case CornerClass::strict_reentrant: {
        const Vec2 n_in = body.grad_polar_gauge(perp(ain.tangent(1.0)));
        const Vec2 n_out = body.grad_polar_gauge(perp(aout.tangent(0.0)));
        if (on_ray(v, n_in) || on_ray(v, n_out))
          throw AtCornerShadow("point lies on a K-normal ray of a reentrant corner");
        return body.hess_gauge(v);
      }
      case CornerClass::nonstrict_reentrant: {
        const double l_in = arc_laplacian(ain, body, 1.0, r.distance);
        const double l_out = arc_laplacian(aout, body, 0.0, r.distance);
        if (std::abs(l_in - l_out) > 1e-9 * (1.0 + std::abs(l_in)))
          throw AtCornerShadow("one-sided Hessians differ behind a nonstrict corner");
        lap = l_in;
        break;
      }
    }
  } else {
    if (hit_residual(domain, body, h, r.distance) < opt.residual_margin)
      throw OnRidge("point lies on the curvature ridge");
    lap = arc_laplacian(domain.arcs()[h.arc], body, h.t, r.distance);
  }
  return lap * zeta * zeta.transpose();
}

double laplacian_distance(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt) {
  return hess_distance(domain, body, x, opt).trace();
}

double ridge_residual(const Domain& domain, const ConvexBody& body, const Vec2& x, const DistanceOptions& opt) {
  const ClosestPointResult r = closest_points(domain, body, x, opt);
  if (r.multiplicity() > 1) throw MultiplicityRidge("point has more than one closest boundary point");
  return hit_residual(domain, body, r.hits.front(), r.distance);
}

namespace {

void label_pass(const Domain& domain, const ConvexBody& body, const DistanceOptions& opt, const Grid& g,
                const std::vector<char>& inside, std::vector<double>& d, std::vector<Hit>& hit,
                std::vector<int>& mult, std::vector<double>& res, std::vector<RidgeLabel>& label) {
  const std::size_t n = g.size();
  d.assign(n, 0.0);
  hit.assign(n, Hit{});
  mult.assign(n, 0);
  res.assign(n, kNaN);
  label.assign(n, RidgeLabel::exterior);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!inside[k]) continue;
      const ClosestPointResult r = closest_points(domain, body, g.center(i, j), opt);
      d[k] = r.distance;
      hit[k] = r.hits.front();
      mult[k] = r.multiplicity();
      label[k] = RidgeLabel::off_ridge;
      if (mult[k] > 1) {
        label[k] = RidgeLabel::multiplicity_ridge;
        continue;
      }
      try {
        res[k] = hit_residual(domain, body, hit[k], r.distance);
      } catch (const CurvatureDegenerate&) {
        res[k] = kNaN;
      }
      if (std::abs(res[k]) <= opt.ridge_band) label[k] = RidgeLabel::curvature_ridge;
    }
  }

  std::vector<std::pair<std::size_t, RidgeLabel>> marks;

  // Multiplicity ridges crossing a cell: the closest-point map jumps between two
  // of its corners by more than its local stretch 1 / (1 - kappa_K d) allows.
  const GaugeBounds gb = body.gauge_bounds();
  const double aniso = gb.c_upper / gb.c_lower;
  const int nnx = g.nx + 1, nny = g.ny + 1;
  auto node = [&](int i, int j) { return Vec2(g.xmin + i * g.h, g.ymin + j * g.h); };
  std::vector<char> node_ok(static_cast<std::size_t>(nnx) * nny, 0);
  std::vector<Vec2> node_hit(node_ok.size());
  std::vector<double> node_res(node_ok.size(), 0.0);
  for (int j = 0; j < nny; ++j) {
    for (int i = 0; i < nnx; ++i) {
      const Vec2 x = node(i, j);
      if (domain.contains(x, 0.0) != Location::inside) continue;
      const ClosestPointResult r = closest_points(domain, body, x, opt);
      if (r.multiplicity() != 1) continue;
      const std::size_t n = static_cast<std::size_t>(j) * nnx + i;
      try {
        node_res[n] = hit_residual(domain, body, r.hits.front(), r.distance);
      } catch (const CurvatureDegenerate&) {
        continue;
      }
      node_ok[n] = 1;
      node_hit[n] = r.hits.front().point;
    }
  }
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!inside[k] || label[k] != RidgeLabel::off_ridge) continue;
      const int ci[4] = {i, i + 1, i, i + 1}, cj[4] = {j, j, j + 1, j + 1};
      bool jump = false;
      for (int p = 0; p < 4 && !jump; ++p) {
        for (int q = p + 1; q < 4 && !jump; ++q) {
          const std::size_t np = static_cast<std::size_t>(cj[p]) * nnx + ci[p];
          const std::size_t nq = static_cast<std::size_t>(cj[q]) * nnx + ci[q];
          if (!node_ok[np] || !node_ok[nq]) continue;
          const double res = std::min(node_res[np], node_res[nq]);
          if (res <= opt.ridge_band) continue;
          const double step = (node(ci[p], cj[p]) - node(ci[q], cj[q])).norm();
          jump = (node_hit[np] - node_hit[nq]).norm() > 4.0 * aniso * step / res + 2.0 * g.h;
        }
      }
      if (jump) marks.push_back({k, RidgeLabel::multiplicity_ridge});
    }
  }

  // Point ridges and ridge ends, where the corner test is blind: the
  // closest-point rays of neighbouring centres cross between them.
  const int offs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t ka = g.index(i, j);
      if (!inside[ka] || mult[ka] != 1) continue;
      for (const auto& o : offs) {
        const int i2 = i + o[0], j2 = j + o[1];
        if (!g.valid(i2, j2)) continue;
        const std::size_t kb = g.index(i2, j2);
        if (!inside[kb] || mult[kb] != 1) continue;
        const Vec2 xa = g.center(i, j), xb = g.center(i2, j2);
        const Vec2 ya = hit[ka].point, yb = hit[kb].point;
        const Vec2 a = xa - ya, b = xb - yb;
        const double det = -cross(a, b);
        if (std::abs(det) <= 1e-12 * a.norm() * b.norm()) continue;
        const Vec2 rhs = yb - ya;
        const double s = -cross(rhs, b) / det;
        const double t = cross(a, rhs) / det;
        if (s < 0.5 || t < 0.5) continue;
        const Vec2 z = ya + s * a;
        if ((z - 0.5 * (xa + xb)).norm() > g.h) continue;
        int iz, jz;
        g.locate(z, iz, jz);
        const std::size_t kz = g.index(iz, jz);
        if (inside[kz])
          marks.push_back(
              {kz, (ya - yb).norm() > 8.0 * g.h ? RidgeLabel::multiplicity_ridge : RidgeLabel::curvature_ridge});
      }
    }
  }
  for (const auto& [k, l] : marks) {
    if (label[k] == RidgeLabel::off_ridge) label[k] = l;
  }
}

}  // namespace

DistanceField sample_field(const Domain& domain, const ConvexBody& body, const Grid& grid, const DistanceOptions& opt) {
  DistanceField f;
  f.grid = grid;
  f.inside.assign(grid.size(), 0);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      f.inside[grid.index(i, j)] = domain.contains(grid.center(i, j), 0.0) == Location::inside;
  label_pass(domain, body, opt, grid, f.inside, f.d, f.hit, f.multiplicity, f.residual, f.label);
  label_pass(domain, body.reflect(), opt, grid, f.inside, f.dbar, f.hit_bar, f.multiplicity_bar, f.residual_bar,
             f.label_bar);
  return f;
}

void write_field_csv(std::ostream& os, const DistanceField& f, bool ridge_only) {
  write_grid_header(os, f.grid);
  for (int j = 0; j < f.grid.ny; ++j) {
    for (int i = 0; i < f.grid.nx; ++i) {
      const std::size_t k = f.grid.index(i, j);
      const RidgeLabel l = f.label[k];
      if (ridge_only && l != RidgeLabel::multiplicity_ridge && l != RidgeLabel::curvature_ridge) continue;
      const Vec2 c = f.grid.center(i, j);
      os << i << ',' << j << ',' << format_double(c.x()) << ',' << format_double(c.y()) << ','
         << format_double(f.d[k]) << ',' << format_double(f.dbar[k]) << ',' << static_cast<int>(l) << '\n';
    }
  }
}

}  // namespace vgc
