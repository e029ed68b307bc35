// Acceptance benchmarks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "vgc/verify.hpp"

using namespace vgc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    ok = ok && cond;
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [miss]");
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget_s > 0) o.require(secs < budget_s, fmt("runtime %.1fs < %.0fs", secs, budget_s));
  else o.detail += fmt("; runtime %.1fs", secs);
  std::printf("%s criterion %d (%s): %s\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

Problem make_problem(Domain dom, ConvexBody body, double tau, int n) {
  Grid g = Grid::covering(dom.bbox_min(), dom.bbox_max(), n);
  FunctionalSpec fs =
      FunctionalSpec::make(FunctionalSpec::FKind::half_square, Mat2::Identity(), FunctionalSpec::GKind::linear, 0, tau);
  return Problem{std::move(dom), std::move(body), fs, g, 0.0};
}

Problem torsion(double tau, int n) { return make_problem(Domain::disk(1.0), ConvexBody::disk(1.0), tau, n); }

ConvexBody square_body() { return ConvexBody::polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}); }

std::vector<Vec2> random_points(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < n) {
    const Vec2 x(u(rng), u(rng));
    if (x.norm() > 1e-3) out.push_back(x);
  }
  return out;
}

void gauge_identities(Outcome& o) {
  struct Named {
    const char* name;
    ConvexBody body;
  };
  const Named bodies[] = {
      {"disk", ConvexBody::disk(1.3)}, {"ellipse", ConvexBody::ellipse(2.0, 0.7)}, {"p_ball(4)", ConvexBody::p_ball(4)}};
  unsigned seed = 1;
  for (const auto& [name, b] : bodies) {
    const auto xs = random_points(200, seed++);
    const auto xis = random_points(200, seed++);
    double euler = 0, homog = 0, dual = 0, cs = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Vec2 x = xs[i], xi = xis[i];
      const double gx = b.gauge(x);
      euler = std::max(euler, std::abs(b.grad_gauge(x).dot(x) - gx) / gx);
      euler = std::max(euler, std::abs(b.grad_polar_gauge(xi).dot(xi) - b.polar_gauge(xi)) / b.polar_gauge(xi));
      for (double t : {0.3, 2.0, 7.5}) homog = std::max(homog, std::abs(b.gauge(t * x) - t * gx) / (t * gx));
      dual = std::max(dual, (b.grad_polar_gauge(b.grad_gauge(x)) - x / gx).norm() / (x.norm() / gx));
      dual = std::max(dual, (b.grad_gauge(b.grad_polar_gauge(xi)) - xi / b.polar_gauge(xi)).norm() /
                                (xi.norm() / b.polar_gauge(xi)));
      cs = std::max(cs, (x.dot(xi) - gx * b.polar_gauge(xi)) / (x.norm() * xi.norm()));
      // Equality case of the generalized Cauchy-Schwarz inequality.
      cs = std::max(cs, std::abs(x.dot(b.grad_gauge(x)) - gx * b.polar_gauge(b.grad_gauge(x))) / gx);
    }
    const double worst = std::max({euler, homog, dual, cs});
    o.require(worst <= 1e-8, fmt((std::string(name) + " max residual %.2e").c_str(), worst));
  }
}

void hessian_of_distance(Outcome& o) {
  const Domain dom = Domain::disk(1.0);
  const ConvexBody K = ConvexBody::disk(1.0);
  double analytic = 0, vs_fd = 0;
  for (int i = 0; i < 50; ++i) {
    const double r = 0.05 + (0.9 - 0.05) * (i + 0.5) / 50.0, a = 0.7 + 0.37 * i;
    const Vec2 x = r * Vec2(std::cos(a), std::sin(a));
    const double exact = -1.0 / r;
    const double lap = laplacian_distance(dom, K, x);
    analytic = std::max(analytic, std::abs(lap - exact) / std::abs(exact));
    const double h = 1e-4;
    auto d = [&](const Vec2& y) { return distance(dom, K, y); };
    const double fd = (d(x + Vec2(h, 0)) + d(x - Vec2(h, 0)) + d(x + Vec2(0, h)) + d(x - Vec2(0, h)) - 4 * d(x)) / (h * h);
    vs_fd = std::max(vs_fd, std::abs(lap - fd) / std::abs(fd));
  }
  o.require(analytic <= 1e-8, fmt("Laplacian vs -1/|x| rel err %.2e", analytic));
  o.require(vs_fd <= 1e-4, fmt("vs finite differences rel err %.2e", vs_fd));
}

void ridge_correctness(Outcome& o) {
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  const Grid g = Grid::covering({-1, -1}, {1, 1}, 128);
  const DistanceField f = sample_field(sq, ConvexBody::disk(1.0), g);
  int agree = 0, total = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 c = g.center(i, j);
      const double e[4] = {1 - c.x(), 1 + c.x(), 1 - c.y(), 1 + c.y()};
      const double m = *std::min_element(e, e + 4);
      const int nearest = static_cast<int>(std::count_if(e, e + 4, [&](double v) { return v <= m + 1e-12; }));
      const bool got = f.label[g.index(i, j)] == RidgeLabel::multiplicity_ridge;
      agree += (nearest > 1) == got;
      ++total;
    }
  const double frac = static_cast<double>(agree) / total;
  o.require(frac >= 0.99, fmt("square multiplicity ridge agreement %.4f", frac));

  // Disk(2) gauge on the unit disk: kappa_K = 2, so 1 - kappa_K d vanishes where d_K = 1/2.
  const Domain disk = Domain::disk(1.0);
  const ConvexBody K = ConvexBody::disk(2.0);
  const Grid gd = Grid::covering({-1, -1}, {1, 1}, 128);
  const DistanceField fd = sample_field(disk, K, gd);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  double best = 1e300, best_d = 0;
  for (std::size_t k = 0; k < gd.size(); ++k) {
    if (!fd.inside[k] || std::isnan(fd.residual[k])) continue;
    const double d = fd.d[k], r = fd.residual[k];
    sx += d, sy += r, sxx += d * d, sxy += d * r, ++n;
    if (std::abs(r) < best) best = std::abs(r), best_d = d;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx), icpt = (sy - slope * sx) / n;
  const double root = -icpt / slope;
  o.require(std::abs(root - 0.5) <= gd.h, fmt("residual zero at d_K = %.6f (h = %.4f)", root, gd.h));
  o.require(std::abs(best_d - 0.5) <= gd.h, fmt("smallest cell residual at d_K = %.6f", best_d));
  // The centre is also a multiplicity point, so either ridge label is accepted there.
  int ridge = 0, ridge_ok = 0;
  for (std::size_t k = 0; k < gd.size(); ++k) {
    if (fd.label[k] != RidgeLabel::curvature_ridge && fd.label[k] != RidgeLabel::multiplicity_ridge) continue;
    ++ridge;
    ridge_ok += std::abs(fd.d[k] - 0.5) <= gd.h;
  }
  o.require(ridge > 0 && ridge_ok == ridge, fmt("ridge cells %.0f, within h of d_K = 0.5: %.0f", ridge, ridge_ok));
}

double max_error_vs(const Solution& s, const Domain& dom, const std::function<double(const Vec2&)>& exact) {
  double e = 0.0;
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) {
      const Vec2 c = s.grid.center(i, j);
      if (dom.contains(c) != Location::inside) continue;
      e = std::max(e, std::abs(s.u[s.grid.index(i, j)] - exact(c)));
    }
  return e;
}

}  // namespace

int main() {
  run(1, "gauge calculus identities", 5.0, gauge_identities);
  run(2, "analytic Hessian of the distance", 5.0, hessian_of_distance);
  run(3, "ridge correctness", 30.0, ridge_correctness);

  Solution torsion256;
  run(4, "torsion benchmark", 120.0, [&](Outcome& o) {
    const Problem p = torsion(4, 256);
    torsion256 = solve_double_obstacle(p);
    o.require(torsion256.converged(), "converged");
    const double r = free_boundary_radius(torsion256, Vec2::Zero());
    o.require(std::abs(r - 0.5) <= 2 * p.grid.h, fmt("free boundary radius %.5f (2h = %.5f)", r, 2 * p.grid.h));
    const double u0 = interpolate(torsion256, Vec2::Zero());
    o.require(std::abs(u0 - 0.75) <= 5e-3, fmt("u(0) = %.5f", u0));
    const Problem q = torsion(1, 256);
    const Solution e = solve_double_obstacle(q);
    const double err = max_error_vs(e, q.domain, [](const Vec2& x) { return 0.25 * (1 - x.squaredNorm()); });
    o.require(e.converged() && err <= 5e-3, fmt("tau=1 max error vs (1-r^2)/4 %.2e", err));
  });

  run(5, "obstacle/gradient equivalence", 0.0, [&](Outcome& o) {
    const Problem p = torsion(4, 256);
    const Check g = check_gradient_constraint(torsion256, p.body);
    o.require(g.status == CheckStatus::pass, fmt("max gamma°(D_h u) %.5f <= %.5f", g.measured, g.threshold));
    const Check ep = check_ep_characterization(torsion256, p.body);
    o.require(ep.status == CheckStatus::pass, fmt("region symmetric difference %.4f", ep.measured));
  });

  run(6, "structural checks on a filleted annulus sector", 180.0, [&](Outcome& o) {
    const Problem p = make_problem(Domain::annulus_sector(0.5, 1.0, 0.0, kPi / 2, 0.1), ConvexBody::disk(1.0), 8, 128);
    const Solution s = solve_double_obstacle(p);
    o.require(s.converged(), "converged");
    const Check vi = check_variational_inequality(s, 20, 1e-8);
    o.require(vi.status == CheckStatus::pass, fmt("variational inequality min %.2e", vi.measured));
    const Check el = check_euler_lagrange_signs(s);
    o.require(el.status == CheckStatus::pass, fmt("Euler-Lagrange sign residual %.2e", el.measured));
    const Check seg = check_segment_plasticity(s, *s.field);
    o.require(seg.status == CheckStatus::pass && seg.reason.empty(), fmt("segment plasticity %.4f", seg.measured));
    const Check ridge = check_ridge_noncontact(s, *s.field);
    o.require(ridge.status == CheckStatus::pass && ridge.measured >= 2.0,
              fmt("ridge gap %.2f cells", ridge.measured));
  });

  run(7, "W2,inf stability", 0.0, [&](Outcome& o) {
    const Solution a = solve_double_obstacle(torsion(4, 64));
    const Solution b = solve_double_obstacle(torsion(4, 128));
    const Check c = check_w2inf_stability({&a, &b, &torsion256}, Domain::disk(1.0));
    o.require(c.status == CheckStatus::pass, fmt("max ratio %.4f", c.measured) + " (" + c.reason + ")");
  });

  run(8, "smoothing pipeline and penalized agreement", 0.0, [&](Outcome& o) {
    const Problem p = make_problem(Domain::rectangle(-1, -1, 1, 1), square_body(), 4, 64);
    const PipelineResult r = smoothing_pipeline(p, 8);
    // differences[i] compares stages k = i + 1 and k = i + 2.
    bool decreasing = true;
    std::string diffs;
    for (std::size_t i = 0; i < r.differences.size(); ++i) {
      diffs += (i ? " " : "") + fmt("%.2e", r.differences[i]);
      if (i >= 2 && r.differences[i] >= r.differences[i - 1]) decreasing = false;
    }
    o.require(decreasing, "successive differences " + diffs);
    o.require(r.final_audit <= 1.01, fmt("original-gauge audit %.5f", r.final_audit));

    const Problem t = torsion(4, 128);
    const Solution ref = solve_double_obstacle(t);
    const double eps = 0.02, delta = 1e-4;
    const Solution pen = solve_penalized(t, eps, delta);
    double diff = 0.0;
    for (std::size_t k : pen.disc().cell) diff = std::max(diff, std::abs(pen.u[k] - ref.u[k]));
    o.require(pen.converged() && diff <= eps + 5 * delta, fmt("penalized vs double obstacle %.2e", diff));
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
