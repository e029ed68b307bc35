#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "vgc/distance.hpp"

using namespace vgc;

namespace {

using Curve = std::function<Vec2(double)>;

// Brute force min over a dense boundary sampling, refined by golden section
// around every sample that is a discrete local minimum.
struct BruteResult {
  double value;
  std::vector<Vec2> points;
};

BruteResult brute_distance(const std::vector<Curve>& boundary, const ConvexBody& body, const Vec2& x,
                           int n = 4000, double tol = 1e-7) {
  std::vector<std::pair<double, Vec2>> cands;
  for (const auto& c : boundary) {
    auto f = [&](double t) { return body.gauge(x - c(t)); };
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = f(static_cast<double>(i) / n);
    for (int i = 0; i <= n; ++i) {
      const bool left = i == 0 || v[i] <= v[i - 1], right = i == n || v[i] <= v[i + 1];
      if (!left || !right) continue;
      double a = std::max(0.0, (i - 1.0) / n), b = std::min(1.0, (i + 1.0) / n);
      const double r = 0.5 * (std::sqrt(5.0) - 1.0);
      for (int it = 0; it < 80; ++it) {
        const double p = b - r * (b - a), q = a + r * (b - a);
        if (f(p) < f(q)) b = q;
        else a = p;
      }
      const double t = 0.5 * (a + b);
      cands.push_back({f(t), c(t)});
    }
  }
  BruteResult out{1e300, {}};
  for (const auto& c : cands) out.value = std::min(out.value, c.first);
  for (const auto& c : cands) {
    if (c.first > out.value + tol) continue;
    bool dup = false;
    for (const auto& p : out.points) dup = dup || (p - c.second).norm() < 1e-5;
    if (!dup) out.points.push_back(c.second);
  }
  return out;
}

std::vector<Curve> square_boundary() {
  return {[](double t) { return Vec2(-1 + 2 * t, -1); }, [](double t) { return Vec2(1, -1 + 2 * t); },
          [](double t) { return Vec2(1 - 2 * t, 1); }, [](double t) { return Vec2(-1, 1 - 2 * t); }};
}
std::vector<Curve> circle_boundary(double r = 1.0) {
  return {[r](double t) { return Vec2(r * std::cos(2 * kPi * t), r * std::sin(2 * kPi * t)); }};
}
std::vector<Curve> polygon_boundary(const std::vector<Vec2>& v) {
  std::vector<Curve> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    out.push_back([a, b](double t) { return Vec2(a + t * (b - a)); });
  }
  return out;
}

const std::vector<Vec2> kPentagon{{-1, -0.8}, {1.2, -1}, {1.4, 0.4}, {0.1, 1.1}, {-1.2, 0.5}};

Domain ellipse_domain() {
  const double w = 2 * kPi;
  return Domain({{BoundaryArc::parametric(
      [=](double t) { return Vec2(1.5 * std::cos(w * t), std::sin(w * t)); },
      [=](double t) { return Vec2(-1.5 * w * std::sin(w * t), w * std::cos(w * t)); },
      [=](double t) { return Vec2(-1.5 * w * w * std::cos(w * t), -w * w * std::sin(w * t)); })}});
}

ConvexBody square_body() { return ConvexBody::polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}); }
ConvexBody triangle_body() { return ConvexBody::polygon({{1, 0}, {-1, 1}, {-1, -1}}); }

std::vector<Vec2> interior_points(const Domain& d, int n, unsigned seed) {
  std::vector<Vec2> out;
  for (const Vec2& x : oracle::random_points(4 * n, seed, 1.5))
    if (d.contains(x) == Location::inside && d.boundary_distance(x) > 0.02 && static_cast<int>(out.size()) < n)
      out.push_back(x);
  return out;
}

}  // namespace

TEST(DistanceExamples, ClosestPointsSquare) {
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  const ConvexBody e = ConvexBody::disk(1);
  const auto r = closest_points(sq, e, {0.5, 0});
  EXPECT_NEAR(r.distance, 0.5, 1e-14);
  ASSERT_EQ(r.multiplicity(), 1);
  EXPECT_NEAR((r.hits[0].point - Vec2(1, 0)).norm(), 0.0, 1e-12);
  const auto c = closest_points(sq, e, {0, 0});
  EXPECT_NEAR(c.distance, 1.0, 1e-14);
  EXPECT_EQ(c.multiplicity(), 4);
  const auto b = brute_distance(square_boundary(), e, {0, 0});
  EXPECT_NEAR(b.value, 1.0, 1e-12);
  EXPECT_EQ(b.points.size(), 4u);
}

TEST(DistanceExamples, ClosestPointsDiskSquareGauge) {
  const Domain d = Domain::disk(1);
  const auto b = brute_distance(circle_boundary(), square_body(), {0, 0});
  EXPECT_NEAR(b.value, std::sqrt(0.5), 1e-10);
  EXPECT_EQ(b.points.size(), 4u);
  const auto r = closest_points(d, square_body(), {0, 0});
  EXPECT_NEAR(r.distance, 0.7071067811865476, 1e-10);
  EXPECT_EQ(r.multiplicity(), 4);
  for (const auto& h : r.hits) EXPECT_NEAR(std::abs(h.point.x()), std::sqrt(0.5), 1e-6);
}

TEST(DistanceExamples, DistanceValues) {
  const Domain d = Domain::disk(1);
  EXPECT_NEAR(distance(d, ConvexBody::disk(1), {0.3, 0}), 0.7, 1e-14);
  EXPECT_NEAR(distance(d, ConvexBody::disk(2), {0.3, 0}), 0.35, 1e-14);
  EXPECT_THROW(distance(d, ConvexBody::disk(1), {1.5, 0}), OutsideDomain);
  const Domain P = Domain::polygon(kPentagon);
  const ConvexBody t = triangle_body();
  const Vec2 x(0.2, 0.1);
  EXPECT_GT(std::abs(distance(P, t, x) - distance_reflected(P, t, x)), 1e-3);
  for (const Vec2& y : interior_points(P, 50, 31)) {
    EXPECT_NEAR(distance_reflected(P, t, y), distance(P, t.reflect(), y), 1e-12);
    EXPECT_NEAR(distance(P, t, y), brute_distance(polygon_boundary(kPentagon), t, y).value, 1e-9);
  }
}

TEST(DistanceExamples, Gradient) {
  const Domain d = Domain::disk(1);
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  const ConvexBody e = ConvexBody::disk(1);
  EXPECT_NEAR((grad_distance(d, e, {0.3, 0}) - Vec2(-1, 0)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((grad_distance(sq, e, {0.5, 0}) - Vec2(-1, 0)).norm(), 0.0, 1e-12);
  EXPECT_THROW(grad_distance(sq, e, {0, 0}), OnRidge);
  EXPECT_THROW(grad_distance(sq, square_body(), {0.5, 0}), Unsupported);
  const Domain ed = ellipse_domain();
  const ConvexBody b = ConvexBody::ellipse(1.2, 0.7);
  int checked = 0;
  for (const Vec2& x : interior_points(ed, 60, 32)) {
    const auto r = closest_points(ed, b, x);
    if (r.multiplicity() != 1 || ridge_residual(ed, b, x) < 0.1) continue;
    const Vec2 fd = oracle::fd_gradient([&](const Vec2& y) { return distance(ed, b, y); }, x, 1e-6);
    EXPECT_NEAR((grad_distance(ed, b, x) - fd).norm(), 0.0, 1e-6) << x.transpose();
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(DistanceExamples, HessianDisk) {
  // For d = 1 - |x| on the unit disk, D^2 d = -(I - x x^T / |x|^2) / |x|, so the
  // Laplacian is -1/|x|.
  const Domain d = Domain::disk(1);
  const ConvexBody e = ConvexBody::disk(1);
  const Mat2 H = hess_distance(d, e, {0.3, 0});
  EXPECT_NEAR(H.trace(), -1.0 / 0.3, 1e-12);
  EXPECT_NEAR((H - (-1.0 / 0.3) * Mat2{{0, 0}, {0, 1}}).norm(), 0.0, 1e-12);
  const Mat2 fd = oracle::fd_hessian([&](const Vec2& y) { return distance(d, e, y); }, {0.3, 0});
  EXPECT_NEAR((H - fd).norm(), 0.0, 1e-5);
  // Eigenvalues {0, lap} with kernel along x - y.
  const Vec2 x(0.2, -0.35);
  const Mat2 H2 = hess_distance(d, e, x);
  EXPECT_NEAR((H2 * x).norm(), 0.0, 1e-12);
  EXPECT_NEAR(H2.trace(), -1.0 / x.norm(), 1e-12);
  // Disk(2) body: d = (1 - |x|) / 2, Laplacian -1 / (2 |x|).
  EXPECT_NEAR(laplacian_distance(d, ConvexBody::disk(2), {0.4, 0}), -1.0 / 0.8, 1e-12);
}

TEST(DistanceExamples, HessianSquareAndGeneric) {
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  EXPECT_NEAR(hess_distance(sq, ConvexBody::disk(1), {0.5, 0.1}).norm(), 0.0, 1e-15);
  EXPECT_NEAR(hess_distance(sq, ConvexBody::ellipse(2, 1), {0.5, 0.1}).norm(), 0.0, 1e-15);
  const Domain ed = ellipse_domain();
  const ConvexBody b = ConvexBody::p_ball(3);
  int checked = 0;
  for (const Vec2& x : interior_points(ed, 60, 33)) {
    const auto r = closest_points(ed, b, x);
    if (r.multiplicity() != 1 || ridge_residual(ed, b, x) < 0.2) continue;
    const Mat2 H = hess_distance(ed, b, x);
    const Mat2 fd = oracle::fd_hessian([&](const Vec2& y) { return distance(ed, b, y); }, x, 1e-4);
    EXPECT_LE((H - fd).norm(), 1e-4 * (1 + H.norm())) << x.transpose();
    ++checked;
  }
  EXPECT_GT(checked, 15);
}

TEST(DistanceExamples, RidgeResidual) {
  const Domain d = Domain::disk(1);
  EXPECT_NEAR(ridge_residual(d, ConvexBody::disk(1), {0.3, 0}), 0.3, 1e-12);
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  EXPECT_NEAR(ridge_residual(sq, ConvexBody::disk(1), {0.5, 0.1}), 1.0, 1e-15);
  EXPECT_THROW(ridge_residual(sq, ConvexBody::disk(1), {0, 0}), MultiplicityRidge);
  // Disk(2) body: kappa_K = 2 and d = (1 - r)/2, so the residual is r.
  for (double r : {0.1, 0.5, 0.9}) EXPECT_NEAR(ridge_residual(d, ConvexBody::disk(2), {0, r}), r, 1e-12);
}

TEST(DistanceExamples, ReentrantCornerFan) {
  const Domain L = Domain::polygon({{-1, -1}, {1, -1}, {1, 0}, {0, 0}, {0, 1}, {-1, 1}});
  const ConvexBody e = ConvexBody::disk(1);
  const Vec2 x(-0.2, -0.15);
  const auto r = closest_points(L, e, x);
  ASSERT_EQ(r.multiplicity(), 1);
  EXPECT_GE(r.hits[0].corner, 0);
  EXPECT_NEAR((grad_distance(L, e, x) - x.normalized()).norm(), 0.0, 1e-12);
  const Mat2 fd = oracle::fd_hessian([&](const Vec2& y) { return distance(L, e, y); }, x);
  EXPECT_NEAR((hess_distance(L, e, x) - fd).norm(), 0.0, 1e-5);
  EXPECT_THROW(hess_distance(L, e, {0.0, -0.3}), AtCornerShadow);
}

TEST(DistanceExamples, SampleFieldSquareDiagonals) {
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  const Grid g = Grid::covering({-1, -1}, {1, 1}, 64);
  const DistanceField f = sample_field(sq, ConvexBody::disk(1), g);
  int agree = 0;
  for (int j = 0; j < 64; ++j) {
    for (int i = 0; i < 64; ++i) {
      const Vec2 c = g.center(i, j);
      // Brute force: several edges at the minimal distance.
      const double dm = 1 - std::max(std::abs(c.x()), std::abs(c.y()));
      const double dx = 1 - std::abs(c.x()), dy = 1 - std::abs(c.y());
      const bool ridge = std::abs(dx - dy) < 1e-12;
      const bool got = f.label[g.index(i, j)] == RidgeLabel::multiplicity_ridge;
      agree += ridge == got;
      EXPECT_NEAR(f.d[g.index(i, j)], dm, 1e-12);
    }
  }
  EXPECT_EQ(agree, 64 * 64);
}

TEST(DistanceExamples, SampleFieldDiskCentre) {
  const Domain d = Domain::disk(1);
  const Grid g = Grid::covering({-1, -1}, {1, 1}, 33);
  const DistanceField f = sample_field(d, ConvexBody::disk(1), g);
  std::vector<Vec2> ridge;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const RidgeLabel l = f.label[g.index(i, j)];
      if (l == RidgeLabel::multiplicity_ridge || l == RidgeLabel::curvature_ridge) ridge.push_back(g.center(i, j));
    }
  ASSERT_FALSE(ridge.empty());
  for (const Vec2& c : ridge) EXPECT_LE(c.norm(), 1.5 * g.h);
}

TEST(DistanceExamples, SampleFieldPolygonMedialAxis) {
  const Domain P = Domain::polygon(kPentagon);
  const Vec2 lo = P.bbox_min(), hi = P.bbox_max();
  const Grid g = Grid::covering(lo, hi, 96);
  const DistanceField f = sample_field(P, ConvexBody::disk(1), g);
  // Brute force: the nearest edge is not constant over a 7 x 7 subsample of the cell.
  auto seg_dist = [](const Vec2& x, const Vec2& a, const Vec2& b) {
    const double t = std::clamp((x - a).dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
    return (x - a - t * (b - a)).norm();
  };
  auto nearest_edges = [&](const Vec2& x) {
    std::vector<int> best;
    double m = 1e300;
    for (std::size_t e = 0; e < kPentagon.size(); ++e) m = std::min(m, seg_dist(x, kPentagon[e], kPentagon[(e + 1) % 5]));
    for (std::size_t e = 0; e < kPentagon.size(); ++e)
      if (seg_dist(x, kPentagon[e], kPentagon[(e + 1) % 5]) <= m + 1e-12) best.push_back(static_cast<int>(e));
    return best;
  };
  int agree = 0, total = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!f.inside[k]) continue;
      ++total;
      std::set<int> seen;
      bool multi = false;
      for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) {
          const auto e = nearest_edges(g.center(i, j) + g.h * Vec2((a - 3) / 6.0, (b - 3) / 6.0));
          multi = multi || e.size() > 1;
          seen.insert(e.begin(), e.end());
        }
      const bool ridge = multi || seen.size() > 1;
      const RidgeLabel l = f.label[k];
      const bool got = l == RidgeLabel::multiplicity_ridge || l == RidgeLabel::curvature_ridge;
      agree += ridge == got;
    }
  }
  EXPECT_GE(static_cast<double>(agree) / total, 0.99) << agree << " / " << total;
}

TEST(DistanceExamples, FieldCsvFormat) {
  const Domain sq = Domain::rectangle(-1, -1, 1, 1);
  const Grid g = Grid::covering({-1, -1}, {1, 1}, 16);
  const DistanceField f = sample_field(sq, ConvexBody::disk(1), g);
  std::ostringstream os;
  write_field_csv(os, f);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "# 16 16 -1 1 -1 1");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 256);
  std::ostringstream ridge;
  write_field_csv(ridge, f, true);
  std::istringstream rs(ridge.str());
  int rrows = -1;
  while (std::getline(rs, line)) ++rrows;
  EXPECT_EQ(rrows, 32);  // both diagonals
}

// Properties.

TEST(DistanceProperties, LipschitzPairsOnGrid) {
  const Domain P = Domain::polygon(kPentagon);
  for (const ConvexBody& b : {ConvexBody::disk(1), triangle_body(), ConvexBody::ellipse(1.5, 0.5)}) {
    const Grid g = Grid::covering(P.bbox_min(), P.bbox_max(), 48);
    const DistanceField f = sample_field(P, b, g);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i + 1 < g.nx; ++i) {
        const std::size_t a = g.index(i, j), c = g.index(i + 1, j);
        if (!f.inside[a] || !f.inside[c]) continue;
        const Vec2 x = g.center(i, j), y = g.center(i + 1, j);
        EXPECT_LE(f.d[c] - f.d[a], b.gauge(y - x) + 1e-12);
        EXPECT_GE(f.d[c] - f.d[a], -b.gauge(x - y) - 1e-12);
        EXPECT_GT(f.d[a], 0.0);
      }
  }
}

TEST(DistanceProperties, SegmentToClosestPoint) {
  const Domain ed = ellipse_domain();
  const ConvexBody b = ConvexBody::ellipse(1.2, 0.7);
  for (const Vec2& x : interior_points(ed, 100, 34)) {
    const auto r = closest_points(ed, b, x);
    const Vec2 y = r.hits[0].point;
    for (double s : {0.1, 0.5, 0.9}) {
      const Vec2 z = x + s * (y - x);
      const auto rz = closest_points(ed, b, z);
      bool found = false;
      for (const auto& h : rz.hits) found = found || (h.point - y).norm() < 1e-6;
      EXPECT_TRUE(found) << x.transpose() << " s=" << s;
      EXPECT_NEAR(rz.distance, b.gauge(z - y), 1e-10);
    }
  }
}

TEST(DistanceProperties, ClosestPointContinuity) {
  const Domain ed = ellipse_domain();
  const ConvexBody b = ConvexBody::p_ball(3);
  for (const Vec2& x : interior_points(ed, 40, 35)) {
    const auto r = closest_points(ed, b, x);
    if (r.multiplicity() != 1 || ridge_residual(ed, b, x) < 0.2) continue;
    double ratio[2];
    int k = 0;
    for (double h : {1e-3, 1e-4}) {
      const auto rh = closest_points(ed, b, x + Vec2(h, 0.5 * h));
      ratio[k++] = (rh.hits[0].point - r.hits[0].point).norm() / h;
    }
    EXPECT_LT(ratio[0], 50.0);
    EXPECT_NEAR(ratio[0], ratio[1], 0.05 * ratio[0] + 1e-6);
  }
}

TEST(DistanceProperties, PolarGaugeOfGradientAndParametrization) {
  const Domain ed = ellipse_domain();
  for (const ConvexBody& b : {ConvexBody::disk(1), ConvexBody::ellipse(1.2, 0.7), ConvexBody::p_ball(3)}) {
    for (const Vec2& x : interior_points(ed, 60, 36)) {
      const auto r = closest_points(ed, b, x);
      if (r.multiplicity() != 1 || ridge_residual(ed, b, x) < 1e-3) continue;
      EXPECT_NEAR(b.polar_gauge(grad_distance(ed, b, x)), 1.0, 1e-9);
      const Hit& h = r.hits[0];
      EXPECT_NEAR((x - (h.point + r.distance * k_normal(ed, b, h.arc, h.t))).norm(), 0.0, 1e-8);
      EXPECT_NEAR(grad_distance(ed, b, x).dot((x - h.point) / b.gauge(x - h.point)), 1.0, 1e-9);
    }
  }
}

TEST(DistanceProperties, ResidualPositiveOffRidge) {
  const Domain ed = ellipse_domain();
  const ConvexBody b = ConvexBody::ellipse(1.2, 0.7);
  const Grid g = Grid::covering(ed.bbox_min(), ed.bbox_max(), 64);
  const DistanceField f = sample_field(ed, b, g);
  int off = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (f.label[k] != RidgeLabel::off_ridge) continue;
    ++off;
    EXPECT_GT(f.residual[k], 0.0);
  }
  EXPECT_GT(off, 1000);
}

TEST(DistanceProperties, LaplacianIncreasesTowardBoundary) {
  const Domain ed = ellipse_domain();
  const ConvexBody b = ConvexBody::ellipse(1.2, 0.7);
  for (const Vec2& x : interior_points(ed, 40, 37)) {
    const auto r = closest_points(ed, b, x);
    if (r.multiplicity() != 1 || ridge_residual(ed, b, x) < 1e-2) continue;
    const Vec2 y = r.hits[0].point;
    double prev = -1e300;
    for (int s = 0; s < 10; ++s) {
      const double lap = laplacian_distance(ed, b, x + (s / 10.0) * (y - x));
      EXPECT_GE(lap, prev - 1e-9);
      prev = lap;
    }
  }
}
