#include "vgc/convex_body.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "body_impl.hpp"

namespace vgc {
namespace detail {

namespace {

constexpr int kSampleDirections = 4096;

Mat2 rank_one(const Vec2& v) { return v * v.transpose(); }

double pnorm(const Vec2& x, double p) {
  const double m = std::max(std::abs(x.x()), std::abs(x.y()));
  if (m == 0.0) return 0.0;
  const double s = std::pow(std::abs(x.x()) / m, p) + std::pow(std::abs(x.y()) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vec2 pnorm_grad(const Vec2& x, double p) {
  const double n = pnorm(x, p);
  Vec2 g;
  for (int i = 0; i < 2; ++i) g[i] = std::copysign(std::pow(std::abs(x[i]) / n, p - 1.0), x[i]);
  return g;
}

Mat2 pnorm_hess(const Vec2& x, double p) {
  const double n = pnorm(x, p);
  const Vec2 g = pnorm_grad(x, p);
  Mat2 h = -rank_one(g);
  for (int i = 0; i < 2; ++i) h(i, i) += std::pow(std::abs(x[i]) / n, p - 2.0);
  return (p - 1.0) / n * h;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

GaugeBounds BodyImpl::gauge_bounds() const {
  GaugeBounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < kSampleDirections; ++i) {
    const double g = gauge(unit_vec(kTwoPi * i / kSampleDirections));
    b.c_lower = std::min(b.c_lower, g);
    b.c_upper = std::max(b.c_upper, g);
  }
  return b;
}

double BodyImpl::diameter() const {
  double w = 0.0;
  for (int i = 0; i < kSampleDirections; ++i) {
    const Vec2 u = unit_vec(kTwoPi * i / kSampleDirections);
    w = std::max(w, polar_gauge(u) + polar_gauge(-u));
  }
  return w;
}

double BodyImpl::max_radius() const { return 1.0 / gauge_bounds().c_lower; }

double BodyImpl::min_support() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSampleDirections; ++i) m = std::min(m, polar_gauge(unit_vec(kTwoPi * i / kSampleDirections)));
  return m;
}

namespace {

class DiskImpl final : public BodyImpl {
public:
  explicit DiskImpl(double r) : r_(r) {}
  ConvexBody::Kind kind() const override { return ConvexBody::Kind::disk; }
  double gauge(const Vec2& x) const override { return x.norm() / r_; }
  Vec2 grad_gauge(const Vec2& x, bool*) const override { return x / (r_ * x.norm()); }
  Mat2 hess_gauge(const Vec2& x) const override {
    const double n = x.norm();
    return (Mat2::Identity() - rank_one(x / n)) / (r_ * n);
  }
  double polar_gauge(const Vec2& x) const override { return r_ * x.norm(); }
  SupportPoint support(const Vec2& x) const override { return {r_ * x / x.norm(), false}; }
  Mat2 hess_polar(const Vec2& x) const override {
    const double n = x.norm();
    return r_ * (Mat2::Identity() - rank_one(x / n)) / n;
  }
  double curvature_radius(const Vec2&) const override { return r_; }
  BodyPtr polar() const override { return std::make_shared<DiskImpl>(1.0 / r_); }
  std::vector<double> parameters() const override { return {r_}; }
  std::string describe() const override { return "disk " + fmt_num(r_); }
  GaugeBounds gauge_bounds() const override { return {1.0 / r_, 1.0 / r_}; }
  double diameter() const override { return 2.0 * r_; }
  double max_radius() const override { return r_; }
  double min_support() const override { return r_; }

private:
  double r_;
};

class EllipseImpl final : public BodyImpl {
public:
  EllipseImpl(double a, double b) : a_(a), b_(b) {}
  ConvexBody::Kind kind() const override { return ConvexBody::Kind::ellipse; }
  double gauge(const Vec2& x) const override { return std::hypot(x.x() / a_, x.y() / b_); }
  Vec2 grad_gauge(const Vec2& x, bool*) const override {
    return Vec2(x.x() / (a_ * a_), x.y() / (b_ * b_)) / gauge(x);
  }
  Mat2 hess_gauge(const Vec2& x) const override {
    const double g = gauge(x);
    const Vec2 ax(x.x() / (a_ * a_), x.y() / (b_ * b_));
    Mat2 m = Mat2::Zero();
    m(0, 0) = 1.0 / (a_ * a_);
    m(1, 1) = 1.0 / (b_ * b_);
    return (m - rank_one(ax) / (g * g)) / g;
  }
  double polar_gauge(const Vec2& x) const override { return std::hypot(a_ * x.x(), b_ * x.y()); }
  SupportPoint support(const Vec2& x) const override {
    return {Vec2(a_ * a_ * x.x(), b_ * b_ * x.y()) / polar_gauge(x), false};
  }
  Mat2 hess_polar(const Vec2& x) const override {
    const double g = polar_gauge(x);
    const Vec2 ax(a_ * a_ * x.x(), b_ * b_ * x.y());
    Mat2 m = Mat2::Zero();
    m(0, 0) = a_ * a_;
    m(1, 1) = b_ * b_;
    return (m - rank_one(ax) / (g * g)) / g;
  }
  double curvature_radius(const Vec2& n) const override {
    const double h = polar_gauge(n / n.norm());
    return a_ * a_ * b_ * b_ / (h * h * h);
  }
  BodyPtr polar() const override { return std::make_shared<EllipseImpl>(1.0 / a_, 1.0 / b_); }
  std::vector<double> parameters() const override { return {a_, b_}; }
  std::string describe() const override { return "ellipse " + fmt_num(a_) + " " + fmt_num(b_); }
  GaugeBounds gauge_bounds() const override { return {1.0 / std::max(a_, b_), 1.0 / std::min(a_, b_)}; }
  double diameter() const override { return 2.0 * std::max(a_, b_); }
  double max_radius() const override { return std::max(a_, b_); }
  double min_support() const override { return std::min(a_, b_); }

private:
  double a_, b_;
};

class PBallImpl final : public BodyImpl {
public:
  explicit PBallImpl(double p) : p_(p), q_(p / (p - 1.0)) {}
  ConvexBody::Kind kind() const override { return ConvexBody::Kind::p_ball; }
  double gauge(const Vec2& x) const override { return pnorm(x, p_); }
  Vec2 grad_gauge(const Vec2& x, bool*) const override { return pnorm_grad(x, p_); }
  Mat2 hess_gauge(const Vec2& x) const override { return pnorm_hess(x, p_); }
  double polar_gauge(const Vec2& x) const override { return pnorm(x, q_); }
  SupportPoint support(const Vec2& x) const override { return {pnorm_grad(x, q_), false}; }
  Mat2 hess_polar(const Vec2& x) const override {
    if (q_ < 2.0 && on_axis(x))
      throw CurvatureDegenerate("p_ball: boundary curvature vanishes at this normal");
    return pnorm_hess(x, q_);
  }
  double curvature_radius(const Vec2& n) const override {
    if (on_axis(n)) {
      if (p_ > 2.0) throw CurvatureDegenerate("p_ball: boundary curvature vanishes at this normal");
      if (p_ < 2.0) return 0.0;
    }
    // Curvature of the level curve |y1|^p + |y2|^p = 1 at the support point.
    const Vec2 y = support(n).point;
    Vec2 f1, f2;
    for (int i = 0; i < 2; ++i) {
      f1[i] = p_ * std::copysign(std::pow(std::abs(y[i]), p_ - 1.0), y[i]);
      f2[i] = p_ * (p_ - 1.0) * std::pow(std::abs(y[i]), p_ - 2.0);
    }
    const double kappa = (f2.x() * f1.y() * f1.y() + f2.y() * f1.x() * f1.x()) / std::pow(f1.norm(), 3.0);
    return 1.0 / kappa;
  }
  BodyPtr polar() const override { return std::make_shared<PBallImpl>(q_); }
  std::vector<Vec2> degenerate_normals() const override {
    if (p_ <= 2.0) return {};
    return {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)};
  }
  std::vector<double> parameters() const override { return {p_}; }
  std::string describe() const override { return "p_ball " + fmt_num(p_); }
  GaugeBounds gauge_bounds() const override {
    const double f = std::pow(2.0, 1.0 / p_ - 0.5);
    return p_ >= 2.0 ? GaugeBounds{f, 1.0} : GaugeBounds{1.0, f};
  }
  double max_radius() const override { return p_ >= 2.0 ? std::pow(2.0, 0.5 - 1.0 / p_) : 1.0; }
  double diameter() const override { return 2.0 * max_radius(); }
  double min_support() const override { return q_ >= 2.0 ? std::pow(2.0, 1.0 / q_ - 0.5) : 1.0; }

private:
  static bool on_axis(const Vec2& x) {
    const double tol = 1e-14 * x.norm();
    return std::abs(x.x()) <= tol || std::abs(x.y()) <= tol;
  }
  double p_, q_;
};

class PolygonImpl final : public BodyImpl {
public:
  explicit PolygonImpl(std::vector<Vec2> v) : v_(std::move(v)) {
    const std::size_t n = v_.size();
    if (n < 3) throw InvalidBody("polygon needs at least three vertices");
    double scale = 0.0;
    for (const auto& p : v_) scale = std::max(scale, p.norm());
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = v_[(i + 1) % n] - v_[i];
      const Vec2 e2 = v_[(i + 2) % n] - v_[(i + 1) % n];
      if (e.norm() <= 1e-14 * scale) throw InvalidBody("polygon has repeated vertices");
      if (cross(e, e2) <= 1e-12 * scale * scale)
        throw InvalidBody("polygon vertices must be counterclockwise in strictly convex position");
      const Vec2 nrm = Vec2(e.y(), -e.x()).normalized();
      const double c = nrm.dot(v_[i]);
      if (c <= 1e-12 * scale) throw InvalidBody("origin must lie strictly inside the polygon");
      n_.push_back(nrm);
      c_.push_back(c);
      a_.push_back(nrm / c);
    }
  }
  ConvexBody::Kind kind() const override { return ConvexBody::Kind::polygon; }

  // The edge crossed by the ray through x is the one with the largest facet value.
  double gauge(const Vec2& x) const override {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : a_) best = std::max(best, a.dot(x));
    return std::max(best, 0.0);
  }
  Vec2 grad_gauge(const Vec2& x, bool* kink) const override {
    std::size_t i = 0;
    double best = -std::numeric_limits<double>::infinity(), second = best;
    for (std::size_t k = 0; k < a_.size(); ++k) {
      const double v = a_[k].dot(x);
      if (v > best) {
        second = best;
        best = v;
        i = k;
      } else if (v > second) {
        second = v;
      }
    }
    if (kink) *kink = best - second <= 1e-12 * std::abs(best);
    return a_[i];
  }
  Mat2 hess_gauge(const Vec2&) const override { return Mat2::Zero(); }
  double polar_gauge(const Vec2& x) const override {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : v_) best = std::max(best, v.dot(x));
    return best;
  }
  SupportPoint support(const Vec2& x) const override {
    const std::size_t n = v_.size();
    std::size_t i = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double v = v_[k].dot(x);
      if (v > best) {
        best = v;
        i = k;
      }
    }
    const double tol = 1e-12 * std::max(std::abs(best), x.norm() * max_radius());
    for (std::size_t k : {(i + 1) % n, (i + n - 1) % n}) {
      if (best - v_[k].dot(x) <= tol) return {0.5 * (v_[i] + v_[k]), true};
    }
    return {v_[i], false};
  }
  Mat2 hess_polar(const Vec2& x) const override {
    if (support(x).ambiguous) throw CurvatureDegenerate("polygon: direction is an edge normal");
    return Mat2::Zero();
  }
  double curvature_radius(const Vec2& n) const override {
    if (support(n).ambiguous) throw CurvatureDegenerate("polygon: edge has infinite radius of curvature");
    return 0.0;
  }
  BodyPtr polar() const override { return std::make_shared<PolygonImpl>(a_); }
  std::vector<Vec2> degenerate_normals() const override { return n_; }
  bool strictly_convex() const override { return false; }
  std::vector<double> parameters() const override {
    std::vector<double> p;
    for (const auto& v : v_) {
      p.push_back(v.x());
      p.push_back(v.y());
    }
    return p;
  }
  const std::vector<Vec2>* vertices() const override { return &v_; }
  std::string describe() const override {
    std::string s = "polygon";
    for (double p : parameters()) s += " " + fmt_num(p);
    return s;
  }
  std::vector<double> support_kinks() const override {
    std::vector<double> k;
    for (const auto& nrm : n_) k.push_back(angle_of(nrm));
    return k;
  }
  GaugeBounds gauge_bounds() const override {
    return {1.0 / max_radius(), 1.0 / min_support()};
  }
  double diameter() const override {
    double d = 0.0;
    for (const auto& p : v_)
      for (const auto& q : v_) d = std::max(d, (p - q).norm());
    return d;
  }
  double max_radius() const override {
    double r = 0.0;
    for (const auto& p : v_) r = std::max(r, p.norm());
    return r;
  }
  double min_support() const override { return *std::min_element(c_.begin(), c_.end()); }

private:
  std::vector<Vec2> v_, n_, a_;
  std::vector<double> c_;
};

class RadialBody final : public BodyImpl {
public:
  RadialBody(std::shared_ptr<const RadialCore> core, bool dual, std::string description)
      : core_(std::move(core)), dual_(dual), description_(std::move(description)) {}
  ConvexBody::Kind kind() const override { return ConvexBody::Kind::smooth; }
  double gauge(const Vec2& x) const override { return dual_ ? core_->polar_gauge(x) : core_->gauge(x); }
  Vec2 grad_gauge(const Vec2& x, bool*) const override {
    return dual_ ? core_->support(x) : core_->grad_gauge(x);
  }
  Mat2 hess_gauge(const Vec2& x) const override { return dual_ ? core_->hess_polar(x) : core_->hess_gauge(x); }
  double polar_gauge(const Vec2& x) const override { return dual_ ? core_->gauge(x) : core_->polar_gauge(x); }
  SupportPoint support(const Vec2& x) const override {
    return {dual_ ? core_->grad_gauge(x) : core_->support(x), false};
  }
  Mat2 hess_polar(const Vec2& x) const override { return dual_ ? core_->hess_gauge(x) : core_->hess_polar(x); }
  double curvature_radius(const Vec2& n) const override {
    const double phi = angle_of(n);
    if (dual_) return core_->gauge_curvature_factor(phi);
    return core_->radius_of_curvature(core_->theta_star(phi));
  }
  BodyPtr polar() const override {
    return std::make_shared<RadialBody>(core_, !dual_, "polar of " + description_);
  }
  bool strictly_convex() const override { return core_->strictly_convex(); }
  std::string describe() const override { return description_; }

private:
  std::shared_ptr<const RadialCore> core_;
  bool dual_;
  std::string description_;
};

}  // namespace

BodyPtr make_radial_body(std::shared_ptr<const RadialCore> core, bool dual, std::string description) {
  return std::make_shared<RadialBody>(std::move(core), dual, std::move(description));
}

RadialCore::RadialCore(Jet jet, int table_size) : jet_(std::move(jet)) {
  theta_.resize(table_size + 1);
  psi_.resize(table_size + 1);
  for (int j = 0; j <= table_size; ++j) {
    const double t = kTwoPi * j / table_size;
    double r, r1, r2;
    eval(t, r, r1, r2);
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidBody("radial function must be positive");
    theta_[j] = t;
    psi_[j] = t - std::atan2(r1, r);
    if (r * r + 2.0 * r1 * r1 - r * r2 <= 0.0) strictly_convex_ = false;
    if (j > 0 && psi_[j] < psi_[j - 1] - 1e-12) throw InvalidBody("radial function does not describe a convex body");
  }
}

double RadialCore::gauge(const Vec2& x) const {
  const double s = x.norm();
  if (s == 0.0) return 0.0;
  double r, r1, r2;
  eval(angle_of(x), r, r1, r2);
  return s / r;
}

Vec2 RadialCore::grad_gauge(const Vec2& x) const {
  const double phi = angle_of(x);
  double r, r1, r2;
  eval(phi, r, r1, r2);
  const Vec2 es = unit_vec(phi);
  return es / r - (r1 / (r * r)) * perp(es);
}

double RadialCore::gauge_curvature_factor(double phi) const {
  double r, r1, r2;
  eval(phi, r, r1, r2);
  return 1.0 / r + 2.0 * r1 * r1 / (r * r * r) - r2 / (r * r);
}

Mat2 RadialCore::hess_gauge(const Vec2& x) const {
  const double phi = angle_of(x);
  const Vec2 ep = perp(unit_vec(phi));
  return gauge_curvature_factor(phi) / x.norm() * rank_one(ep);
}

double RadialCore::theta_star(double phi) const {
  const double psi0 = psi_.front();
  double ph = std::fmod(phi - psi0, kTwoPi);
  if (ph < 0.0) ph += kTwoPi;
  ph += psi0;
  std::size_t j = std::upper_bound(psi_.begin(), psi_.end(), ph) - psi_.begin();
  j = std::clamp<std::size_t>(j, 1, psi_.size() - 1) - 1;
  double a = theta_[j], b = theta_[j + 1];
  const double dpsi = psi_[j + 1] - psi_[j];
  double t = dpsi > 0.0 ? a + (b - a) * std::clamp((ph - psi_[j]) / dpsi, 0.0, 1.0) : 0.5 * (a + b);
  // m(t) = <z(t), u(ph)>; m' vanishes where the normal at z(t) is u(ph), and
  // m'/|z'| = sin(ph - psi(t)) is the alignment residual.
  for (int it = 0; it < 100; ++it) {
    double r, r1, r2;
    eval(t, r, r1, r2);
    const double c = std::cos(t - ph), s = std::sin(t - ph);
    const double mp = r1 * c - r * s;
    if (std::abs(mp) <= 1e-15 * std::hypot(r, r1)) break;
    if (mp > 0.0) a = t;
    else b = t;
    if (b - a <= 1e-15 * (1.0 + std::abs(t))) break;
    const double mpp = r2 * c - 2.0 * r1 * s - r * c;
    double tn = mpp < 0.0 ? t - mp / mpp : 0.5 * (a + b);
    if (!(tn > a && tn < b)) tn = 0.5 * (a + b);
    t = tn;
  }
  return t;
}

double RadialCore::polar_gauge(const Vec2& x) const {
  const double s = x.norm();
  if (s == 0.0) return 0.0;
  const double phi = angle_of(x);
  const double t = theta_star(phi);
  double r, r1, r2;
  eval(t, r, r1, r2);
  return s * r * std::cos(t - phi);
}

Vec2 RadialCore::support(const Vec2& x) const {
  const double t = theta_star(angle_of(x));
  double r, r1, r2;
  eval(t, r, r1, r2);
  return r * unit_vec(t);
}

double RadialCore::radius_of_curvature(double theta) const {
  double r, r1, r2;
  eval(theta, r, r1, r2);
  const double den = r * r + 2.0 * r1 * r1 - r * r2;
  if (den <= 0.0) throw CurvatureDegenerate("radial body: boundary curvature vanishes");
  return std::pow(r * r + r1 * r1, 1.5) / den;
}

Mat2 RadialCore::hess_polar(const Vec2& x) const {
  const double phi = angle_of(x);
  const Vec2 ep = perp(unit_vec(phi));
  return radius_of_curvature(theta_star(phi)) / x.norm() * rank_one(ep);
}

}  // namespace detail

using detail::BodyPtr;

ConvexBody::ConvexBody(std::shared_ptr<const detail::BodyImpl> impl, double sign)
    : impl_(std::move(impl)), sign_(sign) {
  init_cached();
}

void ConvexBody::init_cached() {
  degenerate_.clear();
  for (const auto& m : impl_->degenerate_normals()) degenerate_.push_back(sign_ * m);
}

ConvexBody ConvexBody::disk(double r) {
  if (!(r > 0.0)) throw InvalidBody("disk radius must be positive");
  return ConvexBody(std::make_shared<detail::DiskImpl>(r), 1.0);
}

ConvexBody ConvexBody::ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidBody("ellipse semi-axes must be positive");
  return ConvexBody(std::make_shared<detail::EllipseImpl>(a, b), 1.0);
}

ConvexBody ConvexBody::p_ball(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidBody("p_ball needs 1 < p < infinity");
  return ConvexBody(std::make_shared<detail::PBallImpl>(p), 1.0);
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
  return ConvexBody(std::make_shared<detail::PolygonImpl>(std::move(vertices)), 1.0);
}

ConvexBody ConvexBody::smooth(RadialFunction f) {
  if (!f.rho || !f.drho || !f.d2rho) throw InvalidBody("smooth body needs rho, rho' and rho''");
  if (std::abs(f.rho(0.0) - f.rho(kTwoPi)) > 1e-9 * std::abs(f.rho(0.0)))
    throw InvalidBody("radial function must be 2pi-periodic");
  auto jet = [f](double t, double& r, double& r1, double& r2) {
    r = f.rho(t);
    r1 = f.drho(t);
    r2 = f.d2rho(t);
  };
  auto core = std::make_shared<detail::RadialCore>(jet, 1024);
  return ConvexBody(detail::make_radial_body(core, false, "smooth"), 1.0);
}

ConvexBody::Kind ConvexBody::kind() const { return impl_->kind(); }
bool ConvexBody::strictly_convex() const { return impl_->strictly_convex(); }

double ConvexBody::gauge(const Vec2& x) const {
  if (x.x() == 0.0 && x.y() == 0.0) return 0.0;
  return impl_->gauge(sign_ * x);
}

double ConvexBody::polar_gauge(const Vec2& x) const {
  if (x.x() == 0.0 && x.y() == 0.0) return 0.0;
  return impl_->polar_gauge(sign_ * x);
}

namespace {
void require_nonzero(const Vec2& x, const char* op) {
  if (x.x() == 0.0 && x.y() == 0.0) throw ZeroVector(std::string(op) + ": zero vector");
}
}  // namespace

Vec2 ConvexBody::grad_gauge(const Vec2& x) const {
  require_nonzero(x, "grad_gauge");
  bool kink = false;
  const Vec2 g = impl_->grad_gauge(sign_ * x, &kink);
  if (kink) throw NondifferentiablePoint("grad_gauge: direction hits a polygon vertex");
  return sign_ * g;
}

Vec2 ConvexBody::subgradient(const Vec2& x) const {
  require_nonzero(x, "subgradient");
  return sign_ * impl_->grad_gauge(sign_ * x, nullptr);
}

SupportPoint ConvexBody::support_point(const Vec2& x) const {
  require_nonzero(x, "support_point");
  SupportPoint s = impl_->support(sign_ * x);
  s.point *= sign_;
  return s;
}

Vec2 ConvexBody::grad_polar_gauge(const Vec2& x) const {
  const SupportPoint s = support_point(x);
  if (s.ambiguous) throw AmbiguousNormal("grad_polar_gauge: direction is a polygon edge normal", s.point);
  return s.point;
}

Mat2 ConvexBody::hess_gauge(const Vec2& x) const {
  require_nonzero(x, "hess_gauge");
  if (kind() == Kind::polygon) {
    bool kink = false;
    impl_->grad_gauge(sign_ * x, &kink);
    if (kink) throw NondifferentiablePoint("hess_gauge: direction hits a polygon vertex");
  }
  const Mat2 h = impl_->hess_gauge(sign_ * x);
  if (!h.allFinite()) throw CurvatureDegenerate("hess_gauge: Hessian is unbounded here");
  return h;
}

Mat2 ConvexBody::hess_gauge_or_zero(const Vec2& x) const { return impl_->hess_gauge(sign_ * x); }

Mat2 ConvexBody::hess_polar_gauge(const Vec2& x) const {
  require_nonzero(x, "hess_polar_gauge");
  return impl_->hess_polar(sign_ * x);
}

GaugeJet ConvexBody::gauge_jet(const Vec2& x) const {
  GaugeJet j;
  j.value = gauge(x);
  j.gradient = grad_gauge(x);
  try {
    j.hessian = hess_gauge(x);
  } catch (const Error&) {
  }
  return j;
}

GaugeJet ConvexBody::polar_gauge_jet(const Vec2& x) const {
  GaugeJet j;
  j.value = polar_gauge(x);
  j.gradient = grad_polar_gauge(x);
  try {
    j.hessian = hess_polar_gauge(x);
  } catch (const Error&) {
  }
  return j;
}

double ConvexBody::curvature_radius(const Vec2& n) const {
  require_nonzero(n, "curvature_radius");
  return impl_->curvature_radius(sign_ * n);
}

ConvexBody ConvexBody::polar_body() const { return ConvexBody(impl_->polar(), sign_); }

ConvexBody ConvexBody::reflect() const { return ConvexBody(impl_, -sign_); }

ConvexBody ConvexBody::smooth_approximation(int k) const {
  if (k < 1) throw InvalidBody("smooth_approximation: k must be positive");
  if (kind() == Kind::disk || kind() == Kind::ellipse) return *this;
  return ConvexBody(detail::make_smooth_approximation(impl_, k), sign_);
}

GaugeBounds ConvexBody::gauge_bounds() const { return impl_->gauge_bounds(); }
double ConvexBody::diameter() const { return impl_->diameter(); }
double ConvexBody::max_radius() const { return impl_->max_radius(); }
double ConvexBody::min_support() const { return impl_->min_support(); }
std::vector<double> ConvexBody::parameters() const { return impl_->parameters(); }

const std::vector<Vec2>& ConvexBody::vertices() const {
  static const std::vector<Vec2> none;
  const auto* v = impl_->vertices();
  return v ? *v : none;
}

std::string ConvexBody::describe() const { return (reflected() ? "reflected " : "") + impl_->describe(); }

}  // namespace vgc
