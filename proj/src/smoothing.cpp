#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "body_impl.hpp"

namespace vgc::detail {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// Kernel (1 - (s/w)^2)^4 on [-w, w] with its first two derivatives.
struct Kernel {
  double w;
  void eval(double s, double& e0, double& e1, double& e2) const {
    const double t = s / w, a = 1.0 - t * t;
    e0 = a * a * a * a;
    e1 = -8.0 * t * a * a * a / w;
    e2 = (-8.0 * a * a * a + 48.0 * t * t * a * a) / (w * w);
  }
};

// Periodic quintic Hermite interpolant through values and two derivatives.
class PeriodicQuintic {
public:
  PeriodicQuintic(std::vector<double> f, std::vector<double> f1, std::vector<double> f2)
      : f_(std::move(f)), f1_(std::move(f1)), f2_(std::move(f2)), step_(kTwoPi / f_.size()) {}

  void eval(double theta, double& v, double& d1, double& d2) const {
    const std::size_t n = f_.size();
    const double x = wrap_angle(theta) / step_;
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(x), n - 1);
    const double t = x - static_cast<double>(i);
    const std::size_t j = (i + 1) % n;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h = step_;
    const double a0 = f_[i], a1 = h * f1_[i], a2 = h * h * f2_[i];
    const double b0 = f_[j], b1 = h * f1_[j], b2 = h * h * f2_[j];
    v = a0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + a1 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
        a2 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) + b0 * (10 * t3 - 15 * t4 + 6 * t5) +
        b1 * (-4 * t3 + 7 * t4 - 3 * t5) + b2 * (0.5 * t3 - t4 + 0.5 * t5);
    const double p1 = a0 * (-30 * t2 + 60 * t3 - 30 * t4) + a1 * (1 - 18 * t2 + 32 * t3 - 15 * t4) +
                      a2 * (t - 4.5 * t2 + 6 * t3 - 2.5 * t4) + b0 * (30 * t2 - 60 * t3 + 30 * t4) +
                      b1 * (-12 * t2 + 28 * t3 - 15 * t4) + b2 * (1.5 * t2 - 4 * t3 + 2.5 * t4);
    const double p2 = a0 * (-60 * t + 180 * t2 - 120 * t3) + a1 * (-36 * t + 96 * t2 - 60 * t3) +
                      a2 * (1 - 9 * t + 18 * t2 - 10 * t3) + b0 * (60 * t - 180 * t2 + 120 * t3) +
                      b1 * (-24 * t + 84 * t2 - 60 * t3) + b2 * (3 * t - 12 * t2 + 10 * t3);
    d1 = p1 / h;
    d2 = p2 / (h * h);
  }

private:
  std::vector<double> f_, f1_, f2_;
  double step_;
};

}  // namespace

BodyPtr make_smooth_approximation(const BodyPtr& body, int k) {
  const double w = std::ldexp(1.0, -k);
  const Kernel kernel{w};
  const double eps_round = 0.05 * body->max_radius();
  const double inflate = w * eps_round;

  std::vector<double> splits = body->support_kinks();
  for (const auto& m : body->degenerate_normals()) splits.push_back(angle_of(m));

  // m = integral of kernel(s) cos(s); dividing by it keeps K inside the result.
  double mass = 0.0;
  for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
    for (double sg : {-1.0, 1.0}) {
      const double s = sg * w * kGlNodes[q];
      double e0, e1, e2;
      kernel.eval(s, e0, e1, e2);
      mass += w * kGlWeights[q] * e0 * std::cos(s);
    }
  }

  const int n = std::max(2048, static_cast<int>(std::ceil(kTwoPi * 32.0 / w)));
  std::vector<double> h0(n), h1(n), h2(n);
  std::vector<double> cuts;
  for (int j = 0; j < n; ++j) {
    const double phi = kTwoPi * j / n;
    cuts.assign({-w, w});
    for (double a : splits) {
      // s with phi - s equal to a kink angle modulo 2pi.
      double s = std::remainder(phi - a, kTwoPi);
      if (s > -w && s < w) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());
    double v0 = 0.0, v1 = 0.0, v2 = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double lo = cuts[c], hi = cuts[c + 1];
      if (hi - lo <= 0.0) continue;
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
        for (double sg : {-1.0, 1.0}) {
          const double s = mid + sg * half * kGlNodes[q];
          const double hv = body->polar_gauge(unit_vec(phi - s));
          double e0, e1, e2;
          kernel.eval(s, e0, e1, e2);
          const double wq = half * kGlWeights[q] * hv;
          v0 += wq * e0;
          v1 += wq * e1;
          v2 += wq * e2;
        }
      }
    }
    h0[j] = v0 / mass + inflate;
    h1[j] = v1 / mass;
    h2[j] = v2 / mass;
  }

  // The polar of the smoothed body has radial function 1/h.
  auto support = std::make_shared<PeriodicQuintic>(std::move(h0), std::move(h1), std::move(h2));
  auto jet = [support](double t, double& r, double& r1, double& r2) {
    double h, d1, d2;
    support->eval(t, h, d1, d2);
    r = 1.0 / h;
    r1 = -d1 / (h * h);
    r2 = -d2 / (h * h) + 2.0 * d1 * d1 / (h * h * h);
  };
  auto core = std::make_shared<RadialCore>(jet, n);
  return make_radial_body(core, true, "smooth approximation " + std::to_string(k) + " of " + body->describe());
}

}  // namespace vgc::detail
