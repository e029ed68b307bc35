#include "vgc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "json.hpp"

namespace vgc {

namespace {

Check make(std::string name, std::string anchor, double measured, double threshold, bool ok) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.measured = measured;
  c.threshold = threshold;
  c.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

std::pair<int, int> ij(const Grid& g, std::size_t k) {
  return {static_cast<int>(k % g.nx), static_cast<int>(k / g.nx)};
}

bool is_ridge(RidgeLabel l) { return l == RidgeLabel::multiplicity_ridge || l == RidgeLabel::curvature_ridge; }

}  // namespace

bool VerificationReport::failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = !failed();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json o;
    o["name"] = c.name;
    o["anchor"] = c.anchor;
    o["status"] = to_string(c.status);
    o["measured"] = c.measured;
    o["threshold"] = c.threshold;
    if (!c.reason.empty()) o["reason"] = c.reason;
    if (c.exploratory) o["exploratory"] = true;
    if (!c.locations.empty()) {
      auto& loc = o["locations"] = nlohmann::ordered_json::array();
      for (const auto& [i, jj] : c.locations) loc.push_back({i, jj});
    }
    arr.push_back(o);
  }
  return j.dump(2);
}

Check check_gradient_constraint(const Solution& sol, const ConvexBody& body, double factor) {
  const Discretization& d = sol.disc();
  double m = 0.0;
  std::size_t where = 0;
  for (std::size_t p = 0; p < d.size(); ++p) {
    const double v = body.polar_gauge(d.gradient(sol.u_free, p));
    if (v > m) {
      m = v;
      where = d.cell[p];
    }
  }
  const double thr = 1.0 + factor * sol.grid.h * sol.lipschitz;
  Check c = make("gradient_constraint", "the gradient of the minimizer lies in the polar body", m, thr, m <= thr);
  if (d.size() > 0) c.locations.push_back(ij(sol.grid, where));
  return c;
}

Check check_ep_characterization(const Solution& sol, const ConvexBody& body, double max_fraction) {
  Check c;
  c.name = "elastic_plastic_characterization";
  c.anchor = "plastic cells are exactly those where the polar gauge of the gradient reaches one";
  c.threshold = max_fraction;
  if (!body.strictly_convex()) {
    c.status = CheckStatus::skipped;
    c.reason = "hypothesis not met: K is not strictly convex";
    return c;
  }
  int plastic = 0, sym = 0;
  for (std::size_t k = 0; k < sol.regions.size(); ++k) {
    if (sol.regions[k] == Region::exterior) continue;
    const bool a = sol.regions[k] == Region::plastic_plus || sol.regions[k] == Region::plastic_minus;
    const bool b = sol.gradient_plastic[k];
    plastic += a;
    if (a != b) {
      ++sym;
      if (c.locations.size() < 64) c.locations.push_back(ij(sol.grid, k));
    }
  }
  c.measured = plastic > 0 ? static_cast<double>(sym) / plastic : (sym > 0 ? 1.0 : 0.0);
  c.status = c.measured <= max_fraction ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

Check check_ridge_noncontact(const Solution& sol, const DistanceField& field, bool exploratory, double min_cells) {
  const Grid& g = sol.grid;
  double best = std::numeric_limits<double>::infinity();
  std::pair<int, int> where{-1, -1};
  for (int side = 0; side < 2; ++side) {
    const Region want = side == 0 ? Region::plastic_plus : Region::plastic_minus;
    const auto& labels = side == 0 ? field.label : field.label_bar;
    std::vector<std::pair<int, int>> ridge, plastic;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (is_ridge(labels[k])) ridge.push_back(ij(g, k));
      if (sol.regions[k] == want) plastic.push_back(ij(g, k));
    }
    for (const auto& p : plastic) {
      for (const auto& r : ridge) {
        const double dd = std::hypot(p.first - r.first, p.second - r.second);
        if (dd < best) {
          best = dd;
          where = p;
        }
      }
    }
  }
  Check c = make("ridge_noncontact", "the ridge of the distance does not meet the plastic set", best, min_cells,
                 best >= min_cells);
  if (!std::isfinite(best)) {
    c.measured = -1.0;
    c.reason = "vacuous: plastic set or ridge is empty";
    c.status = CheckStatus::pass;
  } else {
    c.locations.push_back(where);
  }
  c.exploratory = exploratory;
  if (exploratory) c.reason += (c.reason.empty() ? "" : "; ") + std::string("exploratory: K is not smooth");
  return c;
}

Check check_segment_plasticity(const Solution& sol, const DistanceField& field, int n_samples, double min_fraction) {
  const Grid& g = sol.grid;
  const Discretization& d = sol.disc();
  long total = 0, same = 0;
  Check c;
  for (int side = 0; side < 2; ++side) {
    const Region want = side == 0 ? Region::plastic_plus : Region::plastic_minus;
    const auto& hits = side == 0 ? field.hit : field.hit_bar;
    std::vector<std::size_t> cells;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (sol.regions[k] == want) cells.push_back(k);
    if (cells.empty()) continue;
    const int n = std::min<int>(n_samples, static_cast<int>(cells.size()));
    for (int s = 0; s < n; ++s) {
      const std::size_t k = cells[(static_cast<std::size_t>(s) * cells.size()) / n];
      const auto [i, j] = ij(g, k);
      const Vec2 x = g.center(i, j), y = hits[k].point;
      const double len = (y - x).norm();
      const int steps = static_cast<int>(std::ceil(len / (0.5 * g.h)));
      std::set<std::size_t> seen;
      for (int t = 0; t < steps; ++t) {
        int ci, cj;
        g.locate(x + (static_cast<double>(t) / steps) * (y - x), ci, cj);
        const std::size_t q = g.index(ci, cj);
        if (d.unknown[q] < 0 || !seen.insert(q).second) continue;
        ++total;
        if (sol.regions[q] == want) ++same;
        else if (c.locations.size() < 64) c.locations.push_back({ci, cj});
      }
    }
  }
  c.name = "segment_plasticity";
  c.anchor = "the segment from a plastic point to its closest boundary point is plastic";
  c.threshold = min_fraction;
  if (total == 0) {
    c.measured = 1.0;
    c.status = CheckStatus::pass;
    c.reason = "vacuous: plastic set is empty";
    return c;
  }
  c.measured = static_cast<double>(same) / total;
  c.status = c.measured >= min_fraction ? CheckStatus::pass : CheckStatus::fail;
  return c;
}

double interior_second_difference(const Solution& sol, const Domain& domain, double min_distance) {
  const Grid& g = sol.grid;
  const Discretization& d = sol.disc();
  const double h2 = g.h * g.h;
  double m = 0.0;
  for (int j = 1; j + 1 < g.ny; ++j) {
    for (int i = 1; i + 1 < g.nx; ++i) {
      bool ok = true;
      for (int dj = -1; dj <= 1 && ok; ++dj)
        for (int di = -1; di <= 1 && ok; ++di) ok = d.unknown[g.index(i + di, j + dj)] >= 0;
      if (!ok || domain.boundary_distance(g.center(i, j)) < min_distance) continue;
      auto u = [&](int a, int b) { return sol.u[g.index(i + a, j + b)]; };
      const double uxx = (u(1, 0) - 2 * u(0, 0) + u(-1, 0)) / h2;
      const double uyy = (u(0, 1) - 2 * u(0, 0) + u(0, -1)) / h2;
      const double uxy = (u(1, 1) - u(1, -1) - u(-1, 1) + u(-1, -1)) / (4 * h2);
      m = std::max({m, std::abs(uxx), std::abs(uyy), std::abs(uxy)});
    }
  }
  return m;
}

Check check_w2inf_stability(const std::vector<const Solution*>& sols, const Domain& domain, double max_ratio) {
  Check c;
  c.name = "w2inf_stability";
  c.anchor = "second derivatives of the minimizer stay bounded away from the boundary";
  c.threshold = max_ratio;
  if (sols.size() < 2) {
    c.status = CheckStatus::skipped;
    c.reason = "needs at least two refinements";
    return c;
  }
  const double dist = 0.1 * domain.diameter();
  std::vector<double> m;
  for (const auto* s : sols) m.push_back(interior_second_difference(*s, domain, dist));
  double worst = 0.0;
  for (std::size_t i = 1; i < m.size(); ++i) worst = std::max(worst, m[i] / m[i - 1]);
  c.measured = worst;
  c.status = worst <= max_ratio ? CheckStatus::pass : CheckStatus::fail;
  for (std::size_t i = 0; i < m.size(); ++i)
    c.reason += (i ? ", " : "max second differences: ") + format_double(m[i]);
  return c;
}

Check check_variational_inequality(const Solution& sol, int n_samples, double tol, unsigned seed) {
  const Eigen::VectorXd g = sol.energy_model->gradient(sol.u_free);
  const Eigen::Index n = sol.u_free.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    // Alternate global samples of the box with single-entry ones.
    double ip = 0.0;
    if (s % 2 == 1) {
      const Eigen::Index i = std::uniform_int_distribution<Eigen::Index>(0, n - 1)(rng);
      const double v = sol.lower[i] + unif(rng) * (sol.upper[i] - sol.lower[i]);
      ip = g[i] * (v - sol.u_free[i]);
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double v = sol.lower[i] + unif(rng) * (sol.upper[i] - sol.lower[i]);
        ip += g[i] * (v - sol.u_free[i]);
      }
    }
    worst = std::min(worst, ip);
  }
  return make("variational_inequality", "the minimizer satisfies the variational inequality over the obstacle set",
              worst, -tol, worst >= -tol);
}

Check check_euler_lagrange_signs(const Solution& sol, double tol) {
  const Eigen::VectorXd g = sol.energy_model->gradient(sol.u_free);
  const Discretization& d = sol.disc();
  const double h2 = sol.grid.h * sol.grid.h;
  double worst = 0.0;
  Check c;
  for (std::size_t p = 0; p < d.size(); ++p) {
    const Region r = sol.regions[d.cell[p]];
    const double res = g[p] / h2;
    double v = 0.0;
    if (r == Region::plastic_plus) v = res;
    else if (r == Region::plastic_minus) v = -res;
    if (v > tol && c.locations.size() < 64) c.locations.push_back(ij(sol.grid, d.cell[p]));
    worst = std::max(worst, v);
  }
  Check out = make("euler_lagrange_signs", "the Euler-Lagrange residual has the sign forced by each obstacle", worst,
                   tol, worst <= tol);
  out.locations = std::move(c.locations);
  return out;
}

VerificationReport verify_solution(const Problem& problem, const Solution& sol) {
  VerificationReport r;
  r.checks.push_back(check_gradient_constraint(sol, problem.body));
  r.checks.push_back(check_ep_characterization(sol, problem.body));
  r.checks.push_back(check_ridge_noncontact(sol, *sol.field, !problem.body.is_smooth()));
  r.checks.push_back(check_segment_plasticity(sol, *sol.field));
  r.checks.push_back(check_variational_inequality(sol));
  r.checks.push_back(check_euler_lagrange_signs(sol));
  return r;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "?";
}

}  // namespace vgc
