#include "vgc/solver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <limits>

namespace vgc {

namespace {

constexpr int kDi[4] = {1, -1, 0, 0};
constexpr int kDj[4] = {0, 0, 1, -1};
constexpr double kMinTheta = 1e-3;

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

FunctionalSpec FunctionalSpec::make(FKind f, const Mat2& A, GKind g, double c, double tau) {
  FunctionalSpec s;
  s.f_kind = f;
  s.A = f == FKind::half_square ? Mat2::Identity() : A;
  s.g_kind = g;
  s.c = g == GKind::linear ? 0.0 : c;
  s.tau = tau;
  s.validate();
  return s;
}

double FunctionalSpec::c8() const {
  const double m = 0.5 * (A(0, 0) + A(1, 1)), r = std::hypot(0.5 * (A(0, 0) - A(1, 1)), A(0, 1));
  return m - r;
}

double FunctionalSpec::c9() const {
  const double m = 0.5 * (A(0, 0) + A(1, 1)), r = std::hypot(0.5 * (A(0, 0) - A(1, 1)), A(0, 1));
  return m + r;
}

void FunctionalSpec::validate() const {
  if (std::abs(A(0, 1) - A(1, 0)) > 1e-14 * A.norm()) throw InvalidProblem("F: matrix must be symmetric");
  if (!(c8() > 0.0)) throw InvalidProblem("F: matrix must be positive definite");
  if (c < 0.0) throw InvalidProblem("g: coefficient c must be nonnegative");
  if (!std::isfinite(tau)) throw InvalidProblem("g: tau must be finite");
}

std::vector<std::string> FunctionalSpec::audit_warnings() const {
  std::vector<std::string> w;
  if (g_kind == GKind::linear && tau != 0.0)
    w.push_back("linear g does not satisfy the quadratic upper growth bound near zero; accepted");
  return w;
}

Discretization Discretization::from_domain(const Domain& domain, const Grid& grid) {
  Discretization d;
  d.grid = grid;
  d.unknown.assign(grid.size(), -1);
  std::vector<char> inside(grid.size(), 0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t k = grid.index(i, j);
      if (domain.contains(grid.center(i, j), 0.0) == Location::inside) {
        inside[k] = 1;
        d.unknown[k] = static_cast<int>(d.cell.size());
        d.cell.push_back(k);
      }
    }
  }
  d.nb.resize(d.size());
  d.theta.resize(d.size());
  d.value.resize(d.size());
  for (std::size_t p = 0; p < d.size(); ++p) {
    const int i = static_cast<int>(d.cell[p] % grid.nx), j = static_cast<int>(d.cell[p] / grid.nx);
    const Vec2 xp = grid.center(i, j);
    for (int s = 0; s < 4; ++s) {
      const int i2 = i + kDi[s], j2 = j + kDj[s];
      d.value[p][s] = 0.0;
      if (grid.valid(i2, j2) && inside[grid.index(i2, j2)]) {
        d.nb[p][s] = d.unknown[grid.index(i2, j2)];
        d.theta[p][s] = 1.0;
        continue;
      }
      d.nb[p][s] = -1;
      const Vec2 step(kDi[s] * grid.h, kDj[s] * grid.h);
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (domain.contains(xp + mid * step, 0.0) == Location::inside) lo = mid;
        else hi = mid;
      }
      d.theta[p][s] = std::max(0.5 * (lo + hi), kMinTheta);
    }
  }
  return d;
}

Discretization Discretization::from_mask(const Grid& grid, const std::vector<char>& mask,
                                         const std::vector<double>& pinned, const std::vector<double>& level) {
  Discretization d;
  d.grid = grid;
  d.unknown.assign(grid.size(), -1);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (mask[k]) {
      d.unknown[k] = static_cast<int>(d.cell.size());
      d.cell.push_back(k);
    }
  }
  d.nb.resize(d.size());
  d.theta.resize(d.size());
  d.value.resize(d.size());
  for (std::size_t p = 0; p < d.size(); ++p) {
    const int i = static_cast<int>(d.cell[p] % grid.nx), j = static_cast<int>(d.cell[p] / grid.nx);
    for (int s = 0; s < 4; ++s) {
      const int i2 = i + kDi[s], j2 = j + kDj[s];
      d.theta[p][s] = 1.0;
      d.nb[p][s] = -1;
      d.value[p][s] = 0.0;
      if (!grid.valid(i2, j2)) continue;
      const std::size_t q = grid.index(i2, j2);
      if (mask[q]) {
        d.nb[p][s] = d.unknown[q];
        continue;
      }
      d.value[p][s] = pinned[q];
      const std::size_t k = d.cell[p];
      if (!level.empty() && level[k] > 0.0 && level[q] <= 0.0) {
        const double t = std::max(level[k] / (level[k] - level[q]), kMinTheta);
        d.theta[p][s] = t;
        d.value[p][s] = pinned[k] + t * (pinned[q] - pinned[k]);
      }
    }
  }
  return d;
}

Vec2 Discretization::gradient(const Eigen::VectorXd& u, std::size_t p) const {
  double v[4];
  for (int s = 0; s < 4; ++s) v[s] = nb[p][s] >= 0 ? u[nb[p][s]] : value[p][s];
  const double up = u[p];
  auto centred = [&](int plus, int minus) {
    const double tp = theta[p][plus], tm = theta[p][minus];
    return (tm * tm * (v[plus] - up) + tp * tp * (up - v[minus])) / (tp * tm * (tp + tm) * grid.h);
  };
  return {centred(0, 1), centred(2, 3)};
}

DiscreteEnergy::DiscreteEnergy(std::shared_ptr<const Discretization> disc, const FunctionalSpec& fs)
    : disc_(std::move(disc)), fs_(fs) {
  const Discretization& d = *disc_;
  const std::size_t n = d.size();
  const double h = d.grid.h, w = 0.25 * h * h;
  k_ = Vec::Zero(static_cast<Eigen::Index>(n));
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n * 40);

  // One-sided difference toward direction s as (own coefficient, neighbour
  // coefficient, constant), scaled by the root of the quadrature weight.
  struct Diff {
    double cp, cn, c0;
    int nb;
  };
  auto diff = [&](std::size_t p, int s) {
    const double th = d.theta[p][s];
    const double beta = d.nb[p][s] >= 0 ? 1.0 : 2.0 * th;
    const double sign = (s == 0 || s == 2) ? 1.0 : -1.0;  // forward for east/north
    const double f = std::sqrt(beta) / (th * h) * sign;
    Diff r{-f, f, 0.0, d.nb[p][s]};
    if (r.nb < 0) {
      r.c0 = f * d.value[p][s];
      r.cn = 0.0;
    }
    return r;
  };

  const Mat2& A = fs.A;
  for (std::size_t p = 0; p < n; ++p) {
    const int ip = static_cast<int>(p);
    for (int sx : {0, 1}) {
      const Diff a = diff(p, sx);
      for (int sy : {2, 3}) {
        const Diff b = diff(p, sy);
        // Terms of the pair (a, b) as lists of (index, coefficient).
        std::pair<int, double> la[2] = {{ip, a.cp}, {a.nb, a.cn}};
        std::pair<int, double> lb[2] = {{ip, b.cp}, {b.nb, b.cn}};
        const double coef[2][2] = {{A(0, 0), A(0, 1)}, {A(1, 0), A(1, 1)}};
        const std::pair<int, double>* lists[2] = {la, lb};
        const double consts[2] = {a.c0, b.c0};
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            const double m = w * coef[r][c];
            if (m == 0.0) continue;
            for (int x = 0; x < 2; ++x) {
              const auto [ix, cx] = lists[r][x];
              if (ix < 0 || cx == 0.0) continue;
              for (int y = 0; y < 2; ++y) {
                const auto [iy, cy] = lists[c][y];
                if (iy < 0 || cy == 0.0) continue;
                trip.emplace_back(ix, iy, m * cx * cy);
              }
              k_[ix] += m * cx * consts[c];
            }
            c0_ += 0.5 * m * consts[r] * consts[c];
          }
        }
      }
    }
    trip.emplace_back(ip, ip, fs.c * h * h);
  }
  H_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  H_.setFromTriplets(trip.begin(), trip.end());
  H_.makeCompressed();
}

double DiscreteEnergy::value(const Eigen::VectorXd& u) const {
  const double h = disc_->grid.h;
  return 0.5 * u.dot(H_ * u) + k_.dot(u) + c0_ - fs_.tau * h * h * u.sum();
}

Eigen::VectorXd DiscreteEnergy::gradient(const Eigen::VectorXd& u) const {
  const double h = disc_->grid.h;
  return H_ * u + k_ - Vec::Constant(u.size(), fs_.tau * h * h);
}

namespace {

std::vector<double> scatter(const Discretization& d, const Vec& u, double fill = 0.0) {
  std::vector<double> out(d.grid.size(), fill);
  for (std::size_t p = 0; p < d.size(); ++p) out[d.cell[p]] = u[p];
  return out;
}

double natural_residual(const Vec& u, const Vec& g, const Vec& lo, const Vec& hi, double h2) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) r = std::max(r, std::abs(u[i] - clampd(u[i] - g[i] / h2, lo[i], hi[i])));
  return r;
}

// Box-constrained minimization of the quadratic model.
void projected_newton(const DiscreteEnergy& E, const Vec& lo, const Vec& hi, const SolverConfig& cfg, Solution& s) {
  const Discretization& d = E.disc();
  const double h = d.grid.h, h2 = h * h;
  const SpMat& H = E.hessian();
  const Eigen::Index n = static_cast<Eigen::Index>(d.size());
  Vec u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = clampd(0.0, lo[i], hi[i]);
  Vec diag = H.diagonal();
  double f = E.value(u);
  s.energy_history = {f};
  s.status = SolveStatus::max_iters;
  const double sigma = 1e-4;
  double step_pg = 1.0 / (8.0 * E.functional().c9() + E.functional().c * h2);
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const Vec g = E.gradient(u);
    s.kkt_residual = natural_residual(u, g, lo, hi, h2);
    if (s.kkt_residual <= cfg.tol) {
      s.status = SolveStatus::converged;
      break;
    }
    Vec dir(n);
    std::vector<char> active(n, 0);
    if (cfg.method == SolverConfig::Method::projected_newton) {
      double wnorm = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) wnorm = std::max(wnorm, std::abs(u[i] - clampd(u[i] - g[i] / diag[i], lo[i], hi[i])));
      const double eps = std::min(1e-3 * h, wnorm);
      std::vector<int> freeidx(n, -1);
      int nf = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        active[i] = (u[i] <= lo[i] + eps && g[i] > 0.0) || (u[i] >= hi[i] - eps && g[i] < 0.0);
        if (!active[i]) freeidx[i] = nf++;
      }
      if (nf > 0) {
        std::vector<Eigen::Triplet<double>> trip;
        for (int c = 0; c < H.outerSize(); ++c) {
          if (freeidx[c] < 0) continue;
          for (SpMat::InnerIterator itr(H, c); itr; ++itr) {
            if (freeidx[itr.row()] >= 0) trip.emplace_back(freeidx[itr.row()], freeidx[c], itr.value());
          }
        }
        SpMat Hf(nf, nf);
        Hf.setFromTriplets(trip.begin(), trip.end());
        Vec gf(nf);
        for (Eigen::Index i = 0; i < n; ++i)
          if (freeidx[i] >= 0) gf[freeidx[i]] = g[i];
        Eigen::SimplicialLDLT<SpMat> ldlt(Hf);
        if (ldlt.info() != Eigen::Success) throw Error("projected Newton: factorization failed");
        const Vec df = ldlt.solve(gf);
        for (Eigen::Index i = 0; i < n; ++i) dir[i] = freeidx[i] >= 0 ? df[freeidx[i]] : g[i] / diag[i];
      } else {
        for (Eigen::Index i = 0; i < n; ++i) dir[i] = g[i] / diag[i];
      }
    } else {
      dir = g * step_pg;
    }
    double alpha = 1.0;
    bool accepted = false;
    Vec un(n);
    for (int ls = 0; ls < 60; ++ls) {
      for (Eigen::Index i = 0; i < n; ++i) un[i] = clampd(u[i] - alpha * dir[i], lo[i], hi[i]);
      double pred = 0.0;
      for (Eigen::Index i = 0; i < n; ++i)
        pred += active[i] || cfg.method == SolverConfig::Method::projected_gradient ? g[i] * (u[i] - un[i])
                                                                                   : alpha * g[i] * dir[i];
      const double fn = E.value(un);
      if (f - fn >= sigma * pred && fn <= f) {
        accepted = true;
        u = un;
        f = fn;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      s.status = SolveStatus::stalled;
      break;
    }
    s.energy_history.push_back(f);
  }
  s.iterations = it;
  s.u_free = u;
  s.energy = f;
}

void finish(Solution& s, const Problem& problem) {
  const Discretization& d = s.disc();
  s.u = scatter(d, s.u_free);
  s.lipschitz = 1.0 / problem.body.min_support();
}

}  // namespace

Obstacles build_obstacles(const Problem& problem, const DistanceField& field, double eps) {
  const Grid& g = field.grid;
  Obstacles o;
  o.phi.assign(g.size(), 0.0);
  o.psi.assign(g.size(), 0.0);
  o.feasible.assign(g.size(), 0);
  if (eps <= 0.0) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      o.phi[k] = -field.dbar[k];
      o.psi[k] = field.d[k];
      o.feasible[k] = field.inside[k];
    }
    return o;
  }
  const double c1 = problem.body.gauge_bounds().c_upper;
  o.delta = 4.5 * c1 * eps;
  const int R = static_cast<int>(std::floor(eps / g.h));
  std::vector<std::pair<std::pair<int, int>, double>> stencil;
  for (int dj = -R; dj <= R; ++dj) {
    for (int di = -R; di <= R; ++di) {
      const double r = std::hypot(di, dj) * g.h / eps;
      if (r < 1.0) stencil.push_back({{di, dj}, std::exp(-1.0 / (1.0 - r * r))});
    }
  }
  double wsum = 0.0;
  for (const auto& s : stencil) wsum += s.second;
  bool any = false;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      double md = 0.0, mdb = 0.0;
      for (const auto& [off, wt] : stencil) {
        const int i2 = i + off.first, j2 = j + off.second;
        if (!g.valid(i2, j2)) continue;
        const std::size_t q = g.index(i2, j2);
        if (!field.inside[q]) continue;
        md += wt * field.d[q];
        mdb += wt * field.dbar[q];
      }
      o.psi[k] = md / wsum;
      o.phi[k] = -mdb / wsum + o.delta;
      o.feasible[k] = field.inside[k] && o.phi[k] < o.psi[k];
      any = any || o.feasible[k];
    }
  }
  if (!any) throw InfeasibleEps("mollified obstacles cross everywhere; eps is too large");
  return o;
}

Solution solve_double_obstacle(const Problem& problem, const SolverConfig& cfg) {
  auto field = std::make_shared<const DistanceField>(sample_field(problem.domain, problem.body, problem.grid));
  return solve_double_obstacle(problem, field, cfg);
}

Solution solve_double_obstacle(const Problem& problem, std::shared_ptr<const DistanceField> field,
                               const SolverConfig& cfg) {
  if (problem.grid.nx < 16 || problem.grid.ny < 16) throw InvalidProblem("grid needs at least 16 cells per axis");
  problem.functional.validate();
  auto disc = std::make_shared<const Discretization>(Discretization::from_domain(problem.domain, problem.grid));
  auto model = std::make_shared<const DiscreteEnergy>(disc, problem.functional);
  const Eigen::Index n = static_cast<Eigen::Index>(disc->size());
  if (n == 0) throw InvalidProblem("no grid cell centre lies inside the domain");
  Vec lo(n), hi(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    lo[p] = -field->dbar[disc->cell[p]];
    hi[p] = field->d[disc->cell[p]];
  }
  Solution s;
  s.grid = problem.grid;
  s.energy_model = model;
  s.field = field;
  projected_newton(*model, lo, hi, cfg, s);
  s.lower.assign(lo.data(), lo.data() + n);
  s.upper.assign(hi.data(), hi.data() + n);
  finish(s, problem);
  const double tol = cfg.contact_tol >= 0.0 ? cfg.contact_tol : 1e-9 * problem.domain.diameter();
  classify_regions(s, problem.body, tol);
  return s;
}

double penalty_beta(double t, double delta) {
  if (t <= 0.0) return 0.0;
  if (t <= delta) return t * t / (delta * delta);
  return (2.0 * t - delta) / delta;
}

double penalty_beta_prime(double t, double delta) {
  if (t <= 0.0) return 0.0;
  if (t <= delta) return 2.0 * t / (delta * delta);
  return 2.0 / delta;
}

double penalty_beta_primitive(double t, double delta) {
  if (t <= 0.0) return 0.0;
  if (t <= delta) return t * t * t / (3.0 * delta * delta);
  return delta / 3.0 + t * t / delta - t;
}

Solution solve_penalized(const Problem& problem, double eps, double delta, const SolverConfig& cfg) {
  auto field = std::make_shared<const DistanceField>(sample_field(problem.domain, problem.body, problem.grid));
  return solve_penalized(problem, field, eps, delta, cfg);
}

Solution solve_penalized(const Problem& problem, std::shared_ptr<const DistanceField> field, double eps,
                         double delta, const SolverConfig& cfg) {
  if (!(eps > 0.0)) throw InvalidProblem("penalized solve needs eps > 0");
  if (!(delta > 0.0)) throw InvalidProblem("penalized solve needs delta > 0");
  problem.functional.validate();
  const Obstacles ob = build_obstacles(problem, *field, eps);
  std::vector<double> gap(problem.grid.size());
  for (std::size_t k = 0; k < gap.size(); ++k) gap[k] = ob.psi[k] - ob.phi[k];
  auto disc = std::make_shared<const Discretization>(Discretization::from_mask(problem.grid, ob.feasible, ob.phi, gap));
  auto model = std::make_shared<const DiscreteEnergy>(disc, problem.functional);
  const Eigen::Index n = static_cast<Eigen::Index>(disc->size());
  const double h2 = problem.grid.h * problem.grid.h;
  Vec phi(n), psi(n), u(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    phi[p] = ob.phi[disc->cell[p]];
    psi[p] = ob.psi[disc->cell[p]];
    u[p] = clampd(0.0, phi[p], psi[p]);
  }
  auto total = [&](const Vec& v) {
    double e = model->value(v);
    for (Eigen::Index p = 0; p < n; ++p)
      e += h2 * (penalty_beta_primitive(phi[p] - v[p], delta) + penalty_beta_primitive(v[p] - psi[p], delta));
    return e;
  };
  auto total_gradient = [&](const Vec& v) {
    Vec g = model->gradient(v);
    for (Eigen::Index p = 0; p < n; ++p)
      g[p] += h2 * (penalty_beta(v[p] - psi[p], delta) - penalty_beta(phi[p] - v[p], delta));
    return g;
  };
  Solution s;
  s.grid = problem.grid;
  s.energy_model = model;
  s.field = field;
  s.status = SolveStatus::max_iters;
  double f = total(u);
  s.energy_history = {f};
  const SpMat& H = model->hessian();
  Eigen::SimplicialLDLT<SpMat> ldlt;
  ldlt.analyzePattern(H);
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const Vec g = total_gradient(u);
    s.kkt_residual = g.cwiseAbs().maxCoeff() / h2;
    if (s.kkt_residual <= cfg.tol) {
      s.status = SolveStatus::converged;
      break;
    }
    SpMat J = H;
    for (Eigen::Index p = 0; p < n; ++p)
      J.coeffRef(p, p) += h2 * (penalty_beta_prime(u[p] - psi[p], delta) + penalty_beta_prime(phi[p] - u[p], delta));
    ldlt.factorize(J);
    if (ldlt.info() != Eigen::Success) throw Error("penalized Newton: factorization failed");
    const Vec dir = ldlt.solve(g);
    // The objective is convex and C1: minimize along the Newton direction by
    // bisection on the directional derivative.
    auto slope_at = [&](double a) { return -total_gradient(u - a * dir).dot(dir); };
    const double s0 = slope_at(0.0);
    if (!(s0 < 0.0)) {
      s.status = SolveStatus::stalled;
      break;
    }
    double alpha = 1.0;
    if (slope_at(1.0) > 0.0) {
      double lo = 0.0, hi = 1.0;
      for (int ls = 0; ls < 50; ++ls) {
        alpha = 0.5 * (lo + hi);
        const double sa = slope_at(alpha);
        if (std::abs(sa) <= 1e-3 * std::abs(s0)) break;
        if (sa < 0.0) lo = alpha;
        else hi = alpha;
      }
    }
    const Vec un = u - alpha * dir;
    const double fn = total(un);
    if (fn > f + 1e-13 * std::max(1.0, std::abs(f))) {
      // Rounding floor of the energy.
      s.status = SolveStatus::stalled;
      break;
    }
    u = un;
    f = fn;
    s.energy_history.push_back(f);
  }
  s.iterations = it;
  s.u_free = u;
  s.energy = f;
  s.lower.assign(phi.data(), phi.data() + n);
  s.upper.assign(psi.data(), psi.data() + n);
  finish(s, problem);
  // Cells of U outside the feasible set carry the boundary value.
  for (std::size_t k = 0; k < problem.grid.size(); ++k)
    if (field->inside[k] && !ob.feasible[k]) s.u[k] = ob.phi[k];
  classify_regions(s, problem.body, 10.0 * delta);
  return s;
}

double energy(const Problem& problem, const std::vector<double>& u) {
  auto disc = std::make_shared<const Discretization>(Discretization::from_domain(problem.domain, problem.grid));
  const DiscreteEnergy model(disc, problem.functional);
  Vec v(static_cast<Eigen::Index>(disc->size()));
  for (std::size_t p = 0; p < disc->size(); ++p) v[p] = u[disc->cell[p]];
  return model.value(v);
}

void classify_regions(Solution& sol, const ConvexBody& body, double tol, double grad_tol) {
  const Discretization& d = sol.disc();
  const Grid& g = d.grid;
  if (grad_tol < 0.0) grad_tol = 2.0 * g.h * sol.lipschitz;
  sol.regions.assign(g.size(), Region::exterior);
  sol.gradient_plastic.assign(g.size(), 0);
  for (std::size_t p = 0; p < d.size(); ++p) {
    const std::size_t k = d.cell[p];
    const double u = sol.u_free[p];
    if (sol.upper[p] - u <= tol) sol.regions[k] = Region::plastic_plus;
    else if (u - sol.lower[p] <= tol) sol.regions[k] = Region::plastic_minus;
    else sol.regions[k] = Region::elastic;
    const Vec2 du = d.gradient(sol.u_free, p);
    sol.gradient_plastic[k] = (du.x() != 0.0 || du.y() != 0.0) && body.polar_gauge(du) >= 1.0 - grad_tol;
  }
  std::vector<std::size_t> fb;
  for (std::size_t p = 0; p < d.size(); ++p) {
    const std::size_t k = d.cell[p];
    if (sol.regions[k] != Region::elastic) continue;
    const int i = static_cast<int>(k % g.nx), j = static_cast<int>(k / g.nx);
    for (int s = 0; s < 4; ++s) {
      const int i2 = i + kDi[s], j2 = j + kDj[s];
      if (!g.valid(i2, j2)) continue;
      const Region r = sol.regions[g.index(i2, j2)];
      if (r == Region::plastic_plus || r == Region::plastic_minus) {
        fb.push_back(k);
        break;
      }
    }
  }
  for (std::size_t k : fb) sol.regions[k] = Region::free_boundary;
}

double free_boundary_radius(const Solution& sol, const Vec2& center) {
  double sum = 0.0;
  int n = 0;
  for (int j = 0; j < sol.grid.ny; ++j) {
    for (int i = 0; i < sol.grid.nx; ++i) {
      if (sol.regions[sol.grid.index(i, j)] != Region::free_boundary) continue;
      sum += (sol.grid.center(i, j) - center).norm();
      ++n;
    }
  }
  return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

double interpolate(const Solution& sol, const Vec2& x) {
  const Grid& g = sol.grid;
  const double fx = (x.x() - g.xmin) / g.h - 0.5, fy = (x.y() - g.ymin) / g.h - 0.5;
  const int i0 = static_cast<int>(std::floor(fx)), j0 = static_cast<int>(std::floor(fy));
  const double tx = fx - i0, ty = fy - j0;
  auto at = [&](int i, int j) { return g.valid(i, j) ? sol.u[g.index(i, j)] : 0.0; };
  return (1 - tx) * (1 - ty) * at(i0, j0) + tx * (1 - ty) * at(i0 + 1, j0) + (1 - tx) * ty * at(i0, j0 + 1) +
         tx * ty * at(i0 + 1, j0 + 1);
}

int count_region(const Solution& sol, Region r) {
  return static_cast<int>(std::count(sol.regions.begin(), sol.regions.end(), r));
}

double max_gauge_of_gradient(const Solution& sol, const ConvexBody& body) {
  const Discretization& d = sol.disc();
  double m = 0.0;
  for (std::size_t p = 0; p < d.size(); ++p) m = std::max(m, body.polar_gauge(d.gradient(sol.u_free, p)));
  return m;
}

PipelineResult smoothing_pipeline(const Problem& problem, int k_max, const SolverConfig& cfg) {
  if (k_max < 1 || k_max > 10) throw InvalidProblem("pipeline needs 1 <= k_max <= 10");
  if (problem.domain.has_reentrant_corner())
    throw InvalidProblem("smoothing pipeline needs a domain without reentrant corners");
  PipelineResult out;
  for (int k = 1; k <= k_max; ++k) {
    Problem pk{problem.domain, problem.body.smooth_approximation(k), problem.functional, problem.grid, 0.0};
    out.stages.push_back(solve_double_obstacle(pk, cfg));
    if (k > 1) {
      const auto& a = out.stages[k - 2].u;
      const auto& b = out.stages[k - 1].u;
      double m = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
      out.differences.push_back(m);
    }
  }
  out.final_audit = max_gauge_of_gradient(out.stages.back(), problem.body);
  return out;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iters:
      return "max_iters";
    case SolveStatus::stalled:
      return "stalled";
  }
  return "?";
}

}  // namespace vgc
