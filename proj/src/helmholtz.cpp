#include "ymgap/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>

#include "ymgap/util.hpp"

namespace ymgap::helmholtz {
namespace {

constexpr const char* kMod = "helmholtz";

void check_cfg(const SolverConfig& cfg) {
  require(cfg.tol > 0.0 && cfg.tol < 1.0, kMod, "tol must lie in (0, 1)");
  require(cfg.max_iter >= 0, kMod, "max_iter must be nonnegative");
  require(cfg.deflate_tol >= 0.0, kMod, "deflate_tol must be nonnegative");
}

using Op = std::function<ScalarField(const ScalarField&)>;

struct CgResult {
  int iterations = 0;
  double residual = 0.0;  // relative to the (projected) right-hand side
  bool converged = false;
};

void project_out(const lie::LieAlgebraSpec& g, const Grid& grid,
                 const std::vector<ScalarField>& basis, ScalarField& v) {
  for (const ScalarField& k : basis) v = lattice::axpy(-lattice::inner(g, grid, k, v), k, v);
}

// Plain CG for a symmetric positive (semi)definite operator, restricted to
// the complement of an orthonormal deflation basis.
ScalarField cg(const lie::LieAlgebraSpec& g, const Grid& grid, const Op& A,
               const ScalarField& b, double tol, int max_iter,
               const std::vector<ScalarField>& deflate, CgResult* out) {
  ScalarField rhs = b;
  project_out(g, grid, deflate, rhs);
  ScalarField x = ScalarField::zero(grid, b.dim_g);
  const double bn = lattice::norm(g, grid, rhs);
  CgResult res;
  if (bn == 0.0) {
    res.converged = true;
    if (out != nullptr) *out = res;
    return x;
  }
  ScalarField r = rhs;
  ScalarField p = r;
  double rs = lattice::inner(g, grid, r, r);
  for (int it = 0; it < max_iter; ++it) {
    const ScalarField ap = A(p);
    const double pap = lattice::inner(g, grid, p, ap);
    if (pap <= 0.0) break;  // numerical breakdown; report the residual we have
    const double alpha = rs / pap;
    x = lattice::axpy(alpha, p, x);
    r = lattice::axpy(-alpha, ap, r);
    project_out(g, grid, deflate, r);
    const double rs_new = lattice::inner(g, grid, r, r);
    res.iterations = it + 1;
    res.residual = std::sqrt(std::max(0.0, rs_new)) / bn;
    if (res.residual <= tol) {
      res.converged = true;
      break;
    }
    p = lattice::axpy(rs_new / rs, p, r);
    rs = rs_new;
  }
  project_out(g, grid, deflate, x);
  if (out != nullptr) *out = res;
  return x;
}

// Modified Gram-Schmidt with a second pass; near-dependent columns are
// replaced by fresh random fields so the block keeps full rank.
void orthonormalize(const lie::LieAlgebraSpec& g, const Grid& grid,
                    std::vector<ScalarField>& q, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (size_t i = 0; i < q.size(); ++i) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      for (int pass = 0; pass < 2; ++pass)
        for (size_t j = 0; j < i; ++j)
          q[i] = lattice::axpy(-lattice::inner(g, grid, q[j], q[i]), q[j], q[i]);
      const double nrm = lattice::norm(g, grid, q[i]);
      if (nrm > 1e-10) {
        for (double& x : q[i].v) x /= nrm;
        break;
      }
      require(attempt + 1 < 8, kMod, "orthonormalization failed to produce a full block");
      for (double& x : q[i].v) x = u(rng);
    }
  }
}

ScalarField scaled(const ScalarField& f, double s) {
  ScalarField out = f;
  for (double& x : out.v) x *= s;
  return out;
}

}  // namespace

GaugeField gauge_grad(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                      const ScalarField& u, double coupling) {
  require(a.n == grid.n && a.dim_g == g.dim_g && u.n == grid.n && u.dim_g == g.dim_g,
          kMod, "gauge_grad: shape mismatch");
  GaugeField out = GaugeField::zero(grid, g.dim_g);
  const int d = g.dim_g;
  const double w = 1.0 / (2.0 * grid.h);
  Eigen::VectorXd ak(d), uv(d);
  for (int s = 0; s < grid.sites(); ++s) {
    for (int k = 0; k < 3; ++k) {
      const int sp = grid.shift(s, k, +1), sm = grid.shift(s, k, -1);
      for (int i = 0; i < d; ++i) out.at(s, k, i) = w * (u.at(sp, i) - u.at(sm, i));
      if (coupling != 0.0) {
        for (int i = 0; i < d; ++i) {
          ak(i) = a.at(s, k, i);
          uv(i) = u.at(s, i);
        }
        const Eigen::VectorXd br = lie::bracket(g, ak, uv);
        for (int i = 0; i < d; ++i) out.at(s, k, i) -= coupling * br(i);
      }
    }
  }
  return out;
}

ScalarField gauge_div(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                      const GaugeField& v, double coupling) {
  return lattice::covariant_div(g, grid, a, v, coupling);
}

ScalarField gauge_laplacian(const lie::LieAlgebraSpec& g, const Grid& grid,
                            const GaugeField& a, const ScalarField& u, double coupling) {
  return gauge_div(g, grid, a, gauge_grad(g, grid, a, u, coupling), coupling);
}

LaplacianSolver::LaplacianSolver(const lie::LieAlgebraSpec& g, const Grid& grid,
                                 const GaugeField& a, SolverConfig cfg, double coupling)
    : g_(g), grid_(grid), a_(a), cfg_(cfg), coupling_(coupling) {
  check_cfg(cfg_);
  require(a_.n == grid_.n && a_.dim_g == g_.dim_g, kMod,
          "solver: connection shape mismatch");
  require(a_.finite(), kMod, "solver: connection is not finite");
  detect_kernel();
}

ScalarField LaplacianSolver::apply(const ScalarField& u) const {
  return gauge_laplacian(g_, grid_, a_, u, coupling_);
}

void LaplacianSolver::detect_kernel() {
  const int dim = grid_.sites() * g_.dim_g;
  const int block =
      std::min(dim, (grid_.n % 2 == 0 ? 8 : 1) * g_.dim_g + 2);
  const Op pos = [this](const ScalarField& u) { return scaled(apply(u), -1.0); };

  Rng rng(0x9e3779b9u + static_cast<unsigned>(dim));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto random_field = [&] {
    ScalarField f = ScalarField::zero(grid_, g_.dim_g);
    for (double& x : f.v) x = uni(rng);
    return f;
  };

  // Largest eigenvalue of -Delta_a by power iteration; sets the shift scale.
  ScalarField q = random_field();
  double qn = lattice::norm(g_, grid_, q);
  for (double& x : q.v) x /= qn;
  double lam = 0.0;
  for (int it = 0; it < 12; ++it) {
    ScalarField aq = pos(q);
    lam = lattice::inner(g_, grid_, q, aq);
    const double an = lattice::norm(g_, grid_, aq);
    if (an == 0.0) break;
    for (double& x : aq.v) x /= an;
    q = std::move(aq);
  }
  lambda_max_ = 1.05 * lam;
  require(lambda_max_ > 0.0, kMod, "solver: operator norm estimate vanished");

  const double sigma = 0.05 * lambda_max_;
  const Op shifted = [&](const ScalarField& u) {
    return lattice::axpy(sigma, u, pos(u));
  };

  std::vector<ScalarField> block_q(block);
  for (auto& f : block_q) f = random_field();
  orthonormalize(g_, grid_, block_q, rng);

  // Subspace iteration until every Rayleigh quotient has either settled
  // (a genuine nonzero eigenvalue) or dropped below the kernel threshold.
  std::vector<double> theta(block, 0.0), theta_prev(block, -1.0);
  for (int round = 0; round < 25; ++round) {
    for (auto& col : block_q)
      col = cg(g_, grid_, shifted, col, 1e-9, 600, {}, nullptr);
    orthonormalize(g_, grid_, block_q, rng);
    std::vector<std::pair<double, int>> order(block);
    for (int i = 0; i < block; ++i)
      order[i] = {lattice::inner(g_, grid_, block_q[i], pos(block_q[i])), i};
    std::sort(order.begin(), order.end());
    std::vector<ScalarField> sorted(block);
    for (int i = 0; i < block; ++i) sorted[i] = std::move(block_q[order[i].second]);
    block_q = std::move(sorted);
    for (int i = 0; i < block; ++i) theta[i] = order[i].first;

    bool done = round >= 3;
    for (int i = 0; i < block && done; ++i)
      if (theta[i] >= cfg_.deflate_tol &&
          std::abs(theta[i] - theta_prev[i]) > 0.25 * std::abs(theta[i]))
        done = false;
    theta_prev = theta;
    if (done) break;
  }
  int count = 0;
  while (count < block && theta[count] < cfg_.deflate_tol) ++count;
  require(count < block, kMod,
          "solver: kernel fills the probe block; kernel dimension is larger than "
          "supported");
  if (count == 0) return;

  // Polish: single-vector inverse iteration with tight inner solves brings
  // the kernel basis to near machine precision, so the rank-deficiency check
  // in solve() is not limited by detection noise.
  kernel_.assign(block_q.begin(), block_q.begin() + count);
  for (auto& k : kernel_)
    for (int round = 0; round < 8; ++round) {
      k = cg(g_, grid_, shifted, k, 1e-12, 800, {}, nullptr);
      const double nrm = lattice::norm(g_, grid_, k);
      require(nrm > 0.0, kMod, "solver: kernel polish collapsed a vector");
      for (double& x : k.v) x /= nrm;
    }
  orthonormalize(g_, grid_, kernel_, rng);
  // Re-classify after polishing; drop anything that no longer looks flat.
  std::vector<ScalarField> kept;
  for (auto& k : kernel_)
    if (lattice::inner(g_, grid_, k, pos(k)) < cfg_.deflate_tol) kept.push_back(std::move(k));
  kernel_ = std::move(kept);
}

ScalarField LaplacianSolver::solve(const ScalarField& f, SolveReport* report) const {
  require(f.n == grid_.n && f.dim_g == g_.dim_g, kMod, "solve: shape mismatch");
  const double fn = lattice::norm(g_, grid_, f);
  double kc = 0.0;
  for (const ScalarField& k : kernel_) {
    const double c = lattice::inner(g_, grid_, k, f);
    kc += c * c;
  }
  kc = std::sqrt(kc);
  const double rel_kc = fn > 0.0 ? kc / fn : 0.0;
  if (report != nullptr) {
    report->kernel_dim = static_cast<int>(kernel_.size());
    report->kernel_component = rel_kc;
  }
  require(rel_kc <= cfg_.tol, kMod,
          "solve: right-hand side has kernel component " + format_double(rel_kc) +
              " (rank-deficient system)");

  const int dim = grid_.sites() * g_.dim_g;
  const int max_iter = cfg_.max_iter > 0 ? cfg_.max_iter : 10 * dim;
  const Op pos = [this](const ScalarField& u) { return scaled(apply(u), -1.0); };
  CgResult res;
  ScalarField x = cg(g_, grid_, pos, scaled(f, -1.0), cfg_.tol, max_iter, kernel_, &res);
  if (report != nullptr) {
    report->iterations = res.iterations;
    report->residual = res.residual;
  }
  require(res.converged || lattice::norm(g_, grid_, f) == 0.0, kMod,
          "solve: no convergence after " + std::to_string(res.iterations) +
              " iterations, relative residual " + format_double(res.residual));
  return x;
}

ScalarField solve_laplacian(const lie::LieAlgebraSpec& g, const Grid& grid,
                            const GaugeField& a, const ScalarField& f, SolverConfig cfg,
                            double coupling, SolveReport* report) {
  return LaplacianSolver(g, grid, a, cfg, coupling).solve(f, report);
}

GaugeField helmholtz_project(const LaplacianSolver& solver, const GaugeField& v) {
  const ScalarField d = gauge_div(solver.algebra(), solver.grid(), solver.connection(), v,
                                  solver.coupling());
  const ScalarField u = solver.solve(d);
  return gauge_grad(solver.algebra(), solver.grid(), solver.connection(), u,
                    solver.coupling());
}

GaugeField helmholtz_project(const lie::LieAlgebraSpec& g, const Grid& grid,
                             const GaugeField& a, const GaugeField& v, SolverConfig cfg,
                             double coupling) {
  return helmholtz_project(LaplacianSolver(g, grid, a, cfg, coupling), v);
}

CauchyData transversal(const LaplacianSolver& solver, const CauchyData& data) {
  const GaugeField pe = helmholtz_project(solver, data.e);
  return {data.a, lattice::axpy(-1.0, pe, data.e)};
}

CauchyData transversal(const lie::LieAlgebraSpec& g, const Grid& grid,
                       const CauchyData& data, SolverConfig cfg, double coupling) {
  return transversal(LaplacianSolver(g, grid, data.a, cfg, coupling), data);
}

GaugeField minimize_orbit(const lie::LieAlgebraSpec& g, const Grid& grid,
                          const GaugeField& a, SolverConfig cfg, OrbitReport* report) {
  check_cfg(cfg);
  require(a.finite(), kMod, "minimize_orbit: non-finite input");
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 200;
  // An Armijo search on |a|^2 cannot certify decreases below the rounding
  // noise of the functional, which puts a floor near 1.5e-7 (relative) on
  // the reachable gradient norm; tighter requests are clamped to it.
  const double tol = std::max(cfg.tol, 1.5e-7);
  GaugeField cur = a;
  double f_cur = lattice::inner(g, grid, cur, cur);
  const double scale = std::max(1.0, std::sqrt(f_cur));
  OrbitReport rep;
  rep.norms.push_back(std::sqrt(f_cur));

  const GaugeField zero_e = GaugeField::zero(grid, g.dim_g);
  double step = 1.0;
  double dn = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const ScalarField d = gauge_div(g, grid, cur, cur, 0.0);  // ordinary divergence
    dn = lattice::norm(g, grid, d);
    if (dn <= tol * scale) {
      rep.converged = true;
      break;
    }
    // Direction xi = -div(a); the derivative of |a|^2 along xi is -2 dn^2.
    bool accepted = false;
    for (int bt = 0; bt < 40 && !accepted; ++bt) {
      const ScalarField xi = scaled(d, -step);
      const lattice::GroupField gf = lattice::exp_field(g, grid, xi);
      const GaugeField cand = lattice::gauge_transform(g, grid, {cur, zero_e}, gf).a;
      const double f_new = lattice::inner(g, grid, cand, cand);
      if (f_new <= f_cur - 1e-4 * step * 2.0 * dn * dn) {
        cur = cand;
        f_cur = f_new;
        rep.norms.push_back(std::sqrt(std::max(0.0, f_new)));
        rep.iterations = it + 1;
        step = std::min(step * 2.0, 1e3);
        accepted = true;
      } else {
        step *= 0.5;
      }
    }
    if (!accepted) break;  // stagnated below the line-search resolution
  }
  if (!rep.converged) {
    const ScalarField d = gauge_div(g, grid, cur, cur, 0.0);
    dn = lattice::norm(g, grid, d);
    rep.converged = dn <= tol * scale;
  }
  rep.div_norm = dn;
  if (report != nullptr) *report = rep;
  return cur;
}

}  // namespace ymgap::helmholtz
