#include "ymgap/lattice.hpp"

#include <cmath>

#include "ymgap/util.hpp"

namespace ymgap::lattice {
namespace {

constexpr const char* kMod = "lattice";

// Ordered pair table behind the f[] storage: f[p] = F_{jk} for (j,k) =
// pair_jk[p], 0-based axes.
constexpr int pair_jk[3][2] = {{1, 2}, {2, 0}, {0, 1}};

// F_{jk} = sign * f[pair]; zero on the diagonal.
constexpr int pair_of[3][3] = {{-1, 2, 1}, {2, -1, 0}, {1, 0, -1}};
constexpr int sign_of[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};

// out += scale [x, y] for raw dim_g-vectors.
void bracket_acc(const lie::LieAlgebraSpec& g, const double* x, const double* y,
                 double scale, double* out) {
  const int d = g.dim_g;
  for (int i = 0; i < d; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = scale * xi * y[j];
      if (w == 0.0) continue;
      const double* ck = &g.c[(i * d + j) * d];
      for (int k = 0; k < d; ++k) out[k] += w * ck[k];
    }
  }
}

double metric_dot(const lie::LieAlgebraSpec& g, const double* x, const double* y) {
  const int d = g.dim_g;
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += x[i] * g.metric(i, j) * y[j];
  return s;
}

void check_shapes(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& f,
                  const char* who) {
  require(f.n == grid.n && f.dim_g == g.dim_g &&
              f.v.size() == static_cast<size_t>(grid.sites()) * 3 * g.dim_g,
          kMod, std::string(who) + ": field shape does not match grid/algebra");
}

}  // namespace

int Grid::shift(int s, int axis, int dir) const {
  int x = s / (n * n), y = (s / n) % n, z = s % n;
  int* c = axis == 0 ? &x : (axis == 1 ? &y : &z);
  *c += dir;
  if (*c < 0) *c += n;
  if (*c >= n) *c -= n;
  return site(x, y, z);
}

GaugeField GaugeField::zero(const Grid& grid, int dim_g) {
  GaugeField f;
  f.n = grid.n;
  f.dim_g = dim_g;
  f.v.assign(static_cast<size_t>(grid.sites()) * 3 * dim_g, 0.0);
  return f;
}

bool GaugeField::finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

ScalarField ScalarField::zero(const Grid& grid, int dim_g) {
  ScalarField f;
  f.n = grid.n;
  f.dim_g = dim_g;
  f.v.assign(static_cast<size_t>(grid.sites()) * dim_g, 0.0);
  return f;
}

double inner(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& u,
             const GaugeField& w) {
  check_shapes(g, grid, u, "inner");
  check_shapes(g, grid, w, "inner");
  double s = 0.0;
  const int d = g.dim_g;
  for (int site = 0; site < grid.sites(); ++site)
    for (int axis = 0; axis < 3; ++axis)
      s += metric_dot(g, &u.v[(site * 3 + axis) * d], &w.v[(site * 3 + axis) * d]);
  return s * grid.h * grid.h * grid.h;
}

double inner(const lie::LieAlgebraSpec& g, const Grid& grid, const ScalarField& u,
             const ScalarField& w) {
  double s = 0.0;
  const int d = g.dim_g;
  for (int site = 0; site < grid.sites(); ++site)
    s += metric_dot(g, &u.v[site * d], &w.v[site * d]);
  return s * grid.h * grid.h * grid.h;
}

double norm(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& u) {
  return std::sqrt(std::max(0.0, inner(g, grid, u, u)));
}

double norm(const lie::LieAlgebraSpec& g, const Grid& grid, const ScalarField& u) {
  return std::sqrt(std::max(0.0, inner(g, grid, u, u)));
}

ScalarField central_diff(const Grid& grid, const ScalarField& f, int axis) {
  ScalarField out;
  out.n = f.n;
  out.dim_g = f.dim_g;
  out.v.resize(f.v.size());
  const double w = 1.0 / (2.0 * grid.h);
  const int d = f.dim_g;
  for (int s = 0; s < grid.sites(); ++s) {
    const int sp = grid.shift(s, axis, +1), sm = grid.shift(s, axis, -1);
    for (int i = 0; i < d; ++i) out.v[s * d + i] = w * (f.v[sp * d + i] - f.v[sm * d + i]);
  }
  return out;
}

CurvatureField curvature(const lie::LieAlgebraSpec& g, const Grid& grid,
                         const GaugeField& a, double coupling) {
  check_shapes(g, grid, a, "curvature");
  CurvatureField out;
  out.n = grid.n;
  out.dim_g = g.dim_g;
  out.f = GaugeField::zero(grid, g.dim_g);
  const int d = g.dim_g;
  const double w = 1.0 / (2.0 * grid.h);
  for (int s = 0; s < grid.sites(); ++s) {
    for (int p = 0; p < 3; ++p) {
      const int j = pair_jk[p][0], k = pair_jk[p][1];
      double* dst = &out.f.v[(s * 3 + p) * d];
      const int sjp = grid.shift(s, j, +1), sjm = grid.shift(s, j, -1);
      const int skp = grid.shift(s, k, +1), skm = grid.shift(s, k, -1);
      for (int i = 0; i < d; ++i) {
        dst[i] = w * (a.at(sjp, k, i) - a.at(sjm, k, i)) -
                 w * (a.at(skp, j, i) - a.at(skm, j, i));
      }
      if (coupling != 0.0)
        bracket_acc(g, &a.v[(s * 3 + j) * d], &a.v[(s * 3 + k) * d], -coupling, dst);
    }
  }
  return out;
}

double energy(const lie::LieAlgebraSpec& g, const Grid& grid, const CauchyData& data,
              double coupling) {
  const CurvatureField fc = curvature(g, grid, data.a, coupling);
  check_shapes(g, grid, data.e, "energy");
  const int d = g.dim_g;
  double s = 0.0;
  for (int site = 0; site < grid.sites(); ++site)
    for (int slot = 0; slot < 3; ++slot) {
      const double* e = &data.e.v[(site * 3 + slot) * d];
      const double* b = &fc.f.v[(site * 3 + slot) * d];
      s += 0.5 * (metric_dot(g, e, e) + metric_dot(g, b, b));
    }
  return s * grid.h * grid.h * grid.h;
}

ScalarField covariant_div(const lie::LieAlgebraSpec& g, const Grid& grid,
                          const GaugeField& a, const GaugeField& e, double coupling) {
  check_shapes(g, grid, a, "covariant_div");
  check_shapes(g, grid, e, "covariant_div");
  ScalarField out = ScalarField::zero(grid, g.dim_g);
  const int d = g.dim_g;
  const double w = 1.0 / (2.0 * grid.h);
  for (int s = 0; s < grid.sites(); ++s) {
    double* dst = &out.v[s * d];
    for (int k = 0; k < 3; ++k) {
      const int sp = grid.shift(s, k, +1), sm = grid.shift(s, k, -1);
      for (int i = 0; i < d; ++i) dst[i] += w * (e.at(sp, k, i) - e.at(sm, k, i));
      if (coupling != 0.0)
        bracket_acc(g, &a.v[(s * 3 + k) * d], &e.v[(s * 3 + k) * d], -coupling, dst);
    }
  }
  return out;
}

double constraint_residual(const lie::LieAlgebraSpec& g, const Grid& grid,
                           const CauchyData& data, double coupling) {
  return norm(g, grid, covariant_div(g, grid, data.a, data.e, coupling));
}

GaugeField force(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                 double coupling) {
  const CurvatureField fc = curvature(g, grid, a, coupling);
  GaugeField out = GaugeField::zero(grid, g.dim_g);
  const int d = g.dim_g;
  const double w = 1.0 / (2.0 * grid.h);
  // Workspace for the signed F_{jk} at the two neighbor sites and here.
  std::vector<double> fjk(d);
  for (int s = 0; s < grid.sites(); ++s) {
    for (int k = 0; k < 3; ++k) {
      double* dst = &out.v[(s * 3 + k) * d];
      for (int j = 0; j < 3; ++j) {
        if (j == k) continue;
        const int p = pair_of[j][k];
        const double sg = sign_of[j][k];
        const int sp = grid.shift(s, j, +1), sm = grid.shift(s, j, -1);
        for (int i = 0; i < d; ++i)
          dst[i] += sg * w * (fc.f.at(sp, p, i) - fc.f.at(sm, p, i));
        if (coupling != 0.0) {
          for (int i = 0; i < d; ++i) fjk[i] = sg * fc.f.at(s, p, i);
          bracket_acc(g, &a.v[(s * 3 + j) * d], fjk.data(), -coupling, dst);
        }
      }
    }
  }
  return out;
}

GaugeField axpy(double alpha, const GaugeField& x, const GaugeField& y) {
  GaugeField out = y;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += alpha * x.v[i];
  return out;
}

ScalarField axpy(double alpha, const ScalarField& x, const ScalarField& y) {
  ScalarField out = y;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += alpha * x.v[i];
  return out;
}

CauchyData evolve(const lie::LieAlgebraSpec& g, const Grid& grid, const CauchyData& data,
                  double dt, int steps, double coupling,
                  std::vector<StepRecord>* records) {
  require(steps >= 0, kMod, "evolve: negative step count");
  const double bound = 0.5 * grid.h / std::sqrt(3.0);
  require(std::abs(dt) <= bound * (1.0 + 1e-12), kMod,
          "evolve: |dt| = " + format_double(std::abs(dt)) +
              " exceeds the stability guard 0.5 h / sqrt(3) = " + format_double(bound));
  CauchyData cur = data;
  require(cur.a.finite() && cur.e.finite(), kMod, "evolve: non-finite initial data");

  auto record = [&](double t) {
    if (records != nullptr)
      records->push_back(
          {t, energy(g, grid, cur, coupling), constraint_residual(g, grid, cur, coupling)});
  };
  record(0.0);

  GaugeField f = force(g, grid, cur.a, coupling);
  for (int m = 0; m < steps; ++m) {
    const GaugeField e_half = axpy(0.5 * dt, f, cur.e);
    cur.a = axpy(dt, e_half, cur.a);
    f = force(g, grid, cur.a, coupling);
    cur.e = axpy(0.5 * dt, f, e_half);
    record((m + 1) * dt);
  }
  require(cur.a.finite() && cur.e.finite(), kMod, "evolve: trajectory left finite range");
  return cur;
}

GroupField exp_field(const lie::LieAlgebraSpec& g, const Grid& grid, const ScalarField& xi) {
  GroupField out;
  out.n = grid.n;
  out.g.resize(grid.sites());
  const int d = g.dim_g;
  for (int s = 0; s < grid.sites(); ++s) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = xi.v[s * d + i];
    const Eigen::MatrixXcd anti = lie::to_matrix(g, x);
    // exp of anti-Hermitian via the Hermitian eigensystem of i*anti.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
        (std::complex<double>(0, 1) * anti).eval());
    Eigen::VectorXcd phase(eig.eigenvalues().size());
    for (int i = 0; i < phase.size(); ++i)
      phase(i) = std::exp(std::complex<double>(0, -eig.eigenvalues()(i)));
    out.g[s] = eig.eigenvectors() * phase.asDiagonal() * eig.eigenvectors().adjoint();
  }
  return out;
}

GaugeField pure_gauge(const lie::LieAlgebraSpec& g, const Grid& grid,
                      const GroupField& gfun) {
  GaugeField out = GaugeField::zero(grid, g.dim_g);
  const double w = 1.0 / (2.0 * grid.h);
  for (int s = 0; s < grid.sites(); ++s) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::MatrixXcd dg =
          w * (gfun.g[grid.shift(s, k, +1)] - gfun.g[grid.shift(s, k, -1)]);
      const Eigen::VectorXd coef =
          lie::expand_in_basis(g, (-dg * gfun.g[s].adjoint()).eval());
      for (int i = 0; i < g.dim_g; ++i) out.at(s, k, i) = coef(i);
    }
  }
  return out;
}

CauchyData gauge_transform(const lie::LieAlgebraSpec& g, const Grid& grid,
                           const CauchyData& data, const GroupField& gfun) {
  check_shapes(g, grid, data.a, "gauge_transform");
  require(static_cast<int>(gfun.g.size()) == grid.sites(), kMod,
          "gauge_transform: group function has wrong site count");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.rep_n, g.rep_n);
  for (int s = 0; s < grid.sites(); ++s)
    require((gfun.g[s] * gfun.g[s].adjoint() - id).norm() <= 1e-10, kMod,
            "gauge_transform: group function is not unitary at site " + std::to_string(s));

  CauchyData out;
  out.a = GaugeField::zero(grid, g.dim_g);
  out.e = GaugeField::zero(grid, g.dim_g);
  const int d = g.dim_g;
  const double w = 1.0 / (2.0 * grid.h);
  Eigen::VectorXd coord(d);
  for (int s = 0; s < grid.sites(); ++s) {
    const Eigen::MatrixXcd& gm = gfun.g[s];
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < d; ++i) coord(i) = data.a.at(s, k, i);
      Eigen::MatrixXcd m = gm * lie::to_matrix(g, coord) * gm.adjoint();
      m -= w * (gfun.g[grid.shift(s, k, +1)] - gfun.g[grid.shift(s, k, -1)]) * gm.adjoint();
      const Eigen::VectorXd na = lie::expand_in_basis(g, m);
      for (int i = 0; i < d; ++i) out.a.at(s, k, i) = na(i);

      for (int i = 0; i < d; ++i) coord(i) = data.e.at(s, k, i);
      const Eigen::VectorXd ne =
          lie::expand_in_basis(g, (gm * lie::to_matrix(g, coord) * gm.adjoint()).eval());
      for (int i = 0; i < d; ++i) out.e.at(s, k, i) = ne(i);
    }
  }
  return out;
}

}  // namespace ymgap::lattice
