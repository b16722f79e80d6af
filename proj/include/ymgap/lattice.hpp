#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ymgap/lie.hpp"

namespace ymgap::lattice {

// Periodic cubic grid, n sites per axis, spacing h. Site index runs
// site = (x*n + y)*n + z.
struct Grid {
  int n = 0;
  double h = 1.0;
  int sites() const { return n * n * n; }
  int site(int x, int y, int z) const { return (x * n + y) * n + z; }
  // Neighbor site shifted +-1 along axis with periodic wrap.
  int shift(int s, int axis, int dir) const;
  double volume() const { return sites() * h * h * h; }
};

// Algebra-valued 1-form on the grid: value index (site*3 + axis)*dim_g + i.
// This flat layout is also the serialized order (site-major, then axis,
// then Lie index).
struct GaugeField {
  int n = 0, dim_g = 0;
  std::vector<double> v;
  static GaugeField zero(const Grid& grid, int dim_g);
  double& at(int site, int axis, int i) { return v[(site * 3 + axis) * dim_g + i]; }
  double at(int site, int axis, int i) const { return v[(site * 3 + axis) * dim_g + i]; }
  bool finite() const;
};

// Algebra-valued function on the grid: value index site*dim_g + i.
struct ScalarField {
  int n = 0, dim_g = 0;
  std::vector<double> v;
  static ScalarField zero(const Grid& grid, int dim_g);
  double& at(int site, int i) { return v[site * dim_g + i]; }
  double at(int site, int i) const { return v[site * dim_g + i]; }
};

// Temporal-gauge Cauchy data: connection a and its velocity e.
struct CauchyData {
  GaugeField a, e;
};

// Antisymmetric curvature two-form, stored as the three independent
// components in the axis-complement order f[0] = F_{23}, f[1] = F_{31},
// f[2] = F_{12} (1-based axes), i.e. the magnetic vector B_i = f[i].
struct CurvatureField {
  int n = 0, dim_g = 0;
  GaugeField f;  // axis slot holds the pair index
};

// Group-valued lattice function in the defining representation.
struct GroupField {
  int n = 0;
  std::vector<Eigen::MatrixXcd> g;
};

// L2 inner products with the h^3 site weight; Lie indices are contracted
// with the Killing metric so non-orthonormal bases stay consistent.
double inner(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& u,
             const GaugeField& w);
double inner(const lie::LieAlgebraSpec& g, const Grid& grid, const ScalarField& u,
             const ScalarField& w);
double norm(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& u);
double norm(const lie::LieAlgebraSpec& g, const Grid& grid, const ScalarField& u);

// Central difference along axis, (f(x+e) - f(x-e)) / 2h, acting per
// component on either field kind.
ScalarField central_diff(const Grid& grid, const ScalarField& f, int axis);

// F_jk = D_j a_k - D_k a_j - coupling [a_j, a_k].
CurvatureField curvature(const lie::LieAlgebraSpec& g, const Grid& grid,
                         const GaugeField& a, double coupling = 1.0);

// h^3 sum over sites of (e*e + B*B)/2 in the Killing product.
double energy(const lie::LieAlgebraSpec& g, const Grid& grid, const CauchyData& data,
              double coupling = 1.0);

// Covariant divergence of the velocity, div_a e; its L2 norm is the Gauss
// constraint residual that the flow is supposed to preserve.
ScalarField covariant_div(const lie::LieAlgebraSpec& g, const Grid& grid,
                          const GaugeField& a, const GaugeField& e, double coupling = 1.0);
double constraint_residual(const lie::LieAlgebraSpec& g, const Grid& grid,
                           const CauchyData& data, double coupling = 1.0);

// Right-hand side of the velocity equation, force_k = sum_j D_j F_jk -
// coupling [a_j, F_jk]. Exposed for tests; evolve uses it internally.
GaugeField force(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                 double coupling = 1.0);

struct StepRecord {
  double t = 0.0;
  double energy = 0.0;
  double constraint = 0.0;
};

// Velocity-Verlet leapfrog for d/dt a = e, d/dt e = force(a). Rejects dt
// beyond the wave-speed guard dt <= 0.5 h / sqrt(3) (the discrete spectral
// bound for the central-difference Laplacian is sqrt(3)/h). The map is
// time-reversible: evolve(evolve(d, dt, s), -dt, s) returns d up to
// rounding. records, when non-null, receives steps+1 entries including the
// initial state.
CauchyData evolve(const lie::LieAlgebraSpec& g, const Grid& grid, const CauchyData& data,
                  double dt, int steps, double coupling = 1.0,
                  std::vector<StepRecord>* records = nullptr);

// a -> Ad(g) a - (D g) g^{-1}, e -> Ad(g) e per site. gfun must be unitary
// to 1e-10 per site. Components outside the algebra span produced by the
// finite-difference derivative are projected out.
CauchyData gauge_transform(const lie::LieAlgebraSpec& g, const Grid& grid,
                           const CauchyData& data, const GroupField& gfun);

// Pointwise exponential of an algebra-valued function (unitary by
// construction), and the pure-gauge connection -(D_k g) g^{-1} it induces.
GroupField exp_field(const lie::LieAlgebraSpec& g, const Grid& grid, const ScalarField& xi);
GaugeField pure_gauge(const lie::LieAlgebraSpec& g, const Grid& grid, const GroupField& gfun);

// Field arithmetic used by the solvers.
GaugeField axpy(double alpha, const GaugeField& x, const GaugeField& y);  // alpha x + y
ScalarField axpy(double alpha, const ScalarField& x, const ScalarField& y);

}  // namespace ymgap::lattice
