#pragma once

#include <vector>

#include "ymgap/lattice.hpp"
#include "ymgap/lie.hpp"

namespace ymgap::helmholtz {

using lattice::CauchyData;
using lattice::GaugeField;
using lattice::Grid;
using lattice::ScalarField;

// (grad_a u)_k = D_k u - coupling [a_k, u].
GaugeField gauge_grad(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                      const ScalarField& u, double coupling = 1.0);

// div_a v = sum_k D_k v_k - coupling [a_k, v_k]; the exact negative adjoint
// of gauge_grad in the lattice product, <-grad_a u | v> = <u | div_a v>.
ScalarField gauge_div(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                      const GaugeField& v, double coupling = 1.0);

// Delta_a u = div_a grad_a u; symmetric, negative semidefinite.
ScalarField gauge_laplacian(const lie::LieAlgebraSpec& g, const Grid& grid,
                            const GaugeField& a, const ScalarField& u,
                            double coupling = 1.0);

struct SolverConfig {
  double tol = 1e-8;       // relative residual target, must be in (0, 1)
  int max_iter = 0;        // 0 = 10 * (sites * dim_g)
  double deflate_tol = 1e-10;  // kernel classification threshold on eigenvalues
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;          // relative, on the deflated complement
  int kernel_dim = 0;             // detected kernel dimension
  double kernel_component = 0.0;  // |projection of f on kernel| / |f|
};

// Elliptic inversion of Delta_a. Construction detects the kernel (constants
// and their checkerboard partners at a = 0, covariant-constant fields in
// general) by shifted block inverse iteration; solve() then runs conjugate
// gradients on the orthogonal complement. Construction is the expensive
// part, so reuse one instance per connection a.
class LaplacianSolver {
 public:
  LaplacianSolver(const lie::LieAlgebraSpec& g, const Grid& grid, const GaugeField& a,
                  SolverConfig cfg = {}, double coupling = 1.0);

  ScalarField apply(const ScalarField& u) const;  // Delta_a u
  const std::vector<ScalarField>& kernel() const { return kernel_; }
  double lambda_max() const { return lambda_max_; }

  // Solves Delta_a u = f on the complement of the detected kernel. Throws if
  // the kernel component of f exceeds tol (rank deficiency) or if max_iter is
  // reached before the residual target (non-convergence).
  ScalarField solve(const ScalarField& f, SolveReport* report = nullptr) const;

  const lie::LieAlgebraSpec& algebra() const { return g_; }
  const Grid& grid() const { return grid_; }
  const GaugeField& connection() const { return a_; }
  double coupling() const { return coupling_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  lie::LieAlgebraSpec g_;
  Grid grid_;
  GaugeField a_;
  SolverConfig cfg_;
  double coupling_ = 1.0;
  double lambda_max_ = 0.0;
  std::vector<ScalarField> kernel_;

  void detect_kernel();
};

// One-shot wrappers; each builds a LaplacianSolver internally.
ScalarField solve_laplacian(const lie::LieAlgebraSpec& g, const Grid& grid,
                            const GaugeField& a, const ScalarField& f,
                            SolverConfig cfg = {}, double coupling = 1.0,
                            SolveReport* report = nullptr);

// P_a v = grad_a Delta_a^{-1} div_a v, the gauge-longitudinal projector.
GaugeField helmholtz_project(const LaplacianSolver& solver, const GaugeField& v);
GaugeField helmholtz_project(const lie::LieAlgebraSpec& g, const Grid& grid,
                             const GaugeField& a, const GaugeField& v,
                             SolverConfig cfg = {}, double coupling = 1.0);

// (a, e) -> (a, e - P_a e): removes the longitudinal part of the velocity.
CauchyData transversal(const LaplacianSolver& solver, const CauchyData& data);
CauchyData transversal(const lie::LieAlgebraSpec& g, const Grid& grid,
                       const CauchyData& data, SolverConfig cfg = {},
                       double coupling = 1.0);

struct OrbitReport {
  int iterations = 0;
  bool converged = false;
  double div_norm = 0.0;            // ordinary divergence of the result
  std::vector<double> norms;        // |a| after each accepted step, [0] = initial
};

// Steepest descent with Armijo backtracking on the squared norm over the
// gauge orbit of a. The descent direction is the ordinary divergence of the
// current iterate (the orbit gradient), so minimizers are divergence-free.
// Stops when |div a| <= tol * max(1, |a_initial|) or after max_iter steps
// (0 = 200); a non-converged run returns the best iterate with
// report->converged = false rather than throwing. Tolerances below the
// line-search rounding floor (about 1.5e-7 relative) are clamped to it:
// certifying smaller decreases of |a|^2 is not possible in double precision.
GaugeField minimize_orbit(const lie::LieAlgebraSpec& g, const Grid& grid,
                          const GaugeField& a, SolverConfig cfg = {},
                          OrbitReport* report = nullptr);

}  // namespace ymgap::helmholtz
