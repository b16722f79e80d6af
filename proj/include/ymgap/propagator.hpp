#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ymgap/fock.hpp"

namespace ymgap::prop {

using fock::cd;
using fock::FockBasis;
using fock::PolynomialSymbol;
using fock::SpMat;

// Time-slicing plan for amplitude evolution. The total time t is split
// uniformly into n_steps slices; quadrature doubles as the Gauss-Hermite
// order on the integral path and the Taylor degree on the symbol path, and
// must be at least the energy symbol's degree.
struct PropagationConfig {
  double t = 1.0;
  int n_steps = 16;
  int quadrature = 8;
};

// Amplitude together with the coherent-tail defect of the truncated basis:
// tail_bound = max over the two endpoint labels of the relative l2 mass of
// the coherent expansion lost above the cutoff.
struct PropagationResult {
  cd amplitude{0.0, 0.0};
  double tail_bound = 0.0;
};

// One short-time step operator: the anti-Wick quantization of the symbol
// exp(-i tau H), Taylor-expanded to `degree` powers of H. The cutoff caps
// the usable degree at n_max / deg(H); the factorial-domination guard
// |tau| * sup|H| < J + 1 rejects steps whose truncated series still grows.
SpMat chernoff_step(const PolynomialSymbol& h_sym, double tau, const FockBasis& b, int degree);

// Same operator through per-mode Gauss-Hermite quadrature of the Toeplitz
// integral, evaluating exp(-i tau H(z)) at the nodes directly (no Taylor
// truncation). Only wired for one or two modes; the result carries the
// quadrature at 2x order, and a disagreement between the two orders above
// 1e-8 of scale is rejected as an insufficient order.
SpMat chernoff_step_quadrature(const PolynomialSymbol& h_sym, double tau, const FockBasis& b,
                               int order);

// Anti-Wick quantization by quadrature alone (polynomial integrand). Exact
// up to roundoff once 2*order - 1 covers the worst per-variable polynomial
// degree, i.e. order >= (sym degree + 2 n_max) / 2 + 1; enforced.
SpMat quantize_antiwick_quadrature(const PolynomialSymbol& sym, const FockBasis& b, int order);

// <coherent(zt)| step^N |coherent(z0)> with step = chernoff_step at
// tau = t / n_steps. Both labels must lie in the coherent-tail region
// sum |z|^2 <= n_max / 8. Pure arithmetic: bit-reproducible.
PropagationResult propagate(const PolynomialSymbol& h_sym, const Eigen::VectorXcd& z0,
                            const Eigen::VectorXcd& zt, const PropagationConfig& cfg,
                            const FockBasis& b);

// <coherent(zt)| exp(-i t H) |coherent(z0)> through a dense Hermitian
// eigendecomposition; dimension capped at 4096.
cd exact_amplitude(const SpMat& h, const Eigen::VectorXcd& z0, const Eigen::VectorXcd& zt,
                   double t, const FockBasis& b);

struct ConvergenceRow {
  int n_steps = 0;
  cd amplitude{0.0, 0.0};
  double error = 0.0;  // |propagate - exact|
  cd action{0.0, 0.0};  // discretized action along the mean-label path
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double empirical_order = 0.0;  // least-squares slope of log error vs log n
};

// Errors against the exact amplitude over a list of step counts, with the
// discretized action sum_j [(z_{j+1}-z_j)^* z_j - i tau H(z_j)] along the
// annihilator-mean trajectory recorded per row.
ConvergenceStudy convergence_study(const PolynomialSymbol& h_sym, const Eigen::VectorXcd& z0,
                                   const Eigen::VectorXcd& zt, double t,
                                   const std::vector<int>& n_list, int quadrature,
                                   const FockBasis& b);

// CSV rendering of a study: header row plus one line per step count.
std::string convergence_csv(const ConvergenceStudy& study);

}  // namespace ymgap::prop
