#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ymgap/fock.hpp"
#include "ymgap/lattice.hpp"
#include "ymgap/lie.hpp"
#include "ymgap/symbol.hpp"

namespace ymgap::spectrum {

using lie::LieAlgebraSpec;
using lattice::CauchyData;
using lattice::GaugeField;
using lattice::Grid;
using fock::FockBasis;
using fock::PolynomialSymbol;
using fock::SpMat;

// One transversal plane-wave mode: momentum on the dual lattice, cos/sin
// branch, polarization slot, Lie direction, and the unit-norm lattice field
// realizing it. omega is the central-difference dispersion sqrt(sum
// sin^2(2 pi k_j / n)) / h.
struct Mode {
  std::array<int, 3> momentum{};
  int trig = 0;  // 0 cos, 1 sin
  int polarization = 0;
  int lie = 0;
  double omega = 0.0;
  GaugeField field;
};

// Finite mode frame for quantization around a = 0. Modes are L2-orthonormal,
// ordinary-divergence-free, and ordered by (omega, momentum, trig,
// polarization, lie), so a prefix of the list is itself a canonical choice.
struct ModeBasis {
  LieAlgebraSpec g;
  Grid grid;
  std::vector<Mode> modes;

  int size() const { return static_cast<int>(modes.size()); }

  // Mode coordinates -> lattice Cauchy data with the frequency weighting
  // a = sum (a_m / sqrt(omega_m)) u_m, e = sum (sqrt(omega_m) e_m) u_m that
  // turns the free energy into sum omega (a_m^2 + e_m^2) / 2.
  CauchyData embed(const Eigen::VectorXd& a_coord, const Eigen::VectorXd& e_coord) const;
};

// Lowest-frequency transversal modes, count exactly m_count. Throws when the
// grid does not carry that many.
ModeBasis build_modes(const LieAlgebraSpec& g, const Grid& grid, int m_count);

// Energy functional of the embedded modes as a polynomial symbol in
// z_m = (a_m + i e_m)/sqrt(2), plus its normal-ordered decomposition at heat
// parameter s: heat_transform(sym, s) = kinetic + quartic + mass_quad + k.
// The vacuum identity <vac|quantize_antiwick(sym)|vac> = k holds at s = 1.
struct EnergySymbol {
  PolynomialSymbol sym;        // classical symbol, degree 4, real on diagonal
  PolynomialSymbol kinetic;    // sum omega zbar z
  PolynomialSymbol quartic;    // bracket term, coefficient coupling^2
  PolynomialSymbol mass_quad;  // s * contraction of the quartic
  double k = 0.0;
  double s = 1.0;
  double coupling = 0.0;
};

EnergySymbol build_energy_symbol(const ModeBasis& basis, double coupling, double s = 1.0);

// Anti-Wick quantization of the energy symbol on the truncated basis.
SpMat assemble_H(const EnergySymbol& es, const FockBasis& b);

// Half the squared Killing norm of [x, y] for two independent algebra
// vectors, as a symbol over 2 * dim_g modes (x-coordinates first). Its heat
// contraction reproduces the quadratic Casimir mass term; tests pin this.
PolynomialSymbol bracket_quartic(const LieAlgebraSpec& g);

// Variational eigenvalues over whole number-operator sectors: lambda_j is
// the max over removals of j sectors of the minimum eigenvalue of the
// compression to the remaining sectors. Exhaustive for j <= 3, greedy with
// single-swap verification above. sector_of[r] labels row r; h must be
// Hermitian.
std::vector<double> vn_minimax(const Eigen::MatrixXcd& h, const std::vector<int>& sector_of,
                               int n);
std::vector<double> vn_minimax(const SpMat& h, const FockBasis& b, int n);

struct BoundReport {
  double min_slack = 0.0;    // min over trials of <H> - <mass> - k
  double min_kinetic = 0.0;  // min over trials of <quantize_normal(kinetic)>
  double min_quartic = 0.0;
  int trials = 0;
  int failures = 0;  // trials with any quantity below -1e-10
};

// Expectation lower-bound sweep over random safe-block states (plus the
// vacuum as trial zero). Deterministic given the seed.
BoundReport bound_check(const SpMat& h, const EnergySymbol& es, const FockBasis& b, int trials,
                        std::uint64_t seed);

// Lowest k_want eigenvalues by Lanczos with full reorthogonalization;
// residual tolerance 1e-8 relative to the operator scale. Used above the
// dense-diagonalization gate.
std::vector<double> extremal_eigs(const SpMat& h, int k_want, int max_iter = 0);

struct SpectrumReport {
  int m_count = 0, n_max = 0;
  double coupling = 0.0;
  double k = 0.0;
  std::vector<double> eigenvalues;     // safe-block spectrum, ascending
  std::vector<double> sector_minima;   // per-grade minimum eigenvalue
  std::vector<double> minimax;         // vn_minimax lambda_0..lambda_3
  double lambda0 = 0.0, lambda1 = 0.0, gap = 0.0;
  double min_slack = 0.0;
  bool skipped = false;
  std::string note;
};

// Full report for one configuration: assemble, compress to the safe block,
// diagonalize (dense <= 4096, else Lanczos for the lowest pair only), run
// bound_check with the supplied trials/seed.
SpectrumReport spectrum_report(const LieAlgebraSpec& g, const Grid& grid, int m_count, int n_max,
                               double coupling, int trials = 200, std::uint64_t seed = 1);

struct ScanConfig {
  int m_count = 0;
  int n_max = 0;
  double coupling = 0.0;
};

// Reports for each configuration in order; configurations whose safe block
// exceeds the dense limit come back skipped with a note instead of failing
// the whole scan.
std::vector<SpectrumReport> gap_scan(const LieAlgebraSpec& g, const Grid& grid,
                                     const std::vector<ScanConfig>& configs, int trials = 200,
                                     std::uint64_t seed = 1);

}  // namespace ymgap::spectrum
