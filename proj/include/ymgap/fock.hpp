#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ymgap/symbol.hpp"

namespace ymgap::fock {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;

// Occupation-number basis over M modes truncated by total grade,
// sum(n) <= n_max, enumerated grade-first and lexicographically inside each
// grade. The enumeration is the contract for every serialized operator.
struct FockBasis {
  int modes = 0, n_max = 0;
  std::vector<std::vector<int>> occ;
  std::vector<int> grades;

  static FockBasis build(int modes, int n_max);

  int dim() const { return static_cast<int>(occ.size()); }
  int grade(int i) const { return grades[i]; }
  // -1 when the occupation is outside the truncated set.
  int index_of(const std::vector<int>& occupation) const;
  // Indices whose grade is <= n_max - degree: the block on which operators
  // quantized from a degree-`degree` symbol are truncation-exact.
  std::vector<int> safe_block(int degree) const;

 private:
  std::map<std::vector<int>, int> index_;
};

// Creation (create = true) or annihilation matrix of one mode. Creation out
// of the top grade truncates to zero.
SpMat ladder(int mode, bool create, const FockBasis& b);

// Components z^alpha / sqrt(alpha!) over the truncated basis; z = 0 gives
// the vacuum unit vector. Not normalized: the self-overlap approximates
// exp(|z|^2) with tail |z|^{2(n_max+1)}/(n_max+1)!.
Eigen::VectorXcd coherent_vector(const std::vector<std::complex<double>>& z,
                                 const FockBasis& b);

// Normal quantization: each monomial zbar^alpha z^beta becomes
// (creation)^alpha (annihilation)^beta. Rejects symbols of degree > n_max.
SpMat quantize_normal(const PolynomialSymbol& sym, const FockBasis& b);

// Anti-Wick (Berezin-Toeplitz) quantization: (annihilation)^beta
// (creation)^alpha, composed through the truncated space, so it agrees with
// the Toeplitz compression of the exact operator on the safe block and
// differs from it only within `degree` grades of the cutoff.
SpMat quantize_antiwick(const PolynomialSymbol& sym, const FockBasis& b);

// Dense conversion, refused above dimension 4096.
Eigen::MatrixXcd to_dense(const SpMat& m);

// Dense compression onto a subset of basis indices (rows = cols = subset).
Eigen::MatrixXcd dense_block(const SpMat& m, const std::vector<int>& indices);

struct KernelCheckReport {
  double max_raw = 0.0;        // against the symbol itself, no ordering correction
  double max_corrected = 0.0;  // against heat_transform(sym, 1), the matrix truth
  int samples = 0;
};

// Compares <e_z| quantize_antiwick(sym) |e_z> with Theta(zbar,z) e^{|z|^2} at
// the given points, both for Theta = sym (raw) and Theta = heat_transform(sym, 1)
// (corrected). Rejects points with sum |z_m|^2 > n_max / 8, where the
// truncation tail would contaminate the comparison.
KernelCheckReport kernel_check(const PolynomialSymbol& sym, const FockBasis& b,
                               const std::vector<std::vector<std::complex<double>>>& points);

// Max-entry residual of exp(A_z) exp(C_z) = e^{<z,z>} exp(C_z) exp(A_z) on the
// block of grades <= n_max / 2, where C_z = sum z_m create_m and
// A_z = sum conj(z_m) annihilate_m. Exponentials are exact finite series of
// the nilpotent truncated ladders.
double weyl_relation_check(const std::vector<std::complex<double>>& z, const FockBasis& b);

}  // namespace ymgap::fock
