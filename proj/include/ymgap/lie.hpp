#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ymgap::lie {

// Compact semisimple gauge algebra in a fixed basis. c is the flattened
// structure-constant tensor, c[(i*dim_g + j)*dim_g + k] the e_k coefficient
// of [e_i, e_j]. metric is the Killing product matrix e_i * e_j computed
// from the adjoint representation, positive definite for the groups built
// here. basis holds the defining-representation matrices (anti-Hermitian,
// traceless for su); they back the group-level operations in the lattice
// module. Tests may fill this struct by hand for diagnostic algebras that
// build_algebra would reject.
struct LieAlgebraSpec {
  int dim_g = 0;
  int rep_n = 0;                      // defining representation size
  std::string label;                  // e.g. "su2", "so4"
  std::vector<double> c;              // dim_g^3 structure constants
  Eigen::MatrixXd metric;             // dim_g x dim_g Killing products
  std::vector<Eigen::MatrixXcd> basis;
  Eigen::MatrixXd gram_inv;           // inverse Frobenius Gram of basis

  double cc(int i, int j, int k) const { return c[(i * dim_g + j) * dim_g + k]; }
  bool is_orthonormal(double tol = 1e-10) const;
};

// Builds su(N) (N >= 2) or so(N) (N >= 3). group is "su" or "so". With
// orthonormalize (the default) the returned basis has Killing metric equal
// to the identity; otherwise the conventional basis is kept (su(2) then has
// [e_i, e_j] = eps_ijk e_k and metric 2*I). Degenerate metrics are rejected.
LieAlgebraSpec build_algebra(const std::string& group, int n, bool orthonormalize = true);

// Killing product of coordinate vectors, x^T metric y.
double killing_product(const LieAlgebraSpec& g, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y);

// [x, y] in coordinates.
Eigen::VectorXd bracket(const LieAlgebraSpec& g, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

// ad(x) as a dim_g x dim_g matrix, ad(x) y = [x, y].
Eigen::MatrixXd ad_matrix(const LieAlgebraSpec& g, const Eigen::VectorXd& x);

// M[i][l] = sum_{j,k} c[i][j][k] c[l][j][k]. Equals the identity when the
// basis is Killing-orthonormal; well defined (if not identity) otherwise.
Eigen::MatrixXd casimir_contract(const LieAlgebraSpec& g);

// Max |c_ijk + c_jik| style residuals over all index triples, and the
// worst Jacobi defect. Zero for a genuine Lie algebra up to rounding.
double antisymmetry_residual(const LieAlgebraSpec& g);
double total_antisymmetry_residual(const LieAlgebraSpec& g);
double jacobi_residual(const LieAlgebraSpec& g);

// Expands a defining-representation matrix in g.basis (Gram solve). The
// component outside span(basis) is discarded; callers that care measure it
// with expansion_defect.
Eigen::VectorXd expand_in_basis(const LieAlgebraSpec& g, const Eigen::MatrixXcd& m);
double expansion_defect(const LieAlgebraSpec& g, const Eigen::MatrixXcd& m);

// Coordinate vector -> defining-representation matrix.
Eigen::MatrixXcd to_matrix(const LieAlgebraSpec& g, const Eigen::VectorXd& x);

}  // namespace ymgap::lie
