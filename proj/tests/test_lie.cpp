#include "ymgap/lie.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "ymgap/util.hpp"

using namespace ymgap;
using lie::LieAlgebraSpec;

namespace {

double eps_ijk(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
      (i == 2 && j == 0 && k == 1))
    return 1.0;
  return -1.0;
}

// Oracle: Killing metric straight from the definition. Builds ad matrices
// from the structure constants by an independent index loop and takes
// -tr(ad_i ad_j) with explicit sums, no Eigen products.
Eigen::MatrixXd killing_oracle(const LieAlgebraSpec& g) {
  const int d = g.dim_g;
  Eigen::MatrixXd k(d, d);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      double s = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) s += g.cc(i, a, b) * g.cc(l, b, a);
      k(i, l) = -s;
    }
  return k;
}

// Oracle: structure constants recomputed from the stored defining-rep
// matrices via commutators and the Frobenius expansion.
double structure_vs_matrices(const LieAlgebraSpec& g) {
  double worst = 0.0;
  for (int i = 0; i < g.dim_g; ++i)
    for (int j = 0; j < g.dim_g; ++j) {
      const Eigen::MatrixXcd comm =
          g.basis[i] * g.basis[j] - g.basis[j] * g.basis[i];
      Eigen::MatrixXcd recon = Eigen::MatrixXcd::Zero(g.rep_n, g.rep_n);
      for (int k = 0; k < g.dim_g; ++k) recon += g.cc(i, j, k) * g.basis[k];
      worst = std::max(worst, (comm - recon).norm());
    }
  return worst;
}

}  // namespace

TEST_CASE("su(2) orthonormal basis has c = eps/sqrt(2)") {
  const auto g = lie::build_algebra("su", 2);
  REQUIRE(g.dim_g == 3);
  const double w = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(std::abs(g.cc(i, j, k) - w * eps_ijk(i, j, k)) <= 1e-13);
  CHECK(g.is_orthonormal(1e-12));
}

TEST_CASE("su(2) without orthonormalization: c = eps, metric = 2 I") {
  const auto g = lie::build_algebra("su", 2, false);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(std::abs(g.cc(i, j, k) - eps_ijk(i, j, k)) <= 1e-13);
  CHECK((g.metric - 2.0 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("metric matches the ad-representation oracle") {
  for (const auto& [grp, n] : {std::pair{std::string("su"), 2}, {std::string("su"), 3},
                               {std::string("so"), 3}, {std::string("so"), 4}}) {
    const auto g = lie::build_algebra(grp, n);
    CHECK((g.metric - killing_oracle(g)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(structure_vs_matrices(g) <= 1e-12);
    CHECK(g.is_orthonormal(1e-12));
  }
}

TEST_CASE("dimensions and rejection of non-semisimple input") {
  CHECK(lie::build_algebra("su", 2).dim_g == 3);
  CHECK(lie::build_algebra("su", 3).dim_g == 8);
  CHECK(lie::build_algebra("so", 3).dim_g == 3);
  CHECK(lie::build_algebra("so", 4).dim_g == 6);
  CHECK_THROWS(lie::build_algebra("su", 1));
  CHECK_THROWS(lie::build_algebra("so", 2));
  CHECK_THROWS(lie::build_algebra("sp", 2));
}

TEST_CASE("structure constant identities for su(2), su(3), so(4)") {
  for (const auto& [grp, n] :
       {std::pair{std::string("su"), 2}, {std::string("su"), 3}, {std::string("so"), 4}}) {
    const auto g = lie::build_algebra(grp, n);
    CHECK(lie::jacobi_residual(g) <= 1e-12);
    CHECK(lie::antisymmetry_residual(g) <= 1e-12);
    CHECK(lie::total_antisymmetry_residual(g) <= 1e-12);
  }
}

TEST_CASE("casimir contraction is the identity in an orthonormal basis") {
  for (const auto& [grp, n] :
       {std::pair{std::string("su"), 2}, {std::string("su"), 3}, {std::string("so"), 4}}) {
    const auto g = lie::build_algebra(grp, n);
    // Oracle computes the contraction sum directly.
    const int d = g.dim_g;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) m(i, l) += g.cc(i, j, k) * g.cc(l, j, k);
    CHECK((lie::casimir_contract(g) - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("abelian diagnostic algebra contracts to zero") {
  LieAlgebraSpec g;
  g.dim_g = 2;
  g.c.assign(8, 0.0);
  g.metric = Eigen::MatrixXd::Zero(2, 2);
  CHECK(lie::casimir_contract(g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("killing product is ad-invariant and ad(X) is antisymmetric") {
  const auto g = lie::build_algebra("su", 3);
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd x(g.dim_g), y(g.dim_g), z(g.dim_g);
    for (int i = 0; i < g.dim_g; ++i) {
      x(i) = nd(rng);
      y(i) = nd(rng);
      z(i) = nd(rng);
    }
    // <[x,y],z> + <y,[x,z]> = 0
    const double inv = lie::killing_product(g, lie::bracket(g, x, y), z) +
                       lie::killing_product(g, y, lie::bracket(g, x, z));
    CHECK(std::abs(inv) <= 1e-12 * x.norm() * y.norm() * z.norm() * 10);
    const Eigen::MatrixXd ad = lie::ad_matrix(g, x);
    CHECK((ad + ad.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1 + x.norm()));
    // ad must reproduce the bracket.
    CHECK((ad * y - lie::bracket(g, x, y)).norm() <= 1e-12 * (1 + x.norm() * y.norm()));
  }
}

TEST_CASE("killing product of matrices: positivity and rep consistency") {
  const auto g = lie::build_algebra("so", 4);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x(g.dim_g);
    for (int i = 0; i < g.dim_g; ++i) x(i) = nd(rng);
    CHECK(lie::killing_product(g, x, x) > 0.0);
    // Round trip through the defining representation.
    const Eigen::VectorXd back = lie::expand_in_basis(g, lie::to_matrix(g, x));
    CHECK((back - x).norm() <= 1e-12 * (1 + x.norm()));
  }
  CHECK(lie::expansion_defect(g, lie::to_matrix(g, Eigen::VectorXd::Ones(g.dim_g))) <= 1e-12);
  Eigen::VectorXd bad(2);
  bad << 1, 2;
  CHECK_THROWS(lie::killing_product(g, bad, bad));
}

TEST_CASE("defining representation matrices are anti-Hermitian (traceless for su)") {
  for (const auto& [grp, n] :
       {std::pair{std::string("su"), 3}, {std::string("so"), 4}}) {
    const auto g = lie::build_algebra(grp, n);
    for (const auto& m : g.basis) {
      CHECK((m + m.adjoint()).norm() <= 1e-12);
      if (grp == "su") CHECK(std::abs(m.trace()) <= 1e-12);
    }
  }
}
