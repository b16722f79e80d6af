#include "ymgap/lie.hpp"

#include <cmath>
#include <complex>

#include "ymgap/util.hpp"

namespace ymgap::lie {
namespace {

constexpr const char* kMod = "lie";
using cd = std::complex<double>;

// Generalized Gell-Mann matrices: Hermitian, Tr(T_a T_b) = 2 delta_ab.
std::vector<Eigen::MatrixXcd> gell_mann(int n) {
  std::vector<Eigen::MatrixXcd> t;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      t.push_back(s);
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
      a(j, k) = cd(0, -1);
      a(k, j) = cd(0, 1);
      t.push_back(a);
    }
  }
  for (int l = 1; l < n; ++l) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    const double w = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) d(j, j) = w;
    d(l, l) = -l * w;
    t.push_back(d);
  }
  return t;
}

std::vector<Eigen::MatrixXcd> so_basis(int n) {
  std::vector<Eigen::MatrixXcd> t;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = -1.0;
      t.push_back(m);
    }
  }
  return t;
}

Eigen::MatrixXd frobenius_gram(const std::vector<Eigen::MatrixXcd>& basis) {
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      gram(i, j) = (basis[i].adjoint() * basis[j]).trace().real();
  return gram;
}

// Structure constants from matrix commutators, expanding through the Gram
// matrix of the basis.
std::vector<double> structure_constants(const std::vector<Eigen::MatrixXcd>& basis,
                                        const Eigen::MatrixXd& gram) {
  const int d = static_cast<int>(basis.size());
  Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  std::vector<double> c(static_cast<size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::MatrixXcd comm = basis[i] * basis[j] - basis[j] * basis[i];
      Eigen::VectorXd rhs(d);
      for (int k = 0; k < d; ++k) rhs(k) = (basis[k].adjoint() * comm).trace().real();
      const Eigen::VectorXd coef = solver.solve(rhs);
      for (int k = 0; k < d; ++k) c[(i * d + j) * d + k] = coef(k);
    }
  }
  return c;
}

Eigen::MatrixXd killing_metric(const std::vector<double>& c, int d) {
  // K_il = -tr(ad_i ad_l); (ad_i)_{kj} = c[i][j][k].
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      double s = 0.0;
      for (int j = 0; j < d; ++j)
        for (int m = 0; m < d; ++m)
          s -= c[(i * d + j) * d + m] * c[(l * d + m) * d + j];
      k(i, l) = s;
    }
  return k;
}

LieAlgebraSpec assemble(std::vector<Eigen::MatrixXcd> basis, const std::string& label,
                        int rep_n) {
  LieAlgebraSpec g;
  g.dim_g = static_cast<int>(basis.size());
  g.rep_n = rep_n;
  g.label = label;
  g.basis = std::move(basis);
  const Eigen::MatrixXd gram = frobenius_gram(g.basis);
  g.gram_inv = gram.inverse();
  g.c = structure_constants(g.basis, gram);
  g.metric = killing_metric(g.c, g.dim_g);
  return g;
}

}  // namespace

bool LieAlgebraSpec::is_orthonormal(double tol) const {
  return (metric - Eigen::MatrixXd::Identity(dim_g, dim_g)).cwiseAbs().maxCoeff() <= tol;
}

LieAlgebraSpec build_algebra(const std::string& group, int n, bool orthonormalize) {
  std::vector<Eigen::MatrixXcd> basis;
  if (group == "su") {
    require(n >= 2, kMod, "su(N) needs N >= 2, got N = " + std::to_string(n));
    // e_a = -i T_a / 2 gives [e_1,e_2] = e_3 for su(2).
    for (const auto& t : gell_mann(n)) basis.push_back(cd(0, -0.5) * t);
  } else if (group == "so") {
    require(n >= 3, kMod, "so(N) needs N >= 3, got N = " + std::to_string(n));
    basis = so_basis(n);
  } else {
    fail(kMod, "unknown group '" + group + "' (expected \"su\" or \"so\")");
  }

  LieAlgebraSpec g = assemble(std::move(basis), group + std::to_string(n), n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.metric);
  const double lo = eig.eigenvalues().minCoeff();
  require(lo > 1e-8 * eig.eigenvalues().maxCoeff(), kMod,
          g.label + ": Killing metric is degenerate (min eigenvalue " +
              format_double(lo) + "), not compact semisimple");
  if (!orthonormalize) return g;

  // New basis f_a = sum_b M_ba e_b with M = Q diag(lambda^-1/2); then the
  // Killing metric recomputed from scratch is the identity.
  const Eigen::MatrixXd m =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  std::vector<Eigen::MatrixXcd> ortho(g.dim_g);
  for (int a = 0; a < g.dim_g; ++a) {
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(g.rep_n, g.rep_n);
    for (int b = 0; b < g.dim_g; ++b) f += m(b, a) * g.basis[b];
    ortho[a] = f;
  }
  LieAlgebraSpec out = assemble(std::move(ortho), g.label, g.rep_n);
  require(out.is_orthonormal(1e-10), kMod,
          out.label + ": orthonormalization failed to reach the identity metric");
  return out;
}

double killing_product(const LieAlgebraSpec& g, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
  require(x.size() == g.dim_g && y.size() == g.dim_g, kMod,
          "killing_product: coordinate length mismatch (dim_g = " +
              std::to_string(g.dim_g) + ", got " + std::to_string(x.size()) + ", " +
              std::to_string(y.size()) + ")");
  return x.dot(g.metric * y);
}

Eigen::VectorXd bracket(const LieAlgebraSpec& g, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) {
  require(x.size() == g.dim_g && y.size() == g.dim_g, kMod,
          "bracket: coordinate length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.dim_g);
  const int d = g.dim_g;
  for (int i = 0; i < d; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      if (y(j) == 0.0) continue;
      const double xy = x(i) * y(j);
      for (int k = 0; k < d; ++k) out(k) += xy * g.c[(i * d + j) * d + k];
    }
  }
  return out;
}

Eigen::MatrixXd ad_matrix(const LieAlgebraSpec& g, const Eigen::VectorXd& x) {
  require(x.size() == g.dim_g, kMod, "ad_matrix: coordinate length mismatch");
  const int d = g.dim_g;
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += x(i) * g.c[(i * d + j) * d + k];
      ad(k, j) = s;
    }
  return ad;
}

Eigen::MatrixXd casimir_contract(const LieAlgebraSpec& g) {
  const int d = g.dim_g;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l) {
      double s = 0.0;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          s += g.c[(i * d + j) * d + k] * g.c[(l * d + j) * d + k];
      m(i, l) = s;
    }
  return m;
}

double antisymmetry_residual(const LieAlgebraSpec& g) {
  const int d = g.dim_g;
  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        r = std::max(r, std::abs(g.cc(i, j, k) + g.cc(j, i, k)));
  return r;
}

double total_antisymmetry_residual(const LieAlgebraSpec& g) {
  // c fully antisymmetric as a 3-tensor; meaningful in nearly-orthonormal
  // bases where all three slots live in the same metric.
  const int d = g.dim_g;
  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        r = std::max(r, std::abs(g.cc(i, j, k) + g.cc(j, i, k)));
        r = std::max(r, std::abs(g.cc(i, j, k) + g.cc(i, k, j)));
      }
  return r;
}

double jacobi_residual(const LieAlgebraSpec& g) {
  const int d = g.dim_g;
  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            s += g.cc(i, j, l) * g.cc(l, k, m);
            s += g.cc(j, k, l) * g.cc(l, i, m);
            s += g.cc(k, i, l) * g.cc(l, j, m);
          }
          r = std::max(r, std::abs(s));
        }
  return r;
}

Eigen::VectorXd expand_in_basis(const LieAlgebraSpec& g, const Eigen::MatrixXcd& m) {
  Eigen::VectorXd rhs(g.dim_g);
  for (int k = 0; k < g.dim_g; ++k) rhs(k) = (g.basis[k].adjoint() * m).trace().real();
  return g.gram_inv * rhs;
}

double expansion_defect(const LieAlgebraSpec& g, const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd back = to_matrix(g, expand_in_basis(g, m));
  return (m - back).norm();
}

Eigen::MatrixXcd to_matrix(const LieAlgebraSpec& g, const Eigen::VectorXd& x) {
  require(x.size() == g.dim_g, kMod, "to_matrix: coordinate length mismatch");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(g.rep_n, g.rep_n);
  for (int i = 0; i < g.dim_g; ++i) m += x(i) * g.basis[i];
  return m;
}

}  // namespace ymgap::lie
