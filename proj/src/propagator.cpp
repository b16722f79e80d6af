#include "ymgap/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ymgap/util.hpp"

namespace ymgap::prop {

namespace {

const char* kMod = "propagator";

// Golub-Welsch nodes and weights for the weight exp(-x^2) on the line.
void gauss_hermite(int order, std::vector<double>* nodes, std::vector<double>* weights) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k)
    jac(k - 1, k) = jac(k, k - 1) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  nodes->resize(order);
  weights->resize(order);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int i = 0; i < order; ++i) {
    (*nodes)[i] = eig.eigenvalues()(i);
    double v0 = eig.eigenvectors()(0, i);
    (*weights)[i] = sqrt_pi * v0 * v0;
  }
}

SpMat sparsify(const Eigen::MatrixXcd& m) {
  double top = m.cwiseAbs().maxCoeff();
  double cut = 1e-14 * std::max(1.0, top);
  std::vector<Eigen::Triplet<cd>> trips;
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > cut) trips.emplace_back(r, c, m(r, c));
  SpMat out(m.rows(), m.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

// Matrix of the Toeplitz integral against a per-node integrand value:
// out(p, q) = (1/pi^M) int f(z) z^p conj(z)^q e^{-|z|^2} / sqrt(p! q!).
template <class F>
Eigen::MatrixXcd toeplitz_quadrature_dense(F&& f, const FockBasis& b, int order) {
  const int m_count = b.modes;
  require(m_count >= 1 && m_count <= 2, kMod, "quadrature path supports one or two modes");
  require(order >= 1 && order <= 128, kMod, "quadrature order out of range");
  std::vector<double> x, w;
  gauss_hermite(order, &x, &w);

  std::vector<double> inv_sqrt_fact(b.n_max + 1);
  for (int n = 0; n <= b.n_max; ++n) inv_sqrt_fact[n] = std::exp(-0.5 * std::lgamma(n + 1.0));

  const int dim = b.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd z(m_count);
  std::vector<std::vector<cd>> zpow(m_count), zbpow(m_count);

  std::vector<int> digit(2 * m_count, 0);  // odometer over node tuples
  for (;;) {
    double wt = 1.0;
    for (int m = 0; m < m_count; ++m) {
      z[m] = cd(x[digit[2 * m]], x[digit[2 * m + 1]]);
      wt *= w[digit[2 * m]] * w[digit[2 * m + 1]] / M_PI;
    }
    cd fv = f(z) * wt;
    for (int m = 0; m < m_count; ++m) {
      zpow[m].assign(b.n_max + 1, cd(1.0, 0.0));
      zbpow[m].assign(b.n_max + 1, cd(1.0, 0.0));
      for (int k = 1; k <= b.n_max; ++k) {
        zpow[m][k] = zpow[m][k - 1] * z[m];
        zbpow[m][k] = zbpow[m][k - 1] * std::conj(z[m]);
      }
    }
    for (int q = 0; q < dim; ++q) {
      cd col = fv;
      for (int m = 0; m < m_count; ++m)
        col *= zbpow[m][b.occ[q][m]] * inv_sqrt_fact[b.occ[q][m]];
      for (int p = 0; p < dim; ++p) {
        cd elem = col;
        for (int m = 0; m < m_count; ++m)
          elem *= zpow[m][b.occ[p][m]] * inv_sqrt_fact[b.occ[p][m]];
        out(p, q) += elem;
      }
    }
    int pos = 0;
    while (pos < 2 * m_count && ++digit[pos] == order) digit[pos++] = 0;
    if (pos == 2 * m_count) break;
  }
  return out;
}

// Crude sup bound of a symbol over the coherent-tail region |z| <= sqrt(n_max).
double symbol_sup_bound(const PolynomialSymbol& sym, const FockBasis& b) {
  double r = std::sqrt(static_cast<double>(std::max(b.n_max, 1)));
  double s = 0.0;
  for (const auto& [key, c] : sym.terms()) {
    int deg = 0;
    for (size_t m = 0; m < key.z.size(); ++m) deg += key.z[m] + key.zbar[m];
    s += std::abs(c) * std::pow(r, deg);
  }
  return s;
}

Eigen::VectorXcd coherent_from(const Eigen::VectorXcd& z, const FockBasis& b) {
  std::vector<cd> zv(z.data(), z.data() + z.size());
  return fock::coherent_vector(zv, b);
}

double tail_defect(const Eigen::VectorXcd& z, const FockBasis& b) {
  double full = std::exp(z.squaredNorm());
  double kept = coherent_from(z, b).squaredNorm();
  return std::max(0.0, 1.0 - kept / full);
}

}  // namespace

SpMat chernoff_step(const PolynomialSymbol& h_sym, double tau, const FockBasis& b, int degree) {
  require(h_sym.modes() == b.modes, kMod, "symbol and basis mode counts differ");
  require(degree >= 1, kMod, "need at least first order in the step symbol");
  const int dh = std::max(h_sym.degree(), 1);
  const int j_max = std::min(degree, b.n_max / dh);
  require(j_max >= 1, kMod, "cutoff too small for one power of the energy symbol");
  require(std::abs(tau) * symbol_sup_bound(h_sym, b) < j_max + 1.0, kMod,
          "time step too large for the Taylor-truncated step symbol");

  PolynomialSymbol step(b.modes), term(b.modes);
  step.add_const(cd(1.0, 0.0));
  term.add_const(cd(1.0, 0.0));
  for (int j = 1; j <= j_max; ++j) {
    term = term.multiply(h_sym);
    term *= cd(0.0, -tau / j);
    step += term;
  }
  return fock::quantize_antiwick(step, b);
}

SpMat chernoff_step_quadrature(const PolynomialSymbol& h_sym, double tau, const FockBasis& b,
                               int order) {
  require(h_sym.modes() == b.modes, kMod, "symbol and basis mode counts differ");
  auto integrand = [&](const Eigen::VectorXcd& z) {
    return std::exp(cd(0.0, -tau) * h_sym.evaluate(z));
  };
  Eigen::MatrixXcd low = toeplitz_quadrature_dense(integrand, b, order);
  Eigen::MatrixXcd high = toeplitz_quadrature_dense(integrand, b, 2 * order);
  double dev = (high - low).cwiseAbs().maxCoeff();
  require(dev <= 1e-8 * std::max(1.0, high.cwiseAbs().maxCoeff()), kMod,
          "quadrature order insufficient: doubling the order moved the step operator");
  return sparsify(high);
}

SpMat quantize_antiwick_quadrature(const PolynomialSymbol& sym, const FockBasis& b, int order) {
  require(sym.modes() == b.modes, kMod, "symbol and basis mode counts differ");
  const int needed = (sym.degree() + 2 * b.n_max) / 2 + 1;
  require(order >= needed, kMod, "quadrature order below the polynomial exactness threshold");
  auto integrand = [&](const Eigen::VectorXcd& z) { return sym.evaluate(z); };
  return sparsify(toeplitz_quadrature_dense(integrand, b, order));
}

PropagationResult propagate(const PolynomialSymbol& h_sym, const Eigen::VectorXcd& z0,
                            const Eigen::VectorXcd& zt, const PropagationConfig& cfg,
                            const FockBasis& b) {
  require(z0.size() == b.modes && zt.size() == b.modes, kMod,
          "coherent labels must carry one entry per mode");
  require(cfg.n_steps >= 1, kMod, "need at least one step");
  require(cfg.quadrature >= std::max(1, h_sym.degree()), kMod,
          "quadrature order below the symbol degree");
  double region = b.n_max / 8.0;
  require(z0.squaredNorm() <= region && zt.squaredNorm() <= region, kMod,
          "coherent label outside the validated tail region");

  double tau = cfg.t / cfg.n_steps;
  SpMat step = chernoff_step(h_sym, tau, b, cfg.quadrature);
  Eigen::VectorXcd v = coherent_from(z0, b);
  for (int j = 0; j < cfg.n_steps; ++j) v = step * v;

  PropagationResult out;
  out.amplitude = coherent_from(zt, b).dot(v);
  out.tail_bound = std::max(tail_defect(z0, b), tail_defect(zt, b));
  return out;
}

cd exact_amplitude(const SpMat& h, const Eigen::VectorXcd& z0, const Eigen::VectorXcd& zt,
                   double t, const FockBasis& b) {
  require(h.rows() == h.cols() && h.rows() == b.dim(), kMod,
          "operator does not match the basis");
  require(b.dim() <= 4096, kMod, "dense dimension limit 4096 exceeded");
  Eigen::MatrixXcd hd = fock::to_dense(h);
  double scale = std::max(1.0, hd.cwiseAbs().maxCoeff());
  require((hd - hd.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * scale, kMod,
          "operator is not hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hd);
  Eigen::VectorXcd a = eig.eigenvectors().adjoint() * coherent_from(zt, b);
  Eigen::VectorXcd c = eig.eigenvectors().adjoint() * coherent_from(z0, b);
  cd amp(0.0, 0.0);
  for (int k = 0; k < b.dim(); ++k)
    amp += std::conj(a[k]) * std::exp(cd(0.0, -t * eig.eigenvalues()(k))) * c[k];
  return amp;
}

ConvergenceStudy convergence_study(const PolynomialSymbol& h_sym, const Eigen::VectorXcd& z0,
                                   const Eigen::VectorXcd& zt, double t,
                                   const std::vector<int>& n_list, int quadrature,
                                   const FockBasis& b) {
  require(!n_list.empty(), kMod, "need at least one step count");
  cd exact = exact_amplitude(fock::quantize_antiwick(h_sym, b), z0, zt, t, b);

  std::vector<SpMat> lower(b.modes);
  for (int m = 0; m < b.modes; ++m) lower[m] = fock::ladder(m, false, b);
  auto mean_label = [&](const Eigen::VectorXcd& psi) {
    Eigen::VectorXcd zh(b.modes);
    double nrm = psi.squaredNorm();
    for (int m = 0; m < b.modes; ++m) zh[m] = psi.dot(lower[m] * psi) / nrm;
    return zh;
  };

  ConvergenceStudy study;
  for (int n : n_list) {
    PropagationConfig cfg;
    cfg.t = t;
    cfg.n_steps = n;
    cfg.quadrature = quadrature;
    ConvergenceRow row;
    row.n_steps = n;
    row.amplitude = propagate(h_sym, z0, zt, cfg, b).amplitude;
    row.error = std::abs(row.amplitude - exact);

    double tau = t / n;
    SpMat step = chernoff_step(h_sym, tau, b, quadrature);
    Eigen::VectorXcd psi = coherent_from(z0, b);
    Eigen::VectorXcd prev = mean_label(psi);
    cd action(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      psi = step * psi;
      Eigen::VectorXcd next = mean_label(psi);
      action += (next - prev).dot(prev);
      action -= cd(0.0, tau) * h_sym.evaluate(prev);
      prev = next;
    }
    row.action = action;
    study.rows.push_back(row);
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int pts = 0;
  for (const ConvergenceRow& row : study.rows)
    if (row.error > 0.0) {
      double lx = std::log(static_cast<double>(row.n_steps));
      double ly = std::log(row.error);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++pts;
    }
  if (pts >= 2 && pts * sxx - sx * sx > 0.0)
    study.empirical_order = -(pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  return study;
}

std::string convergence_csv(const ConvergenceStudy& study) {
  std::ostringstream os;
  os << "n_steps,error,amplitude_re,amplitude_im,action_re,action_im\n";
  for (const ConvergenceRow& row : study.rows)
    os << row.n_steps << ',' << format_double(row.error) << ','
       << format_double(row.amplitude.real()) << ',' << format_double(row.amplitude.imag()) << ','
       << format_double(row.action.real()) << ',' << format_double(row.action.imag()) << '\n';
  return os.str();
}

}  // namespace ymgap::prop
