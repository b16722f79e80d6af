#include "ymgap/propagator.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace ymgap;
using namespace ymgap::prop;
using fock::cd;
using fock::FockBasis;
using fock::PolynomialSymbol;

namespace {

// ---- Independent oracles, written before anything they check. ----

// Free-mode amplitude in closed form: the anti-Wick number operator carries
// the +1 ordering shift, so the phase picks up one extra quantum.
cd free_amplitude(double omega, double t, cd z0, cd zt) {
  cd rot = std::exp(cd(0.0, -omega * t));
  return std::exp(std::conj(zt) * z0 * rot) * rot;
}

// Exact one-mode Toeplitz integral of exp(-i tau omega |z|^2): diagonal
// (1 + i omega tau)^{-(n+1)}, from the Gamma integral in u = |z|^2.
cd free_step_diag(double omega, double tau, int n) {
  return std::pow(cd(1.0, omega * tau), -(n + 1.0));
}

// Series matrix exponential with scaling and squaring, independent of any
// eigendecomposition.
Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a) {
  int s = 0;
  double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.5 && s < 40) {
    nrm /= 2.0;
    ++s;
  }
  Eigen::MatrixXcd b = a / std::pow(2.0, s);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd term = out;
  for (int k = 1; k <= 24; ++k) {
    term = term * b / static_cast<double>(k);
    out += term;
  }
  for (int k = 0; k < s; ++k) out = out * out;
  return out;
}

PolynomialSymbol number_symbol(double omega, int modes, int mode) {
  PolynomialSymbol s(modes);
  s += omega * fock::symbol_zbar(mode, modes).multiply(fock::symbol_z(mode, modes));
  return s;
}

PolynomialSymbol hermitize(const PolynomialSymbol& s) {
  return 0.5 * (s + s.conj_transpose());
}

double safe_block_svmax(const SpMat& m, const FockBasis& b, int degree) {
  Eigen::MatrixXcd blk = fock::dense_block(m, b.safe_block(degree));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(blk);
  return svd.singularValues()(0);
}

Eigen::VectorXcd label1(cd z) {
  Eigen::VectorXcd v(1);
  v[0] = z;
  return v;
}

}  // namespace

TEST_CASE("gauss-hermite toeplitz integral matches the combinatorial quantizer") {
  FockBasis b = FockBasis::build(1, 6);
  std::vector<std::vector<int>> zb = {{2, 0}, {1, 1}, {0, 2}, {1, 0}, {2, 2}};
  PolynomialSymbol sym(1);
  sym.add(std::vector<int>{2}, std::vector<int>{0}, cd(0.3, 0.1));
  sym.add(std::vector<int>{1}, std::vector<int>{1}, cd(1.1, 0.0));
  sym.add(std::vector<int>{2}, std::vector<int>{2}, cd(0.2, 0.0));
  sym.add_const(cd(0.4, 0.0));
  sym = hermitize(sym);

  SpMat quad = quantize_antiwick_quadrature(sym, b, (sym.degree() + 2 * b.n_max) / 2 + 1);
  SpMat comb = fock::quantize_antiwick(sym, b);
  auto safe = b.safe_block(sym.degree());
  Eigen::MatrixXcd dq = fock::dense_block(quad, safe);
  Eigen::MatrixXcd dc = fock::dense_block(comb, safe);
  CHECK((dq - dc).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, dq.cwiseAbs().maxCoeff()));

  // above the safe block the two semantics differ by design: the integral is
  // the full Toeplitz compression, the ladder product truncates at the top
  PolynomialSymbol num = number_symbol(1.0, 1, 0);
  SpMat qn_quad = quantize_antiwick_quadrature(num, b, (2 + 2 * b.n_max) / 2 + 1);
  Eigen::MatrixXcd top = fock::to_dense(qn_quad);
  CHECK(std::abs(top(b.n_max, b.n_max) - cd(b.n_max + 1.0, 0.0)) <= 1e-10);
  Eigen::MatrixXcd topc = fock::to_dense(fock::quantize_antiwick(num, b));
  CHECK(std::abs(topc(b.n_max, b.n_max)) == 0.0);

  // two-mode agreement on the safe block
  FockBasis b2 = FockBasis::build(2, 4);
  PolynomialSymbol s2(2);
  s2.add(std::vector<int>{1, 0}, std::vector<int>{0, 1}, cd(0.4, 0.2));
  s2.add(std::vector<int>{1, 0}, std::vector<int>{1, 0}, cd(0.9, 0.0));
  s2 = hermitize(s2);
  SpMat quad2 = quantize_antiwick_quadrature(s2, b2, (s2.degree() + 2 * b2.n_max) / 2 + 1);
  SpMat comb2 = fock::quantize_antiwick(s2, b2);
  auto safe2 = b2.safe_block(s2.degree());
  Eigen::MatrixXcd d2q = fock::dense_block(quad2, safe2);
  Eigen::MatrixXcd d2c = fock::dense_block(comb2, safe2);
  CHECK((d2q - d2c).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, d2q.cwiseAbs().maxCoeff()));

  CHECK_THROWS(quantize_antiwick_quadrature(sym, b, 3));  // below exactness threshold
  FockBasis b3 = FockBasis::build(3, 2);
  CHECK_THROWS(quantize_antiwick_quadrature(PolynomialSymbol(3), b3, 8));  // three modes
}

TEST_CASE("chernoff step: identity limits, consistency, contraction") {
  FockBasis b = FockBasis::build(1, 8);
  PolynomialSymbol h = number_symbol(1.3, 1, 0);

  // zero symbol and zero time both give the identity exactly
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(b.dim(), b.dim());
  CHECK((fock::to_dense(chernoff_step(PolynomialSymbol(1), 0.3, b, 2)) - id)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((fock::to_dense(chernoff_step(h, 0.0, b, 4)) - id).cwiseAbs().maxCoeff() == 0.0);

  // small-step agreement with the exponential of the quantized Hamiltonian,
  // second order in tau: quartering the step quarters the defect
  SpMat hq = fock::quantize_antiwick(h, b);
  auto safe = b.safe_block(h.degree());
  auto defect = [&](double tau) {
    Eigen::MatrixXcd st = fock::dense_block(chernoff_step(h, tau, b, 6), safe);
    Eigen::MatrixXcd ex =
        expm_series(cd(0.0, -tau) * fock::dense_block(hq, safe));
    return (st - ex).cwiseAbs().maxCoeff();
  };
  double d1 = defect(0.01), d2 = defect(0.005);
  CHECK(d1 <= 1e-3);
  CHECK(d1 / d2 >= 3.0);
  CHECK(d1 / d2 <= 5.0);

  // consistency: the tau-derivative at zero is -i times the quantization
  Eigen::MatrixXcd gen = cd(0.0, -1.0) * fock::dense_block(hq, safe);
  auto fd = [&](double tau) {
    Eigen::MatrixXcd st = fock::dense_block(chernoff_step(h, tau, b, 6), safe);
    Eigen::MatrixXcd idb = Eigen::MatrixXcd::Identity(st.rows(), st.cols());
    return ((st - idb) / tau - gen).cwiseAbs().maxCoeff();
  };
  double f1 = fd(1e-3), f2 = fd(5e-4);
  CHECK(f1 / f2 >= 1.7);
  CHECK(f1 / f2 <= 2.3);

  // contraction on the safe block, inside the small-step region where the
  // Taylor remainder of the step symbol is controlled
  for (double tau : {0.02, 0.05, 0.1})
    CHECK(safe_block_svmax(chernoff_step(h, tau, b, 6), b, h.degree()) <= 1.0 + 10.0 * tau * tau);

  // independent quadrature path: diagonal matches the closed-form Toeplitz
  // integral of the free kernel, and the operator is a strict contraction
  double tau = 0.05;
  SpMat qstep = chernoff_step_quadrature(h, tau, b, 16);
  Eigen::MatrixXcd qd = fock::to_dense(qstep);
  for (int n = 0; n <= b.n_max; ++n)
    CHECK(std::abs(qd(n, n) - free_step_diag(1.3, tau, n)) <= 1e-9);
  for (int r = 0; r <= b.n_max; ++r)
    for (int c = 0; c <= b.n_max; ++c)
      if (r != c) CHECK(std::abs(qd(r, c)) <= 1e-10);
  CHECK(safe_block_svmax(qstep, b, h.degree()) <= 1.0 + 1e-8);

  // the two step constructions agree to the Taylor remainder, on the block
  // the step polynomial can reach without clipping at n_max; the basis caps
  // the usable expansion degree at n_max / deg(h) = 4, so the leading
  // disagreement is the fifth-order term (about 2e-5 here)
  auto deep = b.safe_block(6);
  Eigen::MatrixXcd tstep = fock::dense_block(chernoff_step(h, tau, b, 6), deep);
  Eigen::MatrixXcd qsb = fock::dense_block(qstep, deep);
  CHECK((tstep - qsb).cwiseAbs().maxCoeff() <= 1e-4);

  CHECK_THROWS(chernoff_step_quadrature(h, 2.0, b, 2));  // order insufficient
  CHECK_THROWS(chernoff_step(h, 3.0, b, 4));             // step too large for the series
}

TEST_CASE("free mode amplitude converges to the closed form") {
  FockBasis b = FockBasis::build(1, 16);
  double omega = 1.1, t = 0.006;
  cd z0(0.5, 0.2), zt(0.3, -0.4);
  PolynomialSymbol h = number_symbol(omega, 1, 0);
  cd closed = free_amplitude(omega, t, z0, zt);

  PropagationConfig cfg;
  cfg.t = t;
  cfg.n_steps = 64;
  cfg.quadrature = 8;
  PropagationResult res = propagate(h, label1(z0), label1(zt), cfg, b);
  CHECK(std::abs(res.amplitude - closed) <= 1e-6 * std::abs(closed));
  CHECK(res.tail_bound >= 0.0);
  CHECK(res.tail_bound <= 1e-12);

  // doubling the step count halves the error
  std::vector<double> errs;
  for (int n : {8, 16, 32, 64}) {
    cfg.n_steps = n;
    errs.push_back(std::abs(propagate(h, label1(z0), label1(zt), cfg, b).amplitude - closed));
  }
  for (size_t i = 0; i + 1 < errs.size(); ++i) {
    double ratio = errs[i] / errs[i + 1];
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.3);
  }

  // zero Hamiltonian reproduces the coherent overlap
  cfg.n_steps = 4;
  cfg.quadrature = 1;
  cd overlap = propagate(PolynomialSymbol(1), label1(z0), label1(zt), cfg, b).amplitude;
  cd want = std::exp(std::conj(zt) * z0);
  CHECK(std::abs(overlap - want) <= 1e-12 * std::abs(want));

  // bit-reproducibility
  cfg.n_steps = 16;
  cfg.quadrature = 8;
  cd a1 = propagate(h, label1(z0), label1(zt), cfg, b).amplitude;
  cd a2 = propagate(h, label1(z0), label1(zt), cfg, b).amplitude;
  CHECK(a1 == a2);

  // guards: label region, step count, quadrature below symbol degree
  CHECK_THROWS(propagate(h, label1(cd(2.0, 0.0)), label1(zt), cfg, b));
  PropagationConfig bad = cfg;
  bad.n_steps = 0;
  CHECK_THROWS(propagate(h, label1(z0), label1(zt), bad, b));
  bad = cfg;
  bad.quadrature = 1;
  CHECK_THROWS(propagate(h, label1(z0), label1(zt), bad, b));
}

TEST_CASE("exact amplitude: closed form, series oracle, unitarity") {
  FockBasis b = FockBasis::build(1, 16);
  double omega = 1.1, t = 0.7;
  cd z0(0.5, 0.2), zt(0.3, -0.4);
  SpMat hq = fock::quantize_antiwick(number_symbol(omega, 1, 0), b);

  cd amp = exact_amplitude(hq, label1(z0), label1(zt), t, b);
  cd closed = free_amplitude(omega, t, z0, zt);
  CHECK(std::abs(amp - closed) <= 1e-10 * std::abs(closed));

  // t = 0 collapses to the coherent overlap
  cd at0 = exact_amplitude(hq, label1(z0), label1(zt), 0.0, b);
  Eigen::VectorXcd c0 = fock::coherent_vector({z0}, b);
  Eigen::VectorXcd ct = fock::coherent_vector({zt}, b);
  CHECK(std::abs(at0 - ct.dot(c0)) <= 1e-13 * std::abs(at0));

  // independent scaling-and-squaring oracle on a random anharmonic operator
  FockBasis bs = FockBasis::build(1, 10);
  PolynomialSymbol anh(1);
  anh.add(std::vector<int>{1}, std::vector<int>{1}, cd(1.0, 0.0));
  anh.add(std::vector<int>{2}, std::vector<int>{2}, cd(0.25, 0.0));
  anh.add(std::vector<int>{2}, std::vector<int>{0}, cd(0.1, 0.05));
  anh = hermitize(anh);
  SpMat aq = fock::quantize_antiwick(anh, bs);
  double ts = 0.3;
  cd via_eig = exact_amplitude(aq, label1(z0), label1(zt), ts, bs);
  Eigen::MatrixXcd u = expm_series(cd(0.0, -ts) * fock::to_dense(aq));
  Eigen::VectorXcd cs0 = fock::coherent_vector({z0}, bs);
  Eigen::VectorXcd cst = fock::coherent_vector({zt}, bs);
  cd via_series = cst.dot(u * cs0);
  CHECK(std::abs(via_eig - via_series) <= 1e-10 * std::abs(via_eig));

  // unitary evolution never beats the state norm
  for (double tt : {0.1, 0.9, 2.3}) {
    cd diag = exact_amplitude(hq, label1(z0), label1(z0), tt, b);
    CHECK(std::abs(diag) <= c0.squaredNorm() + 1e-12);
  }

  // guards: non-hermitian operator, oversized dense dimension
  SpMat up = fock::ladder(0, true, b);
  CHECK_THROWS(exact_amplitude(up, label1(z0), label1(zt), 1.0, b));
  FockBasis big = FockBasis::build(2, 100);
  SpMat hbig(big.dim(), big.dim());
  CHECK_THROWS(exact_amplitude(hbig, Eigen::VectorXcd::Zero(2), Eigen::VectorXcd::Zero(2), 1.0,
                               big));
}

TEST_CASE("interacting two-mode pair: monotone convergence and reversal") {
  FockBasis b = FockBasis::build(2, 8);
  PolynomialSymbol h(2);
  h += number_symbol(0.9, 2, 0);
  h += number_symbol(1.2, 2, 1);
  h.add(std::vector<int>{1, 0}, std::vector<int>{0, 1}, cd(0.15, 0.0));
  h.add(std::vector<int>{0, 1}, std::vector<int>{1, 0}, cd(0.15, 0.0));
  h.add(std::vector<int>{1, 1}, std::vector<int>{1, 1}, cd(0.08, 0.0));
  h.add(std::vector<int>{2, 0}, std::vector<int>{0, 2}, cd(0.05, 0.0));
  h.add(std::vector<int>{0, 2}, std::vector<int>{2, 0}, cd(0.05, 0.0));
  CHECK(h.real_on_diagonal_defect() <= 1e-14);

  Eigen::VectorXcd z0(2), zt(2);
  z0 << cd(0.4, 0.1), cd(-0.2, 0.3);
  zt << cd(0.1, -0.3), cd(0.35, 0.0);
  double t = 0.3;

  ConvergenceStudy study = convergence_study(h, z0, zt, t, {4, 8, 16, 32, 64}, 4, b);
  REQUIRE(study.rows.size() == 5);
  for (size_t i = 0; i + 1 < study.rows.size(); ++i)
    CHECK(study.rows[i].error > study.rows[i + 1].error);
  CHECK(study.empirical_order >= 0.7);
  CHECK(study.empirical_order <= 1.3);

  // reversal: forward and backward step defects add on a different matrix
  // element than the one-way comparison; the measured ratio settles at 3.0
  // (stable over N = 16..64), pinned with margin
  int n = 16;
  double tau = t / n;
  SpMat fwd = chernoff_step(h, tau, b, 4);
  SpMat bwd = chernoff_step(h, -tau, b, 4);
  Eigen::VectorXcd v = fock::coherent_vector({z0[0], z0[1]}, b);
  Eigen::VectorXcd w = v;
  for (int j = 0; j < n; ++j) w = fwd * w;
  for (int j = 0; j < n; ++j) w = bwd * w;
  cd round_trip = v.dot(w);
  PropagationConfig cfg;
  cfg.t = t;
  cfg.n_steps = n;
  cfg.quadrature = 4;
  cd exact = exact_amplitude(fock::quantize_antiwick(h, b), z0, zt, t, b);
  double one_way = std::abs(propagate(h, z0, zt, cfg, b).amplitude - exact);
  CHECK(std::abs(round_trip - v.squaredNorm()) <= 3.5 * one_way + 1e-12);
}

TEST_CASE("convergence study: csv shape, first order, one-step consistency") {
  FockBasis b = FockBasis::build(1, 12);
  PolynomialSymbol h = number_symbol(1.0, 1, 0);
  cd z0(0.5, 0.2), zt(0.3, -0.4);

  ConvergenceStudy study = convergence_study(h, label1(z0), label1(zt), 0.2, {8, 16, 32, 64}, 6, b);
  CHECK(study.empirical_order >= 0.8);
  CHECK(study.empirical_order <= 1.2);
  for (const ConvergenceRow& row : study.rows) {
    CHECK(row.error > 0.0);
    CHECK(std::isfinite(row.action.real()));
    CHECK(std::isfinite(row.action.imag()));
  }

  std::string csv = convergence_csv(study);
  CHECK(csv.rfind("n_steps,error,amplitude_re,amplitude_im,action_re,action_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  ConvergenceStudy again =
      convergence_study(h, label1(z0), label1(zt), 0.2, {8, 16, 32, 64}, 6, b);
  CHECK(convergence_csv(again) == csv);

  // a zero Hamiltonian freezes the mean path: the logged action vanishes
  ConvergenceStudy frozen = convergence_study(PolynomialSymbol(1), label1(z0), label1(zt), 0.2,
                                              {4}, 1, b);
  CHECK(std::abs(frozen.rows[0].action) <= 1e-14);
  CHECK(frozen.rows[0].error <= 1e-14);

  // one-step error is second order in total time
  std::vector<double> one_step;
  for (double tt : {0.2, 0.1, 0.05}) {
    PropagationConfig cfg;
    cfg.t = tt;
    cfg.n_steps = 1;
    cfg.quadrature = 6;
    cd amp = propagate(h, label1(z0), label1(zt), cfg, b).amplitude;
    cd exact = exact_amplitude(fock::quantize_antiwick(h, b), label1(z0), label1(zt), tt, b);
    one_step.push_back(std::abs(amp - exact));
  }
  for (size_t i = 0; i + 1 < one_step.size(); ++i) {
    double ratio = one_step[i] / one_step[i + 1];
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }
}
