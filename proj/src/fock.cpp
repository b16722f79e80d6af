#include "ymgap/fock.hpp"

#include <cmath>
#include <string>

#include "ymgap/util.hpp"

namespace ymgap::fock {

namespace {

const std::string kMod = "fock";
using cd = std::complex<double>;
using Triplet = Eigen::Triplet<cd>;

// Factorials as doubles; exact through 22!, adequate to rounding far beyond.
std::vector<double> factorials(int up_to) {
  std::vector<double> f(static_cast<size_t>(up_to) + 1, 1.0);
  for (int k = 1; k <= up_to; ++k) f[k] = f[k - 1] * static_cast<double>(k);
  return f;
}

void emit_compositions(int mode, int remaining, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
  int modes = static_cast<int>(cur.size());
  if (mode == modes - 1) {
    cur[mode] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[mode] = k;
    emit_compositions(mode + 1, remaining - k, cur, out);
  }
}

void check_symbol(const PolynomialSymbol& sym, const FockBasis& b) {
  require(sym.modes() == b.modes, kMod,
                "symbol has " + std::to_string(sym.modes()) + " modes, basis has " +
                    std::to_string(b.modes));
  require(sym.degree() <= b.n_max, kMod,
                "symbol degree " + std::to_string(sym.degree()) +
                    " exceeds the basis cutoff " + std::to_string(b.n_max));
}

int total(const std::vector<std::uint16_t>& v) {
  int t = 0;
  for (auto x : v) t += x;
  return t;
}

SpMat from_triplets(const std::vector<Triplet>& trips, int dim) {
  SpMat m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

Eigen::MatrixXcd exp_nilpotent(const Eigen::MatrixXcd& a, int max_power) {
  int d = static_cast<int>(a.rows());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(d, d);
  for (int k = 1; k <= max_power; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

}  // namespace

FockBasis FockBasis::build(int modes, int n_max) {
  require(modes >= 1 && modes <= 64, kMod,
                "mode count must be in [1, 64], got " + std::to_string(modes));
  require(n_max >= 0 && n_max <= 160, kMod,
                "grade cutoff must be in [0, 160], got " + std::to_string(n_max));
  FockBasis b;
  b.modes = modes;
  b.n_max = n_max;
  std::vector<int> cur(static_cast<size_t>(modes), 0);
  for (int t = 0; t <= n_max; ++t) emit_compositions(0, t, cur, b.occ);
  b.grades.reserve(b.occ.size());
  for (size_t i = 0; i < b.occ.size(); ++i) {
    int g = 0;
    for (int x : b.occ[i]) g += x;
    b.grades.push_back(g);
    b.index_[b.occ[i]] = static_cast<int>(i);
  }
  return b;
}

int FockBasis::index_of(const std::vector<int>& occupation) const {
  auto it = index_.find(occupation);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> FockBasis::safe_block(int degree) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (grades[i] <= n_max - degree) out.push_back(i);
  return out;
}

SpMat ladder(int mode, bool create, const FockBasis& b) {
  require(mode >= 0 && mode < b.modes, kMod,
                "ladder mode " + std::to_string(mode) + " out of range");
  std::vector<Triplet> trips;
  std::vector<int> target;
  for (int q = 0; q < b.dim(); ++q) {
    target = b.occ[q];
    if (create) {
      target[mode] += 1;
      int p = b.index_of(target);
      if (p >= 0) trips.emplace_back(p, q, cd(std::sqrt(static_cast<double>(target[mode])), 0.0));
    } else if (target[mode] >= 1) {
      double amp = std::sqrt(static_cast<double>(target[mode]));
      target[mode] -= 1;
      trips.emplace_back(b.index_of(target), q, cd(amp, 0.0));
    }
  }
  return from_triplets(trips, b.dim());
}

Eigen::VectorXcd coherent_vector(const std::vector<std::complex<double>>& z, const FockBasis& b) {
  require(static_cast<int>(z.size()) == b.modes, kMod,
                "coherent point has wrong mode count");
  auto fact = factorials(b.n_max);
  Eigen::VectorXcd v(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    cd c(1.0, 0.0);
    for (int m = 0; m < b.modes; ++m) {
      int n = b.occ[i][m];
      for (int k = 0; k < n; ++k) c *= z[m];
      c /= std::sqrt(fact[n]);
    }
    v[i] = c;
  }
  return v;
}

namespace {
// Product of the integers in (lo, hi], exact in double well past the basis cap.
double rising(int lo, int hi) {
  double r = 1.0;
  for (int k = lo + 1; k <= hi; ++k) r *= k;
  return r;
}
}  // namespace

SpMat quantize_normal(const PolynomialSymbol& sym, const FockBasis& b) {
  check_symbol(sym, b);
  std::vector<Triplet> trips;
  std::vector<int> p(static_cast<size_t>(b.modes), 0);
  for (const auto& [key, coef] : sym.terms()) {
    for (int q = 0; q < b.dim(); ++q) {
      const auto& occ = b.occ[q];
      double amp_sq = 1.0;
      bool ok = true;
      for (int m = 0; m < b.modes; ++m) {
        int beta = key.z[m], alpha = key.zbar[m];
        if (occ[m] < beta) {
          ok = false;
          break;
        }
        p[m] = occ[m] - beta + alpha;
        // q!/(q-beta)! from the annihilators times p!/(p-alpha)! from the
        // creators, square-rooted once so perfect squares stay exact.
        amp_sq *= rising(occ[m] - beta, occ[m]) * rising(occ[m] - beta, p[m]);
      }
      if (!ok) continue;
      int row = b.index_of(p);
      if (row >= 0) trips.emplace_back(row, q, coef * std::sqrt(amp_sq));
    }
  }
  return from_triplets(trips, b.dim());
}

SpMat quantize_antiwick(const PolynomialSymbol& sym, const FockBasis& b) {
  check_symbol(sym, b);
  std::vector<Triplet> trips;
  std::vector<int> p(static_cast<size_t>(b.modes), 0);
  for (const auto& [key, coef] : sym.terms()) {
    int raise = total(key.zbar);
    for (int q = 0; q < b.dim(); ++q) {
      // Creators act first; the intermediate state must itself fit under the
      // cutoff, which is what makes this the truncated-product composition.
      if (b.grade(q) + raise > b.n_max) continue;
      const auto& occ = b.occ[q];
      double amp_sq = 1.0;
      bool ok = true;
      for (int m = 0; m < b.modes; ++m) {
        int alpha = key.zbar[m], beta = key.z[m];
        int mid = occ[m] + alpha;
        if (mid < beta) {
          ok = false;
          break;
        }
        p[m] = mid - beta;
        // mid! / sqrt(q! p!) as one square root of (mid!/q!)(mid!/p!).
        amp_sq *= rising(occ[m], mid) * rising(p[m], mid);
      }
      if (!ok) continue;
      int row = b.index_of(p);
      if (row >= 0) trips.emplace_back(row, q, coef * std::sqrt(amp_sq));
    }
  }
  return from_triplets(trips, b.dim());
}

Eigen::MatrixXcd to_dense(const SpMat& m) {
  require(m.rows() <= 4096 && m.cols() <= 4096, kMod,
                "dense conversion refused for dimension " + std::to_string(m.rows()));
  return Eigen::MatrixXcd(m);
}

Eigen::MatrixXcd dense_block(const SpMat& m, const std::vector<int>& indices) {
  int k = static_cast<int>(indices.size());
  require(k <= 4096, kMod, "dense block refused for dimension " + std::to_string(k));
  std::vector<int> inv(static_cast<size_t>(m.rows()), -1);
  for (int i = 0; i < k; ++i) {
    require(indices[i] >= 0 && indices[i] < m.rows(), kMod, "block index out of range");
    inv[indices[i]] = i;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k, k);
  for (int j = 0; j < k; ++j)
    for (SpMat::InnerIterator it(m, indices[j]); it; ++it)
      if (inv[it.row()] >= 0) out(inv[it.row()], j) = it.value();
  return out;
}

KernelCheckReport kernel_check(const PolynomialSymbol& sym, const FockBasis& b,
                               const std::vector<std::vector<std::complex<double>>>& points) {
  check_symbol(sym, b);
  SpMat op = quantize_antiwick(sym, b);
  PolynomialSymbol corrected = heat_transform(sym, 1.0);
  KernelCheckReport rep;
  for (const auto& z : points) {
    require(static_cast<int>(z.size()) == b.modes, kMod,
                  "kernel sample has wrong mode count");
    double x = 0.0;
    for (auto v : z) x += std::norm(v);
    require(x <= static_cast<double>(b.n_max) / 8.0, kMod,
                  "kernel sample |z|^2 = " + format_double(x) +
                      " outside the validated region |z|^2 <= n_max / 8");
    Eigen::VectorXcd c = coherent_vector(z, b);
    Eigen::VectorXcd zv = Eigen::VectorXcd::Map(z.data(), b.modes);
    cd lhs = c.dot(op * c);
    double weight = std::exp(x);
    cd raw = sym.evaluate(zv) * weight;
    cd corr = corrected.evaluate(zv) * weight;
    rep.max_raw = std::max(rep.max_raw, std::abs(lhs - raw) / (weight + std::abs(raw)));
    rep.max_corrected =
        std::max(rep.max_corrected, std::abs(lhs - corr) / (weight + std::abs(corr)));
    ++rep.samples;
  }
  return rep;
}

double weyl_relation_check(const std::vector<std::complex<double>>& z, const FockBasis& b) {
  require(static_cast<int>(z.size()) == b.modes, kMod,
                "displacement point has wrong mode count");
  require(b.dim() <= 4096, kMod,
                "displacement check refused for dimension " + std::to_string(b.dim()));
  int d = b.dim();
  Eigen::MatrixXcd cz = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd az = Eigen::MatrixXcd::Zero(d, d);
  double x = 0.0;
  for (int m = 0; m < b.modes; ++m) {
    cz += z[m] * Eigen::MatrixXcd(ladder(m, true, b));
    az += std::conj(z[m]) * Eigen::MatrixXcd(ladder(m, false, b));
    x += std::norm(z[m]);
  }
  Eigen::MatrixXcd ec = exp_nilpotent(cz, b.n_max);
  Eigen::MatrixXcd ea = exp_nilpotent(az, b.n_max);
  Eigen::MatrixXcd lhs = ea * ec;
  Eigen::MatrixXcd rhs = std::exp(x) * (ec * ea);
  int cut = b.n_max / 2;
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    if (b.grade(i) > cut) continue;
    for (int j = 0; j < d; ++j) {
      if (b.grade(j) > cut) continue;
      worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
    }
  }
  return worst;
}

}  // namespace ymgap::fock
