#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace ymgap::fock {

using cd = std::complex<double>;

// Monomial key zbar^a z^b over M modes. Ordering is lexicographic so map
// iteration (and hence every report) is deterministic.
struct MonoKey {
  std::vector<std::uint16_t> zbar, z;
  bool operator<(const MonoKey& o) const {
    if (zbar != o.zbar) return zbar < o.zbar;
    return z < o.z;
  }
  bool operator==(const MonoKey& o) const { return zbar == o.zbar && z == o.z; }
};

// Sparse polynomial in commuting variables (z_1..z_M, zbar_1..zbar_M).
// Used both as classical phase-space function and as quantization input;
// the ordering of ladder operators is chosen at quantization time, not
// here.
class PolynomialSymbol {
 public:
  PolynomialSymbol() = default;
  explicit PolynomialSymbol(int modes) : modes_(modes) {}

  int modes() const { return modes_; }
  const std::map<MonoKey, cd>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const MonoKey& k, cd coeff);
  void add(const std::vector<int>& zbar_exp, const std::vector<int>& z_exp, cd coeff);
  void add_const(cd coeff);

  int degree() const;                 // max |a| + |b|, 0 for empty
  double max_abs() const;
  cd constant_term() const;

  PolynomialSymbol& operator+=(const PolynomialSymbol& o);
  PolynomialSymbol& operator*=(cd s);
  friend PolynomialSymbol operator+(PolynomialSymbol a, const PolynomialSymbol& b) {
    a += b;
    return a;
  }
  friend PolynomialSymbol operator*(cd s, PolynomialSymbol a) {
    a *= s;
    return a;
  }
  PolynomialSymbol multiply(const PolynomialSymbol& o) const;
  PolynomialSymbol pow(int p) const;

  // Swap z <-> zbar with conjugated coefficients; fixed points of this map
  // are exactly the symbols that are real on the diagonal zbar = conj(z).
  PolynomialSymbol conj_transpose() const;
  double real_on_diagonal_defect() const;

  // Part of total degree exactly d / at most d.
  PolynomialSymbol degree_part(int d) const;
  PolynomialSymbol truncate_degree(int d) const;

  // Evaluate with zbar = conj(z) (diagonal) or with independent arguments.
  cd evaluate(const Eigen::VectorXcd& z) const;
  cd evaluate(const Eigen::VectorXcd& zbar, const Eigen::VectorXcd& z) const;

  // Drops terms with |coeff| <= eps (absolute).
  void prune(double eps);

 private:
  int modes_ = 0;
  std::map<MonoKey, cd> terms_;
};

// One application of the contraction sum_m d/dzbar_m d/dz_m.
PolynomialSymbol contract_once(const PolynomialSymbol& p);

// exp(s * sum_m d/dzbar_m d/dz_m), exact on polynomials (the series
// terminates); heat_transform(heat_transform(p, s), -s) == p identically.
PolynomialSymbol heat_transform(const PolynomialSymbol& p, double s);

// Coordinate symbols: z_m, zbar_m, and the real pair
// a_m = (z_m + zbar_m)/sqrt(2), e_m = -i (z_m - zbar_m)/sqrt(2).
PolynomialSymbol symbol_z(int m, int modes);
PolynomialSymbol symbol_zbar(int m, int modes);
PolynomialSymbol symbol_a(int m, int modes);
PolynomialSymbol symbol_e(int m, int modes);

}  // namespace ymgap::fock
