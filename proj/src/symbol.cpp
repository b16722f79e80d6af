#include "ymgap/symbol.hpp"

#include <cmath>

#include "ymgap/util.hpp"

namespace ymgap::fock {
namespace {
constexpr const char* kMod = "fock";

int key_total(const MonoKey& k) {
  int t = 0;
  for (auto v : k.zbar) t += v;
  for (auto v : k.z) t += v;
  return t;
}
}  // namespace

void PolynomialSymbol::add(const MonoKey& k, cd coeff) {
  require(static_cast<int>(k.zbar.size()) == modes_ &&
              static_cast<int>(k.z.size()) == modes_,
          kMod, "symbol monomial has wrong mode count");
  if (coeff == cd(0.0, 0.0)) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, coeff);
  } else {
    it->second += coeff;
    if (it->second == cd(0.0, 0.0)) terms_.erase(it);
  }
}

void PolynomialSymbol::add(const std::vector<int>& zbar_exp, const std::vector<int>& z_exp,
                           cd coeff) {
  MonoKey k;
  k.zbar.assign(zbar_exp.begin(), zbar_exp.end());
  k.z.assign(z_exp.begin(), z_exp.end());
  add(k, coeff);
}

void PolynomialSymbol::add_const(cd coeff) {
  MonoKey k;
  k.zbar.assign(modes_, 0);
  k.z.assign(modes_, 0);
  add(k, coeff);
}

int PolynomialSymbol::degree() const {
  int d = 0;
  for (const auto& [k, v] : terms_) d = std::max(d, key_total(k));
  return d;
}

double PolynomialSymbol::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : terms_) m = std::max(m, std::abs(v));
  return m;
}

cd PolynomialSymbol::constant_term() const {
  MonoKey k;
  k.zbar.assign(modes_, 0);
  k.z.assign(modes_, 0);
  const auto it = terms_.find(k);
  return it == terms_.end() ? cd(0.0, 0.0) : it->second;
}

PolynomialSymbol& PolynomialSymbol::operator+=(const PolynomialSymbol& o) {
  require(modes_ == o.modes_, kMod, "symbol mode count mismatch in addition");
  for (const auto& [k, v] : o.terms_) add(k, v);
  return *this;
}

PolynomialSymbol& PolynomialSymbol::operator*=(cd s) {
  if (s == cd(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

PolynomialSymbol PolynomialSymbol::multiply(const PolynomialSymbol& o) const {
  require(modes_ == o.modes_, kMod, "symbol mode count mismatch in product");
  PolynomialSymbol out(modes_);
  for (const auto& [ka, va] : terms_) {
    for (const auto& [kb, vb] : o.terms_) {
      MonoKey k = ka;
      for (int m = 0; m < modes_; ++m) {
        k.zbar[m] = static_cast<std::uint16_t>(k.zbar[m] + kb.zbar[m]);
        k.z[m] = static_cast<std::uint16_t>(k.z[m] + kb.z[m]);
      }
      out.add(k, va * vb);
    }
  }
  return out;
}

PolynomialSymbol PolynomialSymbol::pow(int p) const {
  require(p >= 0, kMod, "symbol power must be nonnegative");
  PolynomialSymbol out(modes_);
  out.add_const(1.0);
  for (int i = 0; i < p; ++i) out = out.multiply(*this);
  return out;
}

PolynomialSymbol PolynomialSymbol::conj_transpose() const {
  PolynomialSymbol out(modes_);
  for (const auto& [k, v] : terms_) {
    MonoKey kt;
    kt.zbar = k.z;
    kt.z = k.zbar;
    out.add(kt, std::conj(v));
  }
  return out;
}

double PolynomialSymbol::real_on_diagonal_defect() const {
  PolynomialSymbol diff = conj_transpose();
  diff *= cd(-1.0, 0.0);
  diff += *this;
  return diff.max_abs();
}

PolynomialSymbol PolynomialSymbol::degree_part(int d) const {
  PolynomialSymbol out(modes_);
  for (const auto& [k, v] : terms_)
    if (key_total(k) == d) out.add(k, v);
  return out;
}

PolynomialSymbol PolynomialSymbol::truncate_degree(int d) const {
  PolynomialSymbol out(modes_);
  for (const auto& [k, v] : terms_)
    if (key_total(k) <= d) out.add(k, v);
  return out;
}

cd PolynomialSymbol::evaluate(const Eigen::VectorXcd& z) const {
  return evaluate(z.conjugate(), z);
}

cd PolynomialSymbol::evaluate(const Eigen::VectorXcd& zbar, const Eigen::VectorXcd& z) const {
  require(zbar.size() == modes_ && z.size() == modes_, kMod,
          "symbol evaluation point has wrong mode count");
  cd acc(0.0, 0.0);
  for (const auto& [k, v] : terms_) {
    cd t = v;
    for (int m = 0; m < modes_; ++m) {
      for (int p = 0; p < k.zbar[m]; ++p) t *= zbar(m);
      for (int p = 0; p < k.z[m]; ++p) t *= z(m);
    }
    acc += t;
  }
  return acc;
}

void PolynomialSymbol::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= eps)
      it = terms_.erase(it);
    else
      ++it;
  }
}

PolynomialSymbol contract_once(const PolynomialSymbol& p) {
  PolynomialSymbol out(p.modes());
  for (const auto& [k, v] : p.terms()) {
    for (int m = 0; m < p.modes(); ++m) {
      if (k.zbar[m] == 0 || k.z[m] == 0) continue;
      MonoKey r = k;
      const double factor = static_cast<double>(r.zbar[m]) * static_cast<double>(r.z[m]);
      r.zbar[m] -= 1;
      r.z[m] -= 1;
      out.add(r, factor * v);
    }
  }
  return out;
}

PolynomialSymbol heat_transform(const PolynomialSymbol& p, double s) {
  PolynomialSymbol out = p;
  PolynomialSymbol cur = p;
  for (int j = 1; !cur.empty(); ++j) {
    cur = contract_once(cur);
    cur *= cd(s / j, 0.0);
    out += cur;
  }
  return out;
}

namespace {
PolynomialSymbol one_var(int m, int modes, bool bar) {
  PolynomialSymbol p(modes);
  std::vector<int> zb(modes, 0), z(modes, 0);
  (bar ? zb : z)[m] = 1;
  p.add(zb, z, 1.0);
  return p;
}
}  // namespace

PolynomialSymbol symbol_z(int m, int modes) { return one_var(m, modes, false); }

PolynomialSymbol symbol_zbar(int m, int modes) { return one_var(m, modes, true); }

PolynomialSymbol symbol_a(int m, int modes) {
  const double w = 1.0 / std::sqrt(2.0);
  PolynomialSymbol p = symbol_z(m, modes);
  p += symbol_zbar(m, modes);
  p *= w;
  return p;
}

PolynomialSymbol symbol_e(int m, int modes) {
  const double w = 1.0 / std::sqrt(2.0);
  PolynomialSymbol p = symbol_z(m, modes);
  PolynomialSymbol q = symbol_zbar(m, modes);
  q *= cd(-1.0, 0.0);
  p += q;
  p *= cd(0.0, -w);
  return p;
}

}  // namespace ymgap::fock
