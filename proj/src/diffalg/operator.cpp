#include "wbench/diffalg/operator.hpp"

#include <sstream>

namespace wb {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

DiffOperator DiffOperator::dx(int k) {
  DiffOperator r;
  r.set(k, DiffPoly(1));
  return r;
}

const DiffPoly& DiffOperator::coeff(int k) const {
  static const DiffPoly zero;
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : zero;
}

void DiffOperator::set(int k, DiffPoly a) {
  if (static_cast<int>(c_.size()) <= k) {
    if (a.is_zero()) return;
    c_.resize(k + 1);
  }
  c_[k] = std::move(a);
  trim();
}

void DiffOperator::add(int k, const DiffPoly& a) {
  if (a.is_zero()) return;
  if (static_cast<int>(c_.size()) <= k) c_.resize(k + 1);
  c_[k] += a;
  trim();
}

void DiffOperator::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) { return *this += -o; }

DiffOperator& DiffOperator::operator*=(const FieldScalar& s) {
  for (auto& a : c_) a *= s;
  trim();
  return *this;
}

DiffOperator DiffOperator::times(const DiffPoly& f) const {
  DiffOperator r;
  for (int k = 0; k <= order(); ++k) r.set(k, f * c_[k]);
  return r;
}

DiffPoly DiffOperator::apply(const DiffPoly& f) const {
  DiffPoly r, d = f;
  for (int k = 0; k <= order(); ++k) {
    if (k > 0) d = d.D();
    if (!c_[k].is_zero()) r += c_[k] * d;
  }
  return r;
}

DiffOperator DiffOperator::compose(const DiffOperator& b) const {
  // (A d^k)(B d^m) = A sum_j C(k,j) B^{(j)} d^{k-j+m}
  DiffOperator r;
  for (int m = 0; m <= b.order(); ++m) {
    if (b.c_[m].is_zero()) continue;
    DiffPoly bj = b.c_[m];
    for (int j = 0; j <= order(); ++j) {
      if (j > 0) bj = bj.D();
      if (bj.is_zero()) break;
      for (int k = j; k <= order(); ++k) {
        if (c_[k].is_zero()) continue;
        r.add(k - j + m, c_[k] * bj * FieldScalar(binomial(k, j)));
      }
    }
  }
  return r;
}

DiffOperator DiffOperator::adjoint() const {
  // (A d^k)^dagger = (-d)^k A = (-1)^k sum_j C(k,j) A^{(k-j)} d^j
  DiffOperator r;
  for (int k = 0; k <= order(); ++k) {
    if (c_[k].is_zero()) continue;
    DiffPoly a = c_[k];
    std::vector<DiffPoly> ders{a};
    for (int s = 1; s <= k; ++s) ders.push_back(ders.back().D());
    long long sign = (k % 2) ? -1 : 1;
    for (int j = 0; j <= k; ++j) r.add(j, ders[k - j] * FieldScalar(sign * binomial(k, j)));
  }
  return r;
}

std::string DiffOperator::str(const Symbols& names) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= order(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].str(names) << ")";
    if (k == 1) os << "*d";
    else if (k > 1) os << "*d^" << k;
  }
  return os.str();
}

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b) { return a.compose(b); }
DiffOperator op_adjoint(const DiffOperator& a) { return a.adjoint(); }

std::vector<DiffOperator> frechet(const DiffPoly& p, int nvars) {
  std::vector<DiffOperator> row(nvars);
  for (const auto& [vj, dp] : p.gradient()) {
    if (vj.first >= nvars) throw DomainError("frechet: variable outside the declared range");
    row[vj.first].add(vj.second, dp);
  }
  return row;
}

}  // namespace wb
