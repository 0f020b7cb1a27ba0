#pragma once

#include <vector>

#include "wbench/diffalg/diffpoly.hpp"

namespace wb {

// sum_k A_k d_x^k with A_k differential polynomials.
class DiffOperator {
public:
  DiffOperator() = default;
  explicit DiffOperator(DiffPoly a0) { set(0, std::move(a0)); }
  static DiffOperator dx(int k = 1);

  int order() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const DiffPoly& coeff(int k) const;
  void set(int k, DiffPoly a);
  void add(int k, const DiffPoly& a);
  const std::vector<DiffPoly>& coeffs() const { return c_; }

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator& operator*=(const FieldScalar& s);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(DiffOperator a, const FieldScalar& s) { return a *= s; }
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.c_ == b.c_; }
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

  // Left multiplication by a function.
  DiffOperator times(const DiffPoly& f) const;
  DiffPoly apply(const DiffPoly& f) const;
  DiffOperator compose(const DiffOperator& b) const;
  DiffOperator adjoint() const;

  // Coefficientwise maps.
  template <class F>
  DiffOperator map(F&& fn) const {
    DiffOperator r;
    for (int k = 0; k <= order(); ++k) r.set(k, fn(c_[k]));
    return r;
  }

  std::string str(const Symbols& names) const;

private:
  void trim();
  std::vector<DiffPoly> c_;
};

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b);
DiffOperator op_adjoint(const DiffOperator& a);

// Row L_v = sum_k dp/du_v^{(k)} d_x^k for v = 0..nvars-1.
std::vector<DiffOperator> frechet(const DiffPoly& p, int nvars);

long long binomial(int n, int k);

}  // namespace wb
