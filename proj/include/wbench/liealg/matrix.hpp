#pragma once

#include <stdexcept>
#include <vector>

#include "wbench/scalars/field.hpp"
#include "wbench/scalars/symexpr.hpp"

namespace wb {

template <class T>
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  Mat& operator+=(const Mat& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  Mat operator-() const {
    Mat m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (is_zero_entry(x)) continue;
        for (int j = 0; j < b.c_; ++j)
          if (!is_zero_entry(b(k, j))) m(i, j) += x * b(k, j);
      }
    return m;
  }
  template <class S>
  Mat scaled(const S& s) const {
    Mat m = *this;
    for (auto& x : m.a_) x = x * s;
    return m;
  }
  template <class U, class F>
  Mat<U> map(F&& fn) const {
    Mat<U> m(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(i, j) = fn((*this)(i, j));
    return m;
  }

  Mat transpose() const {
    Mat m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  T trace() const {
    T s{};
    for (int i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!is_zero_entry(x)) return false;
    return true;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
  static bool is_zero_entry(const T& x) { return x.is_zero(); }
  void check_same(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
  return a * b - b * a;
}

using FMat = Mat<FieldScalar>;
using SymMat = Mat<SymExpr>;

// Exact Gauss-Jordan over the number field.
struct Rref {
  FMat m;
  std::vector<int> pivots;
};
Rref rref(FMat m);
int rank(const FMat& m);
std::vector<std::vector<FieldScalar>> nullspace(const FMat& m);
FMat inverse(const FMat& m);
FieldScalar determinant(FMat m);
// Independent columns among `cols` (each a vector of equal length).
std::vector<std::vector<FieldScalar>> column_basis(const std::vector<std::vector<FieldScalar>>& cols);
// L with L * m = I for a matrix of full column rank.
FMat left_inverse(const FMat& m);

}  // namespace wb
