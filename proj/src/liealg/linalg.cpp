#include "wbench/liealg/matrix.hpp"

namespace wb {

Rref rref(FMat m) {
  Rref out;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(piv, j));
    FieldScalar inv = m(row, col).inverse();
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      FieldScalar f = m(i, col);
      for (int j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

int rank(const FMat& m) { return static_cast<int>(rref(m).pivots.size()); }

std::vector<std::vector<FieldScalar>> nullspace(const FMat& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldScalar>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldScalar> v(m.cols());
    v[free] = FieldScalar(1);
    for (std::size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.m(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

FMat inverse(const FMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  int n = m.rows();
  FMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = FieldScalar(1);
  }
  Rref r = rref(aug);
  if (static_cast<int>(r.pivots.size()) < n || r.pivots[n - 1] >= n) throw DomainError("singular matrix");
  FMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
  return inv;
}

FieldScalar determinant(FMat m) {
  int n = m.rows();
  FieldScalar det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return FieldScalar();
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      det = -det;
    }
    det *= m(col, col);
    FieldScalar inv = m(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      FieldScalar f = m(i, col) * inv;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::vector<std::vector<FieldScalar>> column_basis(const std::vector<std::vector<FieldScalar>>& cols) {
  if (cols.empty()) return {};
  int rows = static_cast<int>(cols[0].size());
  FMat m(rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = cols[j][i];
  std::vector<std::vector<FieldScalar>> out;
  for (int p : rref(m).pivots) out.push_back(cols[p]);
  return out;
}

FMat left_inverse(const FMat& m) {
  // Pick independent rows, invert that block, and spread it back.
  Rref rt = rref(m.transpose());
  int k = m.cols();
  if (static_cast<int>(rt.pivots.size()) < k) throw DomainError("matrix does not have full column rank");
  FMat block(k, k);
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < k; ++j) block(a, j) = m(rt.pivots[a], j);
  FMat binv = inverse(block);
  FMat l(k, m.rows());
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < k; ++a) l(i, rt.pivots[a]) = binv(i, a);
  return l;
}

}  // namespace wb
