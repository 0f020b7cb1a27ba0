#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbench/diffalg/operator.hpp"
#include "wbench/liealg/matrix.hpp"

namespace wb {

using OpMat = Mat<DiffOperator>;
using PolyMat = Mat<DiffPoly>;

// {u^i(x), u^j(y)} = sum_k A^{ij}_k(u(x)) delta^{(k)}(x-y), P^{ij} = sum_k A^{ij}_k d^k.
class LocalPoissonOperator {
public:
  LocalPoissonOperator() = default;
  LocalPoissonOperator(Symbols names);
  LocalPoissonOperator(Symbols names, OpMat entries);

  int dim() const { return static_cast<int>(names_.size()); }
  const Symbols& names() const { return names_; }
  const OpMat& entries() const { return p_; }
  const DiffOperator& operator()(int i, int j) const { return p_(i, j); }
  DiffOperator& operator()(int i, int j) { return p_(i, j); }
  const DiffPoly& coeff(int i, int j, int k) const { return p_(i, j).coeff(k); }
  int max_order() const;
  bool is_zero() const { return p_.is_zero(); }

  LocalPoissonOperator operator+(const LocalPoissonOperator& o) const;
  LocalPoissonOperator operator-(const LocalPoissonOperator& o) const;
  LocalPoissonOperator operator*(const FieldScalar& s) const;
  friend bool operator==(const LocalPoissonOperator& a, const LocalPoissonOperator& b) {
    return a.names_ == b.names_ && a.p_ == b.p_;
  }
  friend bool operator!=(const LocalPoissonOperator& a, const LocalPoissonOperator& b) { return !(a == b); }

  // Map every coefficient.
  template <class F>
  LocalPoissonOperator map(F&& fn) const {
    LocalPoissonOperator r(names_);
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) r.p_(i, j) = p_(i, j).map(fn);
    return r;
  }
  LocalPoissonOperator submatrix(const std::vector<int>& idx, Symbols names) const;
  LocalPoissonOperator renamed(Symbols names) const;

  // Upper-triangle list {i, j, delta: [A_0, A_1, ...]} (1-based), lower part by skew completion.
  static LocalPoissonOperator from_bracket_list(const nlohmann::json& list, const Symbols& names);

  nlohmann::json to_json() const;
  static LocalPoissonOperator from_json(const nlohmann::json& j);
  std::string to_text() const;

private:
  Symbols names_;
  OpMat p_;
};

struct DispersionData {
  PolyMat F, Omega;
  std::vector<PolyMat> Gamma;  // Gamma[k](i,j): coefficient of u_k' delta
  std::vector<PolyMat> S;      // S[k](i,j): delta^{(k+1)} coefficient at jet weight 0, k >= 1 (S[0] unused)
  LocalPoissonOperator remainder;
};

// Part of degree d, where A_k delta^{(k)} with jet weight w has degree k + w - 1.
LocalPoissonOperator degree_part(const LocalPoissonOperator& p, int d);
DispersionData extract_dispersion(const LocalPoissonOperator& p, int max_s = 3);
LocalPoissonOperator reassemble(const DispersionData& d);
// Jet-weight-0 coefficient matrix of delta^{(k)}.
PolyMat delta_coefficient(const LocalPoissonOperator& p, int k);

OpMat adjoint(const OpMat& m);
OpMat compose(const OpMat& a, const OpMat& b);
OpMat skew_residual(const LocalPoissonOperator& p);

struct JacobiReport {
  int triples = 0;
  std::vector<std::array<int, 3>> failures;
  // Lowest dispersion degree of a nonzero Jacobiator component, -1 when none;
  // degree d collects the pairs of bracket components whose degrees sum to d.
  int lowest_degree = -1;
  bool ok() const { return failures.empty(); }
};
JacobiReport check_jacobi(const LocalPoissonOperator& p, bool stop_at_first = false);

// Evolutionary vector field with characteristics e^i.
LocalPoissonOperator lie_derivative(const LocalPoissonOperator& p, const std::vector<DiffPoly>& e);

// L P L^dagger.
LocalPoissonOperator conjugate(const LocalPoissonOperator& p, const OpMat& l, Symbols names);
// Bracket of t^a = forward[a](u), rewritten in t through u = inverse(t).
LocalPoissonOperator change_coordinates(const LocalPoissonOperator& p, const std::vector<DiffPoly>& forward,
                                        const std::vector<DiffPoly>& inverse, Symbols new_names);
// Checks that forward(inverse(t)) = t exactly.
bool maps_are_inverse(const std::vector<DiffPoly>& forward, const std::vector<DiffPoly>& inverse);

struct PencilReport {
  bool lie_v_p2_is_p1 = false;
  bool lie_v_p1_zero = false;
  bool p2_jacobi = false;
  bool p1_jacobi = false;
  std::vector<std::pair<FieldScalar, bool>> combination_jacobi;
  bool ok() const;
};
PencilReport pencil_checks(const LocalPoissonOperator& p2, const LocalPoissonOperator& p1, const std::vector<DiffPoly>& v,
                           const std::vector<FieldScalar>& lambdas = {FieldScalar(1, 3), FieldScalar(-2), FieldScalar(5, 7)});

}  // namespace wb
