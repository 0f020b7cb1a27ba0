#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbench/scalars/field.hpp"
#include "wbench/scalars/parse.hpp"

namespace wb {

using Symbols = std::vector<std::string>;

// Sum of c * prod_v v^{q_v} (log v)^{k_v} with c in the number field, q_v
// rational and k_v >= 0. This class is closed under +, *, d/dv and
// substitution by polynomials, so equality of two such expressions is decided
// exactly on the canonical term list.
class SymExpr {
public:
  struct Factor {
    int var = 0;
    Rational exp;
    int logp = 0;
    friend bool operator==(const Factor& a, const Factor& b) {
      return a.var == b.var && a.logp == b.logp && a.exp == b.exp;
    }
  };
  using Monomial = std::vector<Factor>;  // sorted by var, no trivial factors
  struct Term {
    Monomial mono;
    FieldScalar coeff;
  };

  SymExpr() = default;
  SymExpr(const FieldScalar& c);  // NOLINT
  SymExpr(long long n) : SymExpr(FieldScalar(n)) {}  // NOLINT
  static SymExpr var(int v);
  static SymExpr monomial(FieldScalar c, Monomial m);
  static SymExpr power(int v, const Rational& q);  // v^q
  static SymExpr log(int v);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldScalar constant_value() const;  // constant term (0 when absent)
  bool is_polynomial() const;          // nonnegative integer exponents, no logs
  int total_degree() const;            // polynomial case only
  bool depends_on(int v) const;
  int max_var() const;

  SymExpr operator-() const;
  SymExpr& operator+=(const SymExpr& o);
  SymExpr& operator-=(const SymExpr& o);
  SymExpr& operator*=(const SymExpr& o);
  SymExpr& operator*=(const FieldScalar& c);
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(SymExpr a, const FieldScalar& c) { return a *= c; }
  friend SymExpr operator*(const FieldScalar& c, SymExpr a) { return a *= c; }
  friend bool operator==(const SymExpr& a, const SymExpr& b);
  friend bool operator!=(const SymExpr& a, const SymExpr& b) { return !(a == b); }

  SymExpr pow(int n) const;
  // Division by a single-term expression without logarithms.
  SymExpr div_monomial(const SymExpr& m) const;

  SymExpr diff(int v) const;

  // Replace variable v by e. Non-integer or negative powers of v need e to be a
  // single term whose coefficient power stays in the field.
  SymExpr substitute(int v, const SymExpr& e) const;
  SymExpr substitute_all(const std::vector<SymExpr>& images) const;

  // Principal-branch numeric value; throws DomainError at poles and log(0).
  std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

  std::string str(const Symbols& names) const;
  nlohmann::json to_json(const Symbols& names) const;  // prefix tree
  static SymExpr from_json(const nlohmann::json& j, const Symbols& names);

  // Strings use the syntax of parse_expr; unknown names are an error.
  static SymExpr parse(std::string_view text, const Symbols& names);
  static SymExpr from_tree(const ExprNode& e, const Symbols& names);

  // Coefficients of powers of v when the expression is polynomial in v.
  std::vector<SymExpr> coefficients_in(int v) const;

private:
  void normalize();
  std::vector<Term> terms_;
};

bool monomial_less(const SymExpr::Monomial& a, const SymExpr::Monomial& b);

// |e1 - e2| <= tol (1 + |e1|) at every sample point; points where either side
// throws a domain error are skipped, and all-skipped is an error.
bool sym_equal_sampled(const SymExpr& e1, const SymExpr& e2,
                       const std::vector<std::vector<std::complex<double>>>& points, double tol);

}  // namespace wb
