#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "wbench/scalars/field.hpp"
#include "wbench/scalars/parse.hpp"
#include "wbench/scalars/symexpr.hpp"

namespace wb {

// Highest jet order representable. The Jacobi check on the [3,1] bracket
// reaches order 11.
inline constexpr int kMaxJet = 15;
inline constexpr int kMaxVar = 255;

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Polynomial in jet variables u_v^{(k)} with coefficients in the number field.
// Negative exponents are allowed on order-0 variables only.
class DiffPoly {
public:
  // Factor layout: var (8 bits) | jet (8 bits) | exponent + 32768 (16 bits).
  using Factor = std::uint32_t;
  using Monomial = boost::container::small_vector<Factor, 4>;
  struct Term {
    Monomial mono;
    FieldScalar coeff;
  };

  static Factor pack(int var, int jet, int exp) {
    return (std::uint32_t(var) << 24) | (std::uint32_t(jet) << 16) | std::uint32_t(exp + 32768);
  }
  static int var_of(Factor f) { return int(f >> 24); }
  static int jet_of(Factor f) { return int((f >> 16) & 0xFF); }
  static int exp_of(Factor f) { return int(f & 0xFFFF) - 32768; }
  static std::uint32_t key_of(Factor f) { return f >> 16; }

  DiffPoly() = default;
  DiffPoly(const FieldScalar& c);                      // NOLINT
  DiffPoly(long long n) : DiffPoly(FieldScalar(n)) {}  // NOLINT
  static DiffPoly var(int v, int jet = 0, int exp = 1);
  static DiffPoly monomial(const FieldScalar& c, const Monomial& m);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldScalar constant_value() const;
  int max_jet() const;            // -1 for constants
  int max_var() const;            // -1 for constants
  bool is_jet0() const { return max_jet() <= 0; }
  bool has_negative_powers() const;
  bool depends_on(int v) const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const FieldScalar& c);
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(DiffPoly a, const FieldScalar& c) { return a *= c; }
  friend DiffPoly operator*(const FieldScalar& c, DiffPoly a) { return a *= c; }
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

  DiffPoly pow(int n) const;
  DiffPoly div_monomial(const DiffPoly& m) const;

  // Total x-derivative D_x.
  DiffPoly D() const;
  DiffPoly D(int times) const;
  // Partial derivative in u_v^{(jet)}.
  DiffPoly partial(int v, int jet) const;
  // Partial derivative in every jet variable, keyed by (var, jet).
  std::vector<std::pair<std::pair<int, int>, DiffPoly>> gradient() const;

  // Evolutionary derivative sum_{v,k} dP/du_v^{(k)} D^k(e_v).
  DiffPoly evolutionary(const std::vector<DiffPoly>& e) const;

  // Replace u_v by images[v] (expressions in a new jet ring); jets follow by D.
  DiffPoly substitute(const std::vector<DiffPoly>& images) const;

  // Restriction to u_v = 0 (with all its jets).
  DiffPoly set_zero(int v) const;

  // Sum of jet orders weighted by exponent; homogeneous components by this weight.
  DiffPoly jet_weight_part(int w) const;
  int max_jet_weight() const;

  std::complex<double> eval(const std::function<std::complex<double>(int var, int jet)>& at) const;

  SymExpr to_symexpr() const;  // requires is_jet0()
  static DiffPoly from_symexpr(const SymExpr& e);

  std::string str(const Symbols& names) const;
  nlohmann::json to_json() const;
  static DiffPoly from_json(const nlohmann::json& j);

  // Resolve names through `lookup`, which returns a variable index or -1.
  static DiffPoly from_tree(const ExprNode& e, const std::function<int(const std::string&)>& lookup);
  static DiffPoly parse(std::string_view text, const Symbols& names);

private:
  void normalize();
  std::vector<Term> terms_;
};

Symbols default_names(const std::string& stem, int n);  // stem1 .. stemN

}  // namespace wb
