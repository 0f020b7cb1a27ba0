#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wbench/equilibrium/reduction.hpp"
#include "wbench/frobgeom/geometry.hpp"

namespace wb {

struct RootCollision : DomainError {
  using DomainError::DomainError;
};

// det(O2 - lambda O1); lambda is the last variable of names.
struct CharPoly {
  Symbols names;
  int lambda = 0;
  SymExpr psi;
  std::vector<SymExpr> coeffs;  // coeffs[k] multiplies lambda^k
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};
CharPoly char_poly(const SymMat& o2, const SymMat& o1, const Symbols& names);

// Sorted by real part, then imaginary part.
std::vector<std::complex<double>> canonical_roots(const CharPoly& psi, const Point& t, double separation = 1e-8);

struct CentralSample {
  Point point;
  std::vector<std::complex<double>> roots;
  std::vector<std::complex<double>> c;  // c[i] belongs to roots[i]
};

struct CentralInvariantReport {
  std::string case_id;
  std::vector<CentralSample> samples;
  std::vector<Point> rejected;
  std::vector<std::complex<double>> values;  // sorted multiset at the first sample
  double deviation = 0;                      // across samples, sorted multisets compared
  bool constant = false;
  bool topological = false;
  std::optional<bool> matches;
  double match_error = 0;
};

CentralInvariantReport central_invariants(const FlatPencil& f, const std::vector<Point>& points, double tol = 1e-8);
// Draws seeded points until count samples are accepted.
CentralInvariantReport central_invariants(const FlatPencil& f, std::uint64_t seed, int count, double tol = 1e-8);
void compare_expected(CentralInvariantReport& rep, const std::vector<FieldScalar>& expected, double tol = 1e-9);

struct RescaleReport {
  FieldScalar kappa;
  std::vector<std::complex<double>> values;
  double max_error = 0;
  bool ok(double tol) const { return max_error <= tol; }
};
RescaleReport rescale_check(const FlatPencil& f, const CentralInvariantReport& base, const FieldScalar& kappa);

std::vector<std::complex<double>> sorted_values(std::vector<std::complex<double>> v);

}  // namespace wb
