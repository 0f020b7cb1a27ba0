#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wbench/poisson/operator.hpp"

namespace wb {

using Point = std::vector<std::complex<double>>;
using CMat = Eigen::MatrixXcd;

// Points with coordinates k/64 drawn uniformly from [lo, hi].
std::vector<Point> sample_points(int dim, std::uint64_t seed, int count, double lo = 0.4, double hi = 1.9);
CMat eval_matrix(const SymMat& m, const Point& p);
bool is_symmetric(const SymMat& m);

class ContravariantMetric {
public:
  ContravariantMetric(Symbols names, SymMat omega);
  int dim() const { return omega_.rows(); }
  const Symbols& names() const { return names_; }
  const SymMat& omega() const { return omega_; }

  // Contravariant symbols, result[k](i, j) = Gamma^{ij}_k.
  std::vector<CMat> christoffel(const Point& p) const;
  // Levi-Civita symbols of the inverse metric, result[s](i, j) = Gamma^s_{ij}.
  std::vector<CMat> levi_civita(const Point& p) const;
  // Riemann tensor R^s_{ijk}, flattened; scaled by 1 + the largest term.
  double curvature(const Point& p) const;

private:
  struct Jet {
    CMat om, g;
    std::vector<CMat> dom, dg;
    std::vector<std::vector<CMat>> ddg;
  };
  Jet jet(const Point& p, bool second) const;
  Symbols names_;
  SymMat omega_;
  std::vector<SymMat> d1_;
  std::vector<std::vector<SymMat>> d2_;
};

// Largest scaled curvature over the points; points where the metric is
// singular are skipped, and all-singular is a DomainError.
double curvature_residual(const ContravariantMetric& g, const std::vector<Point>& points);

struct FlatPencilReport {
  double omega2 = 0, omega1 = 0;
  std::vector<std::pair<FieldScalar, double>> combinations;
  double additivity = 0;  // max |Gamma(O2 + l O1) - Gamma(O2) - l Gamma(O1)|
  bool ok(double tol) const;
};
FlatPencilReport flat_pencil_check(const SymMat& o2, const SymMat& o1, const Symbols& names, const std::vector<Point>& points,
                                   const std::vector<FieldScalar>& lambdas = {FieldScalar(1, 3), FieldScalar(-2),
                                                                              FieldScalar(5, 7)});

// Symbolic vector calculus on SymExpr components.
std::vector<SymExpr> raise_gradient(const SymMat& o, const SymExpr& f);  // o^{ij} d_j f
std::vector<SymExpr> vector_bracket(const std::vector<SymExpr>& a, const std::vector<SymExpr>& b);
SymMat lie_derivative(const SymMat& o, const std::vector<SymExpr>& v);
// d with L_E O2 = (d - 1) O2, when such a constant exists.
std::optional<FieldScalar> solve_charge(const SymMat& o2, const std::vector<SymExpr>& euler);

struct QfpmReport {
  SymExpr tau;
  std::vector<SymExpr> E, e;
  std::optional<FieldScalar> charge;
  bool bracket_ok = false;  // [e, E] = e
  bool lie_e_o2 = false;    // L_e O2 = O1
  bool lie_e_o1 = false;    // L_e O1 = 0
  bool regular = false;
  double min_det_R = 0;
  bool ok() const { return charge && bracket_ok && lie_e_o2 && lie_e_o1; }
};
QfpmReport qfpm_check(const SymMat& o2, const SymMat& o1, const SymExpr& tau, const Symbols& names,
                      const std::vector<Point>& points);

struct FrobeniusPotential {
  Symbols names;
  SymExpr F;
  int unity = 0;  // 0-based
  std::vector<SymExpr> euler;
  FieldScalar charge;
};

// Keys potential, unity (1-based), euler, charge.
FrobeniusPotential potential_from_json(const nlohmann::json& j, const Symbols& names);

struct PotentialMetric {
  FMat pi, eta;           // eta = pi^{-1}
  std::vector<SymMat> C;  // C[k](i, j) = C^k_{ij}
};
PotentialMetric metric_from_potential(const FrobeniusPotential& fp);

struct WdvvReport {
  bool vacuous = false;  // fewer than three coordinates
  bool exact = false;    // every residual is zero symbolically
  double max_residual = 0;
};
WdvvReport wdvv_residual(const FrobeniusPotential& fp, const PotentialMetric& pm, const std::vector<Point>& points);

// E F - (3 - d) F; throws DomainError unless a polynomial of degree <= 2.
SymExpr euler_remainder(const FrobeniusPotential& fp);
SymMat intersection_form(const FrobeniusPotential& fp, const PotentialMetric& pm);

struct AlgebraReport {
  bool commutative = false;
  bool unity = false;
  double invariance = 0;  // max |Pi(a.b, c) - Pi(a, b.c)| over random tangents
};
AlgebraReport frobenius_algebra_check(const FrobeniusPotential& fp, const PotentialMetric& pm,
                                      const std::vector<Point>& points, std::uint64_t seed);

// |Gamma from the u' delta coefficient - christoffel(Omega)| at the points.
double hydrodynamic_mismatch(const DispersionData& d, const Symbols& names, const std::vector<Point>& points);

SymExpr sym_determinant(const SymMat& m);

}  // namespace wb
