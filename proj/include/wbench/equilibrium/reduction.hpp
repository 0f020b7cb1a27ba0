#pragma once

#include <string>
#include <vector>

#include "wbench/dsred/walgebra.hpp"

namespace wb {

struct EquilibriumLocus {
  std::string coords;                // "slice" or "adapted"
  Symbols ambient;                   // reduction coordinates x^1..x^n
  std::vector<DiffPoly> invariants;  // restricted invariants in x
  std::vector<std::pair<int, int>> constraint_index;  // (invariant j, coordinate beta), 0-based
  std::vector<DiffPoly> constraints;                  // d P_j / d x^beta
  std::vector<int> retained, constrained;             // 0-based
  Symbols params;
  std::vector<DiffPoly> substitution;  // x^i on the branch, in params
  PolyMat generator_jacobian;          // d(params)/d(x^retained), in params
  std::vector<DiffPoly> residuals;     // constraints on the branch
  bool full_rank = false;
  bool ok() const;
};

// Restricted invariants in the reduction coordinates of the case.
std::vector<DiffPoly> invariants_in(const NilpotentCase& c, const std::string& coords);
EquilibriumLocus equilibrium_constraints(const NilpotentCase& c);

struct DiracReport {
  bool mixed_F_zero = false;      // F^{a beta} on the locus
  bool mixed_Omega_zero = false;  // Omega^{a beta} on the locus
  bool correction_zero = false;   // dispersionless F^{a beta}(F^{beta gamma})^{-1}F^{gamma b}
  bool flagged() const { return !mixed_Omega_zero || !correction_zero; }
};
DiracReport dirac_check(const LocalPoissonOperator& p, const EquilibriumLocus& locus);

// Upper-left minor on the branch, re-expressed in the branch parameters.
LocalPoissonOperator dirac_reduce(const LocalPoissonOperator& p, const EquilibriumLocus& locus);

// Dirac bracket with C^{-1} expanded in dispersion degree, kept through max_degree.
// The constraint equations of the locus serve as constraint functions.
struct DiracSeries {
  bool available = false;
  std::string reason;
  int max_degree = 2;
  LocalPoissonOperator bracket;  // in the branch parameters
  int jacobi_lowest_degree = -1;
  bool poisson_through_max() const {
    return available && (jacobi_lowest_degree < 0 || jacobi_lowest_degree > max_degree);
  }
};
DiracSeries dirac_series(const LocalPoissonOperator& p, const EquilibriumLocus& locus, int max_degree = 2);

// Terms of grade g = delta order + jet weight.
DiffOperator grade_part(const DiffOperator& a, int g);
OpMat grade_part(const OpMat& m, int g);
OpMat grade_truncate(const OpMat& m, int gmax);

struct DerivedPencil {
  LocalPoissonOperator p2, p1;
  std::vector<DiffPoly> e;
  bool lie_e_squared_zero = false;
  bool omega1_nondegenerate = false;
  PencilReport checks;
  bool ok() const { return lie_e_squared_zero && omega1_nondegenerate && checks.ok(); }
};
DerivedPencil derived_pencil(const LocalPoissonOperator& p2, const std::vector<DiffPoly>& e);

// Flat chart t = forward(params), params = inverse(t).
struct FlatChart {
  Symbols names;
  std::vector<DiffPoly> forward;
  std::vector<SymExpr> inverse;
  PolyMat jacobian;  // dt^a / dp^i
  bool inverse_ok = false;
};
FlatChart flat_chart(const NilpotentCase& c, const Symbols& params);
// J m J^T, written in t.
SymMat push_tensor(const PolyMat& m, const FlatChart& chart);
std::vector<SymExpr> push_vector(const std::vector<DiffPoly>& v, const FlatChart& chart);

// Leading data of the reduced pencil in flat coordinates.
struct FlatPencil {
  Symbols names;
  SymMat omega2, omega1, s22, s12;
  std::vector<SymExpr> e;
  bool dispersionless = false;  // F = 0 for both members, in params
  bool s1_zero = false;         // S_{;1} = 0 for both members
  bool degree1_zero = false;    // whole degree-1 part vanishes
};
FlatPencil flat_pencil(const DerivedPencil& d, const FlatChart& chart);

struct ReducedCase {
  EquilibriumLocus locus;
  LocalPoissonOperator ambient;  // B2 in reduction coordinates
  DiracReport dirac;
  DiracSeries series;  // computed for flagged cases only
  DerivedPencil pencil;
  FlatChart chart;
  FlatPencil flat;
};
ReducedCase reduce_case(const NilpotentCase& c, const LocalPoissonOperator& b2);

SymMat parse_sym_matrix(const nlohmann::json& rows, const Symbols& names);
PolyMat poly_jacobian(const std::vector<DiffPoly>& f, int nvars);
DiffPoly poly_determinant(const PolyMat& m);

}  // namespace wb
