#pragma once

#include "wbench/liealg/cases.hpp"
#include "wbench/poisson/operator.hpp"

namespace wb {

// Lift of an abstract covector w (gradient symbols w_i, ring slots dim..2dim-1).
struct LiftedGradient {
  Symbols names;             // z1..zn, w1..wn
  PolyMat matrix;            // v = sum w_i X_i^* + sum c_a U_a
  std::vector<FMat> dual;    // X_i^*
  std::vector<FMat> complement;  // U_a, homogeneous basis of im ad_f
  std::vector<DiffPoly> unknowns;  // solved c_a
  PolyMat residual;          // d_x v + [q, v], lies in g^f
  std::vector<DiffPoly> components;  // R_j = kappa tr(X_j^* residual)
};

struct LiftError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LiftedGradient lift_gradient(const NilpotentCase& c);
LocalPoissonOperator walgebra_from_lift(const NilpotentCase& c, const LiftedGradient& lift);
LocalPoissonOperator classical_walgebra(const NilpotentCase& c);

// Adapted coordinate map t(z), z(t) from the fixture (absent means identity).
struct CoordinateMap {
  Symbols names;
  std::vector<DiffPoly> forward, inverse;
  bool identity = true;
};
CoordinateMap adapted_map(const NilpotentCase& c);

struct PencilData {
  LocalPoissonOperator b2, b1;
  std::vector<DiffPoly> liouville;
  std::string coords;  // "slice" or "adapted"
};
// B1 as the Lie derivative of B2 along the Liouville field, in the fixture's designated coordinates.
PencilData first_bracket(const NilpotentCase& c, const LocalPoissonOperator& b2);

}  // namespace wb
