#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbench/diffalg/diffpoly.hpp"
#include "wbench/liealg/matrix.hpp"

namespace wb {

using PolyMat = Mat<DiffPoly>;

FieldScalar parse_scalar(const std::string& text);
FMat parse_matrix(const nlohmann::json& rows);
PolyMat parse_poly_matrix(const nlohmann::json& rows, const Symbols& names);
nlohmann::json matrix_json(const FMat& m);
std::string matrix_str(const FMat& m);

PolyMat to_poly(const FMat& m);
// Elementary matrix with 1 in (i, j), zero based.
FMat elementary(int n, int i, int j);

struct Sl2Triple {
  FMat e, h, f;
};

struct Sl2Report {
  FMat he, hf, ef;  // [h,e]-e, [h,f]+f, [e,f]-2h
  bool ok() const { return he.is_zero() && hf.is_zero() && ef.is_zero(); }
};
Sl2Report verify_sl2(const Sl2Triple& t);

FieldScalar normalized_form(const FMat& a, const FMat& b, const FieldScalar& kappa);
FieldScalar trace_product(const FMat& a, const FMat& b);

// Eigenvalue of ad_h on (i,j) for diagonal h.
Rational grade_of(const FMat& h, int i, int j);
std::map<Rational, FMat> grading_decompose(const FMat& x, const FMat& h);

// ker ad_x inside sl_n.
std::vector<FMat> centralizer_basis(const FMat& x);
// Coordinates of a general element of sl_n or gl_n as a flat vector.
std::vector<FieldScalar> flatten(const FMat& m);
FMat unflatten(const std::vector<FieldScalar>& v, int n);

// a_1..a_n with det(mu - A) = mu^n + sum_k a_k mu^{n-k} (Faddeev-LeVerrier).
std::vector<DiffPoly> charpoly_coefficients(const PolyMat& a);
// Same over the field, highest degree first: [1, a_1, .., a_n].
std::vector<FieldScalar> charpoly(const FMat& a);

// Univariate polynomials over the field, coefficients from degree 0 up.
using UniPoly = std::vector<FieldScalar>;
UniPoly uni_derivative(const UniPoly& p);
UniPoly uni_gcd(UniPoly a, UniPoly b);
bool uni_squarefree(const UniPoly& p);

}  // namespace wb
