#include <doctest.h>

#include "wbench/poisson/operator.hpp"

using namespace wb;

namespace {

LocalPoissonOperator virasoro() {
  Symbols u{"u"};
  LocalPoissonOperator p(u);
  p(0, 0).add(0, DiffPoly::parse("u'", u));
  p(0, 0).add(1, DiffPoly::parse("2*u", u));
  p(0, 0).add(3, DiffPoly::parse("-1/2", u));
  return p;
}

LocalPoissonOperator from_list(const char* text, const Symbols& names) {
  return LocalPoissonOperator::from_bracket_list(nlohmann::json::parse(text), names);
}

}  // namespace

TEST_CASE("skew completion") {
  Symbols z{"z1", "z2"};
  auto p = from_list(R"([{"i":1,"j":1,"delta":["z1'","2*z1"]},{"i":1,"j":2,"delta":["z2'","z2"]}])", z);
  CHECK(skew_residual(p).is_zero());
  CHECK(p.coeff(1, 0, 0).is_zero());
  CHECK(p.coeff(1, 0, 1) == DiffPoly::parse("z2", z));
  LocalPoissonOperator bad(z);
  bad(0, 0).add(1, DiffPoly::parse("z1", z));
  CHECK(!skew_residual(bad).is_zero());
}

TEST_CASE("Jacobi on known brackets") {
  CHECK(check_jacobi(virasoro()).ok());
  Symbols u{"u"};
  LocalPoissonOperator kdv1(u);
  kdv1(0, 0).add(1, DiffPoly(FieldScalar(1)));
  CHECK(check_jacobi(kdv1).ok());
  CHECK(check_jacobi(virasoro() + kdv1 * FieldScalar(3, 7)).ok());

  // {z1,z2} = z3, {z2,z3} = z1 z2: Jacobiator z1 z3 does not vanish.
  Symbols z{"z1", "z2", "z3"};
  auto bad = from_list(R"([{"i":1,"j":2,"delta":["z3"]},{"i":2,"j":3,"delta":["z1*z2"]}])", z);
  auto rep = check_jacobi(bad);
  CHECK(!rep.ok());
  CHECK(rep.lowest_degree == -2);
  // so(3) is Poisson.
  auto so3 = from_list(R"([{"i":1,"j":2,"delta":["z3"]},{"i":2,"j":3,"delta":["z1"]},{"i":1,"j":3,"delta":["-z2"]}])", z);
  CHECK(check_jacobi(so3).ok());
}

TEST_CASE("dispersion data round trip") {
  auto p = virasoro();
  auto d = extract_dispersion(p);
  CHECK(d.F(0, 0).is_zero());
  CHECK(d.Omega(0, 0) == DiffPoly::parse("2*u", p.names()));
  CHECK(d.Gamma[0](0, 0) == DiffPoly(FieldScalar(1)));
  CHECK(d.S[2](0, 0) == DiffPoly(FieldScalar(-1, 2)));
  CHECK(d.S[1](0, 0).is_zero());
  CHECK(reassemble(d) == p);
  CHECK(degree_part(p, 0) + degree_part(p, 2) == p);
}

TEST_CASE("Lie derivative") {
  auto p = virasoro();
  Symbols u{"u"};
  std::vector<DiffPoly> e{DiffPoly(FieldScalar(1))};
  auto q = lie_derivative(p, e);
  CHECK(q.coeff(0, 0, 1) == DiffPoly(FieldScalar(2)));
  CHECK(q.coeff(0, 0, 0).is_zero());
  CHECK(lie_derivative(q, e).is_zero());
  auto rep = pencil_checks(p, q, e);
  CHECK(rep.ok());
  // Scaling field u d/du: linear part picks up -1, constant part -2.
  auto s = lie_derivative(p, {DiffPoly::var(0)});
  CHECK(s.coeff(0, 0, 3) == DiffPoly(FieldScalar(1)));
  CHECK(s.coeff(0, 0, 1) == DiffPoly::parse("-2*u", u));
}

TEST_CASE("change of coordinates") {
  Symbols u{"u"}, v{"v"};
  auto p = virasoro();
  // v = u + 1: v-bracket is p with u -> v - 1.
  auto q = change_coordinates(p, {DiffPoly::parse("u + 1", u)}, {DiffPoly::parse("v - 1", v)}, v);
  CHECK(q.coeff(0, 0, 1) == DiffPoly::parse("2*v - 2", v));
  CHECK(check_jacobi(q).ok());
  // v = 2u: Omega = 4 * 2u = 4v, delta''' coefficient scales by 4.
  auto r = change_coordinates(p, {DiffPoly::parse("2*u", u)}, {DiffPoly::parse("1/2*v", v)}, v);
  CHECK(r.coeff(0, 0, 1) == DiffPoly::parse("4*v", v));
  CHECK(r.coeff(0, 0, 3) == DiffPoly(FieldScalar(-2)));
  CHECK(maps_are_inverse({DiffPoly::parse("u + 1", u)}, {DiffPoly::parse("v - 1", v)}));
  CHECK(!maps_are_inverse({DiffPoly::parse("2*u", u)}, {DiffPoly::parse("v", v)}));
}

TEST_CASE("hydrodynamic coordinate change agrees with the tensor law") {
  Symbols z{"z1", "z2"}, t{"t1", "t2"};
  auto p = from_list(R"([{"i":1,"j":1,"delta":["z1'","2*z1"]},{"i":1,"j":2,"delta":["0","z2"]},{"i":2,"j":2,"delta":["0","1/6"]}])", z);
  CHECK(check_jacobi(p).ok());
  std::vector<DiffPoly> fwd{DiffPoly::parse("z1 + z2^2", z), DiffPoly::parse("z2", z)};
  std::vector<DiffPoly> inv{DiffPoly::parse("t1 - t2^2", t), DiffPoly::parse("t2", t)};
  auto q = change_coordinates(p, fwd, inv, t);
  CHECK(check_jacobi(q).ok());
  PolyMat jac(2, 2), om = delta_coefficient(p, 1);
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i) jac(a, i) = fwd[a].partial(i, 0);
  PolyMat want = (jac * om * jac.transpose()).map<DiffPoly>([&](const DiffPoly& x) { return x.substitute(inv); });
  CHECK(delta_coefficient(q, 1) == want);
}

TEST_CASE("operator json round trip") {
  auto p = virasoro();
  auto q = LocalPoissonOperator::from_json(nlohmann::json::parse(p.to_json().dump()));
  CHECK(q == p);
  CHECK(p.to_json().at("schema") == 1);
  CHECK(p.to_text().find("delta'''") != std::string::npos);
}
