#include <doctest.h>

#include "wbench/dsred/walgebra.hpp"

using namespace wb;

namespace {

// Display matrices list the upper triangle for skew data and may leave the
// lower triangle null.
PolyMat display_matrix(const nlohmann::json& m, const Symbols& names, bool skew) {
  const int n = static_cast<int>(m.size());
  PolyMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m[i][j].is_null()) r(i, j) = DiffPoly::parse(m[i][j].get<std::string>(), names);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j].is_null()) r(i, j) = skew ? -r(j, i) : r(j, i);
  return r;
}

LocalPoissonOperator fixture_brackets(const NilpotentCase& c) {
  return LocalPoissonOperator::from_bracket_list(c.data.at("walgebra").at("brackets"), c.chart.names);
}

}  // namespace

TEST_CASE("lifted gradient") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    auto lift = lift_gradient(c);
    INFO(id);
    REQUIRE(static_cast<int>(lift.dual.size()) == c.dim);
    for (int i = 0; i < c.dim; ++i)
      for (int j = 0; j < c.dim; ++j)
        CHECK(normalized_form(lift.dual[i], c.chart.basis[j], c.kappa) == FieldScalar(i == j ? 1 : 0));
    for (const auto& x : lift.dual) CHECK(commutator(c.triple.e, x).is_zero());
    CHECK(static_cast<int>(lift.complement.size()) + c.dim == c.n * c.n - 1);
    for (const auto& u : lift.complement) CHECK(u.trace().is_zero());
    // The residual lies in g^f.
    PolyMat comm = to_poly(c.triple.f) * lift.residual - lift.residual * to_poly(c.triple.f);
    CHECK(comm.is_zero());
    CHECK(static_cast<int>(lift.components.size()) == c.dim);
  }
}

TEST_CASE("W-algebra brackets match the fixtures") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    auto w = classical_walgebra(c);
    INFO(id);
    CHECK(w == fixture_brackets(c));
    CHECK(skew_residual(w).is_zero());
    CHECK(check_jacobi(w).ok());
  }
}

TEST_CASE("perturbed W-algebra fails Jacobi") {
  auto c = load_case("sl3-21");
  auto w = classical_walgebra(c);
  auto z1sq = DiffPoly::parse("z1^2", c.chart.names);
  w(0, 1).add(0, z1sq);
  w(1, 0).add(0, -z1sq);
  CHECK(skew_residual(w).is_zero());
  CHECK(!check_jacobi(w).ok());
}

TEST_CASE("displayed slices give automorphic brackets") {
  for (const auto& id : {"sl4-31", "sl4-22"}) {
    auto c = load_case(id);
    auto j = c.data;
    j["slice"]["matrix"] = j["slice"]["displayed"];
    auto shown = case_from_json(j);
    std::vector<DiffPoly> img;
    for (const auto& s : c.data.at("slice").at("automorphism")) img.push_back(DiffPoly::parse(s.get<std::string>(), c.chart.names));
    auto w = classical_walgebra(shown);
    INFO(id);
    CHECK(w != fixture_brackets(c));
    CHECK(change_coordinates(w, img, img, c.chart.names) == fixture_brackets(c));
  }
}

TEST_CASE("leading coefficients match the displays") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    auto w = classical_walgebra(c);
    const auto& disp = c.data.at("displays");
    LocalPoissonOperator p = w;
    if (disp.at("coords") == "adapted") {
      auto m = adapted_map(c);
      p = change_coordinates(w, m.forward, m.inverse, m.names);
    }
    auto d = extract_dispersion(p);
    INFO(id);
    CHECK(d.F == display_matrix(disp.at("F2"), p.names(), true));
    CHECK(d.Omega == display_matrix(disp.at("Omega2"), p.names(), false));
    if (disp.contains("S21")) CHECK(d.S[1] == display_matrix(disp.at("S21"), p.names(), true));
    if (disp.contains("S21_nonzero")) CHECK(!d.S[1].is_zero());
    if (disp.contains("slice")) {
      auto q = extract_dispersion(w);
      CHECK(q.F == display_matrix(disp.at("slice").at("F2"), w.names(), true));
      CHECK(q.Omega == display_matrix(disp.at("slice").at("Omega2"), w.names(), false));
    }
  }
}

TEST_CASE("first bracket forms an exact pencil") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    auto pd = first_bracket(c, classical_walgebra(c));
    INFO(id);
    CHECK(!pd.b1.is_zero());
    auto rep = pencil_checks(pd.b2, pd.b1, pd.liouville);
    CHECK(rep.lie_v_p2_is_p1);
    CHECK(rep.lie_v_p1_zero);
    CHECK(rep.p1_jacobi);
    CHECK(rep.ok());
  }
}

TEST_CASE("adapted map") {
  auto c = load_case("sl3-21");
  auto m = adapted_map(c);
  CHECK(!m.identity);
  CHECK(maps_are_inverse(m.forward, m.inverse));
  CHECK(m.forward[0] == c.invariants[0]);
  CHECK(adapted_map(load_case("sl4-31")).identity);
}
