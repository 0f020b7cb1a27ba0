#include <doctest.h>

#include <map>

#include "wbench/centralinv/central.hpp"

using namespace wb;

namespace {

const ReducedCase& reduced(const std::string& id) {
  static std::map<std::string, ReducedCase> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    auto c = load_case(id);
    it = cache.emplace(id, reduce_case(c, classical_walgebra(c))).first;
  }
  return it->second;
}

std::vector<FieldScalar> expected_central(const NilpotentCase& c) {
  std::vector<FieldScalar> v;
  for (const auto& s : c.data.at("expected").at("central"))
    v.push_back(SymExpr::parse(s.get<std::string>(), {}).constant_value());
  return v;
}

SymMat diag(std::initializer_list<long long> d) {
  SymMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int i = 0;
  for (long long x : d) m(i, i) = SymExpr(FieldScalar(x)), ++i;
  return m;
}

}  // namespace

TEST_CASE("characteristic polynomial") {
  Symbols t{"t1", "t2"};
  auto one = char_poly(diag({1, 1}), diag({1, 1}), t);
  CHECK(one.degree() == 2);
  CHECK(one.psi == SymExpr::parse("(1 - lambda)^2", one.names));
  CHECK_THROWS_AS(canonical_roots(one, {1.0, 1.0}), RootCollision);
  auto two = char_poly(diag({1, 2}), diag({1, 1}), t);
  auto r = canonical_roots(two, {1.0, 1.0});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - 1.0) < 1e-14);
  CHECK(std::abs(r[1] - 2.0) < 1e-14);

  const auto& f = reduced("sl3-21").flat;
  auto cp = char_poly(f.omega2, f.omega1, f.names);
  CHECK(cp.degree() == 2);
  // t1/3 - (t2 - lambda)^2 at (1, 1/3) has roots 1/3 -+ 1/sqrt(3).
  auto q = canonical_roots(cp, {1.0, 1.0 / 3});
  CHECK(std::abs(q[0] - (1.0 / 3 - 1 / std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(q[1] - (1.0 / 3 + 1 / std::sqrt(3.0))) < 1e-12);
  for (const auto& p : sample_points(2, 42, 5)) {
    SymMat m = f.omega2 - f.omega1.map<SymExpr>([](const SymExpr& e) { return e * FieldScalar(5, 7); });
    CMat e = eval_matrix(m, p);
    CHECK(std::abs(cp.psi.eval({p[0], p[1], 5.0 / 7}) - e.determinant()) < 1e-12);
  }
  CHECK(char_poly(reduced("sl4-22").flat.omega2, reduced("sl4-22").flat.omega1, reduced("sl4-22").flat.names).degree() == 3);
}

TEST_CASE("central invariants of the reduced pencils") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    const auto& f = reduced(id).flat;
    auto rep = central_invariants(f, 42, 5);
    compare_expected(rep, expected_central(c));
    INFO(id);
    CHECK(rep.samples.size() == 5);
    CHECK(rep.constant);
    CHECK(rep.deviation <= 1e-8);
    REQUIRE(rep.matches);
    CHECK(*rep.matches);
    CHECK(rep.match_error <= 1e-9);
    CHECK(rep.topological == c.data.at("expected").at("topological").get<bool>());
    for (const auto& s : rep.samples) CHECK(std::is_sorted(s.roots.begin(), s.roots.end(), [](auto a, auto b) {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    }));
  }
}

TEST_CASE("rescaling law") {
  const auto& f = reduced("sl3-21").flat;
  auto base = central_invariants(f, 42, 5);
  auto same = rescale_check(f, base, FieldScalar(1));
  CHECK(same.ok(1e-12));
  auto r = rescale_check(f, base, FieldScalar(-24));
  CHECK(r.ok(1e-9));
  // -1/24 divided by -24.
  for (const auto& v : r.values) CHECK(std::abs(v - 1.0 / 576) < 1e-9);
  const auto& g = reduced("sl4-31").flat;
  auto r2 = rescale_check(g, central_invariants(g, 42, 5), FieldScalar(2));
  CHECK(r2.ok(1e-9));
  for (const auto& v : r2.values) CHECK(std::abs(v + 1.0 / 192) < 1e-9);
}

TEST_CASE("central invariant preconditions") {
  FlatPencil f = reduced("sl3-21").flat;
  f.s1_zero = false;
  CHECK_THROWS_AS(central_invariants(f, 42, 5), DomainError);
  // A perturbed S;2 breaks constancy.
  FlatPencil g = reduced("sl3-21").flat;
  g.s22(1, 1) = SymExpr::parse("t1", g.names);
  auto rep = central_invariants(g, 42, 5);
  CHECK(!rep.constant);
}
