#include <doctest.h>

#include <map>

#include "wbench/equilibrium/reduction.hpp"
#include "wbench/frobgeom/geometry.hpp"

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

SymMat sym(std::initializer_list<std::initializer_list<const char*>> rows, const Symbols& names) {
  const int n = static_cast<int>(rows.size());
  SymMat m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const char* s : r) m(i, j++) = SymExpr::parse(s, names);
    ++i;
  }
  return m;
}

// Levi-Civita symbols of g = omega^{-1} from central differences of g.
std::vector<CMat> fd_christoffel(const SymMat& omega, const Point& p, double h = 1e-5) {
  const int r = omega.rows();
  std::vector<CMat> dg;
  for (int l = 0; l < r; ++l) {
    Point a = p, b = p;
    a[l] += h;
    b[l] -= h;
    dg.push_back((eval_matrix(omega, a).inverse() - eval_matrix(omega, b).inverse()) / (2 * h));
  }
  CMat om = eval_matrix(omega, p);
  std::vector<CMat> gam(r, CMat::Zero(r, r));
  for (int s = 0; s < r; ++s)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) gam[s](i, j) += om(s, k) * 0.5 * (dg[i](k, j) + dg[j](k, i) - dg[k](i, j));
  std::vector<CMat> out(r, CMat::Zero(r, r));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int m = 0; m < r; ++m) out[k](i, j) -= om(i, m) * gam[j](m, k);
  return out;
}

double max_diff(const std::vector<CMat>& a, const std::vector<CMat>& b) {
  double w = 0;
  for (std::size_t k = 0; k < a.size(); ++k) w = std::max(w, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return w;
}

}  // namespace

TEST_CASE("sample points are seeded") {
  auto a = sample_points(3, 42, 5), b = sample_points(3, 42, 5), c = sample_points(3, 7, 5);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a)
    for (const auto& x : p) {
      CHECK(x.real() >= 0.4);
      CHECK(x.real() <= 1.9);
      CHECK(x.real() * 64 == doctest::Approx(std::round(x.real() * 64)));
    }
}

TEST_CASE("christoffels against finite differences") {
  Symbols t{"t1", "t2", "t3"};
  auto om = sym({{"2*t1", "t2", "3*t3"}, {"t2", "-3/2", "2*t1 - 2*t2^2"}, {"3*t3", "2*t1 - 2*t2^2", "-8*t2*t3"}}, t);
  ContravariantMetric g(t, om);
  for (const auto& p : sample_points(3, 42, 5)) CHECK(max_diff(g.christoffel(p), fd_christoffel(om, p)) < 1e-6);
  Symbols x{"x", "y"};
  auto d = sym({{"x", "0"}, {"0", "x"}}, x);
  ContravariantMetric gd(x, d);
  for (const auto& p : sample_points(2, 3, 5)) CHECK(max_diff(gd.christoffel(p), fd_christoffel(d, p)) < 1e-6);
}

TEST_CASE("curvature controls") {
  Symbols x{"x", "y"};
  ContravariantMetric flat(x, sym({{"1", "0"}, {"0", "2"}}, x));
  auto pts = sample_points(2, 42, 5);
  for (const auto& p : pts) {
    for (const auto& m : flat.christoffel(p)) CHECK(m.cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(curvature_residual(flat, pts) == 0.0);
  CHECK(curvature_residual(ContravariantMetric(x, sym({{"2*x", "y"}, {"y", "1/6"}}, x)), pts) < 1e-12);
  // Round sphere in stereographic coordinates.
  auto s = sym({{"1/4*(1 + x^2 + y^2)^2", "0"}, {"0", "1/4*(1 + x^2 + y^2)^2"}}, x);
  CHECK(curvature_residual(ContravariantMetric(x, s), pts) > 1e-3);
  CHECK(curvature_residual(ContravariantMetric(x, sym({{"x", "0"}, {"0", "x"}}, x)), pts) > 1e-3);
  CHECK_THROWS_AS(ContravariantMetric(x, sym({{"1", "x"}, {"0", "1"}}, x)), DomainError);
  CHECK_THROWS_AS(curvature_residual(ContravariantMetric(x, sym({{"0", "0"}, {"0", "1"}}, x)), pts), DomainError);
}

TEST_CASE("vector calculus") {
  Symbols x{"x", "y"};
  std::vector<SymExpr> a{SymExpr::parse("x", x), SymExpr()}, b{SymExpr(), SymExpr::parse("x*y", x)};
  auto c = vector_bracket(a, b);
  CHECK(c[0].is_zero());
  CHECK(c[1] == SymExpr::parse("x*y", x));
  auto om = sym({{"x", "0"}, {"0", "1"}}, x);
  // x d/dx: L(x) = x - 2x = -x.
  auto l = lie_derivative(om, a);
  CHECK(l(0, 0) == SymExpr::parse("-x", x));
  CHECK(l(1, 1).is_zero());
  auto g = raise_gradient(om, SymExpr::parse("x^2 + y", x));
  CHECK(g[0] == SymExpr::parse("2*x^2", x));
  CHECK(g[1] == SymExpr(FieldScalar(1)));
  CHECK(!solve_charge(om, a));
  CHECK(sym_determinant(om) == SymExpr::parse("x", x));
}

TEST_CASE("reduced pencils are flat and quasihomogeneous") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    const auto& f = reduced(id).flat;
    const auto& ex = c.data.at("expected");
    auto pts = sample_points(static_cast<int>(f.names.size()), 42, 5);
    INFO(id);
    auto fr = flat_pencil_check(f.omega2, f.omega1, f.names, pts);
    CHECK(fr.combinations.size() == 3);
    CHECK(fr.ok(1e-9));
    auto q = qfpm_check(f.omega2, f.omega1, SymExpr::parse(ex.at("tau").get<std::string>(), f.names), f.names, pts);
    CHECK(q.ok());
    REQUIRE(q.charge);
    CHECK(*q.charge == SymExpr::parse(ex.at("charge").get<std::string>(), f.names).constant_value());
    CHECK(q.e == f.e);
    for (std::size_t i = 0; i < q.E.size(); ++i)
      CHECK(q.E[i] == SymExpr::parse(ex.at("euler")[i].get<std::string>(), f.names));
  }
}

TEST_CASE("potentials") {
  for (const auto& id : case_ids()) {
    auto c = load_case(id);
    const auto& f = reduced(id).flat;
    const auto& ex = c.data.at("expected");
    auto pts = sample_points(static_cast<int>(f.names.size()), 42, 5);
    auto fp = potential_from_json(ex, f.names);
    auto pm = metric_from_potential(fp);
    INFO(id);
    if (ex.contains("Pi"))
      CHECK(pm.pi.map<SymExpr>([](const FieldScalar& s) { return SymExpr(s); }) == parse_sym_matrix(ex.at("Pi"), f.names));
    CHECK(pm.eta.map<SymExpr>([](const FieldScalar& s) { return SymExpr(s); }) == f.omega1);
    auto w = wdvv_residual(fp, pm, pts);
    CHECK(w.vacuous == (f.names.size() < 3));
    CHECK(w.max_residual <= 1e-10);
    CHECK(euler_remainder(fp) == SymExpr::parse(ex.at("euler_remainder").get<std::string>(), f.names));
    CHECK(intersection_form(fp, pm) == f.omega2);
    auto alg = frobenius_algebra_check(fp, pm, pts, 42);
    CHECK(alg.commutative);
    CHECK(alg.unity);
    CHECK(alg.invariance < 1e-12);
  }
}

TEST_CASE("potential controls") {
  Symbols t{"t1"};
  FrobeniusPotential fp{t, SymExpr::parse("1/6*t1^3", t), 0, {SymExpr::parse("t1", t)}, FieldScalar(0)};
  auto pm = metric_from_potential(fp);
  CHECK(pm.pi(0, 0) == FieldScalar(1));
  CHECK(euler_remainder(fp).is_zero());
  fp.F = SymExpr::parse("t1^4", t);
  CHECK_THROWS_AS(metric_from_potential(fp), DomainError);
  fp.F = SymExpr::parse("1/6*t1^3 + t1^2*log(t1)", t);
  CHECK_THROWS_AS(euler_remainder(fp), DomainError);
  // A perturbed three-dimensional potential breaks WDVV.
  auto c = load_case("sl4-31");
  const auto& f = reduced("sl4-31").flat;
  auto bad = potential_from_json(c.data.at("expected"), f.names);
  bad.F += SymExpr::parse("t3^4", f.names);
  auto w = wdvv_residual(bad, metric_from_potential(bad), sample_points(3, 42, 5));
  CHECK(!w.exact);
  CHECK(w.max_residual > 1e-3);
}

TEST_CASE("leading terms are hydrodynamic") {
  for (const auto& id : case_ids()) {
    const auto& rc = reduced(id);
    auto d = extract_dispersion(rc.pencil.p2);
    INFO(id);
    CHECK(hydrodynamic_mismatch(d, rc.locus.params, sample_points(static_cast<int>(rc.locus.params.size()), 42, 5)) <
          1e-9);
  }
}
