#include "wbench/equilibrium/reduction.hpp"

#include <algorithm>

namespace wb {

namespace {

std::vector<DiffPoly> parse_list(const nlohmann::json& j, const Symbols& names) {
  std::vector<DiffPoly> out;
  for (const auto& s : j) out.push_back(DiffPoly::parse(s.get<std::string>(), names));
  return out;
}

int index_of(const Symbols& names, const std::string& s) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<int>(i);
  return -1;
}

PolyMat on_branch(const PolyMat& m, const std::vector<DiffPoly>& sub) {
  return m.map<DiffPoly>([&](const DiffPoly& p) { return p.substitute(sub); });
}

}  // namespace

bool EquilibriumLocus::ok() const {
  for (const auto& r : residuals)
    if (!r.is_zero()) return false;
  return full_rank;
}

std::vector<DiffPoly> invariants_in(const NilpotentCase& c, const std::string& coords) {
  if (coords == "slice") return c.invariants;
  CoordinateMap m = adapted_map(c);
  std::vector<DiffPoly> out;
  for (const auto& p : c.invariants) out.push_back(p.substitute(m.inverse));
  if (c.data.at("adapted").contains("invariants")) {
    auto listed = parse_list(c.data.at("adapted").at("invariants"), m.names);
    if (listed != out) throw FixtureError(c.id + ": adapted invariants disagree with the slice invariants");
  }
  return out;
}

EquilibriumLocus equilibrium_constraints(const NilpotentCase& c) {
  const auto& rj = c.data.at("reduction");
  EquilibriumLocus l;
  l.coords = rj.at("coords").get<std::string>();
  l.ambient = l.coords == "slice" ? c.chart.names : adapted_map(c).names;
  l.invariants = invariants_in(c, l.coords);
  for (const auto& k : rj.at("constraints")) {
    int j = k.at("invariant").get<int>() - 1;
    int beta = index_of(l.ambient, k.at("wrt").get<std::string>());
    if (j < 0 || j >= static_cast<int>(l.invariants.size()) || beta < 0)
      throw FixtureError(c.id + ": bad constraint entry " + k.dump());
    l.constraint_index.emplace_back(j, beta);
    l.constraints.push_back(l.invariants[j].partial(beta, 0));
  }
  for (const auto& i : rj.at("retained")) l.retained.push_back(i.get<int>() - 1);
  const int r = static_cast<int>(l.retained.size());
  for (int i = 0; i < static_cast<int>(l.ambient.size()); ++i)
    if (std::find(l.retained.begin(), l.retained.end(), i) == l.retained.end()) l.constrained.push_back(i);
  for (int a = 0; a < r; ++a)
    if (l.retained[a] != a) throw FixtureError(c.id + ": retained coordinates must come first");
  l.params = rj.at("params").get<Symbols>();
  l.substitution = parse_list(rj.at("locus"), l.params);
  if (l.substitution.size() != l.ambient.size() || static_cast<int>(l.params.size()) != r)
    throw FixtureError(c.id + ": locus size mismatch");
  for (const auto& k : l.constraints) l.residuals.push_back(k.substitute(l.substitution));

  std::vector<DiffPoly> ret(l.substitution.begin(), l.substitution.begin() + r);
  PolyMat dx = poly_jacobian(ret, r);
  l.full_rank = !poly_determinant(dx).is_zero();
  if (rj.contains("generator_jacobian")) {
    l.generator_jacobian = PolyMat(r, r);
    const auto& g = rj.at("generator_jacobian");
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) l.generator_jacobian(a, b) = DiffPoly::parse(g.at(a).at(b).get<std::string>(), l.params);
    if (l.generator_jacobian * dx != PolyMat::identity(r))
      throw FixtureError(c.id + ": generator Jacobian does not invert the branch Jacobian");
  } else {
    for (int a = 0; a < r; ++a)
      if (ret[a] != DiffPoly::var(a)) throw FixtureError(c.id + ": branch does not fix the retained coordinates");
    l.generator_jacobian = PolyMat::identity(r);
  }
  return l;
}

DiracReport dirac_check(const LocalPoissonOperator& p, const EquilibriumLocus& locus) {
  DiracReport d;
  PolyMat f = on_branch(delta_coefficient(p, 0), locus.substitution);
  PolyMat om = on_branch(delta_coefficient(p, 1), locus.substitution);
  d.mixed_F_zero = d.mixed_Omega_zero = true;
  for (int a : locus.retained)
    for (int b : locus.constrained) {
      d.mixed_F_zero = d.mixed_F_zero && f(a, b).is_zero() && f(b, a).is_zero();
      d.mixed_Omega_zero = d.mixed_Omega_zero && om(a, b).is_zero() && om(b, a).is_zero();
    }
  // Every term of the correction carries a mixed F block.
  d.correction_zero = d.mixed_F_zero;
  return d;
}

LocalPoissonOperator dirac_reduce(const LocalPoissonOperator& p, const EquilibriumLocus& locus) {
  Symbols kept;
  for (int a : locus.retained) kept.push_back(p.names()[a]);
  LocalPoissonOperator minor = p.submatrix(locus.retained, kept);
  LocalPoissonOperator restricted = minor.map([&](const DiffPoly& c) { return c.substitute(locus.substitution); });
  const int r = static_cast<int>(locus.retained.size());
  if (locus.generator_jacobian == PolyMat::identity(r)) return restricted.renamed(locus.params);
  OpMat l(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (!locus.generator_jacobian(a, b).is_zero()) l(a, b).add(0, locus.generator_jacobian(a, b));
  return conjugate(restricted, l, locus.params);
}

DiffOperator grade_part(const DiffOperator& a, int g) {
  DiffOperator r;
  for (int k = 0; k <= a.order() && k <= g; ++k) {
    DiffPoly c = a.coeff(k).jet_weight_part(g - k);
    if (!c.is_zero()) r.set(k, c);
  }
  return r;
}

OpMat grade_part(const OpMat& m, int g) {
  return m.map<DiffOperator>([g](const DiffOperator& a) { return grade_part(a, g); });
}

OpMat grade_truncate(const OpMat& m, int gmax) {
  OpMat r(m.rows(), m.cols());
  for (int g = 0; g <= gmax; ++g) r += grade_part(m, g);
  return r;
}

DiracSeries dirac_series(const LocalPoissonOperator& p, const EquilibriumLocus& locus, int max_degree) {
  DiracSeries ds;
  ds.max_degree = max_degree;
  const int r = static_cast<int>(locus.retained.size());
  const int s = static_cast<int>(locus.constrained.size());
  const int n = r + s;
  if (static_cast<int>(locus.constraints.size()) != s) {
    ds.reason = "constraint equations are not a complete independent set";
    return ds;
  }
  std::vector<DiffPoly> gens;
  for (int a : locus.retained) gens.push_back(DiffPoly::var(a));
  for (const auto& k : locus.constraints) gens.push_back(k);
  OpMat l(n, n);
  for (int a = 0; a < n; ++a) {
    auto row = frechet(gens[a], n);
    for (int i = 0; i < n; ++i) l(a, i) = row[i];
  }
  OpMat m = compose(compose(l, p.entries()), adjoint(l));
  m = m.map<DiffOperator>([&](const DiffOperator& a) {
    return a.map([&](const DiffPoly& c) { return c.substitute(locus.substitution); });
  });
  auto block = [&](int r0, int c0, int nr, int nc) {
    OpMat b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = m(r0 + i, c0 + j);
    return b;
  };
  OpMat prr = block(0, 0, r, r), prc = block(0, r, r, s), pcr = block(r, 0, s, r), cc = block(r, r, s, s);
  PolyMat c0(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) c0(i, j) = grade_part(cc(i, j), 0).coeff(0);
  DiffPoly det = poly_determinant(c0);
  if (det.size() != 1) {
    ds.reason = det.is_zero() ? "constraint block is degenerate" : "constraint block determinant is not a monomial";
    return ds;
  }
  OpMat c0inv(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      PolyMat minor(s - 1, s - 1);
      for (int a = 0, aa = 0; a < s; ++a) {
        if (a == j) continue;
        for (int b = 0, bb = 0; b < s; ++b)
          if (b != i) minor(aa, bb++) = c0(a, b);
        ++aa;
      }
      DiffPoly cof = (s == 1 ? DiffPoly(FieldScalar(1)) : poly_determinant(minor)).div_monomial(det);
      if ((i + j) % 2) cof = -cof;
      if (!cof.is_zero()) c0inv(i, j).set(0, cof);
    }
  const int gmax = max_degree + 1;
  OpMat rest = cc - grade_part(cc, 0);
  OpMat inv = c0inv, term = c0inv;
  for (int k = 1; k <= gmax; ++k) {
    term = -grade_truncate(compose(compose(c0inv, rest), term), gmax);
    inv += term;
  }
  OpMat corr = grade_truncate(compose(compose(prc, inv), pcr), gmax);
  Symbols kept;
  for (int a : locus.retained) kept.push_back(p.names()[a]);
  LocalPoissonOperator red(kept, prr - corr);
  OpMat g(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (!locus.generator_jacobian(a, b).is_zero()) g(a, b).set(0, locus.generator_jacobian(a, b));
  red = conjugate(red, g, locus.params);
  ds.bracket = LocalPoissonOperator(locus.params, grade_truncate(red.entries(), gmax));
  ds.jacobi_lowest_degree = check_jacobi(ds.bracket).lowest_degree;
  ds.available = true;
  return ds;
}

DerivedPencil derived_pencil(const LocalPoissonOperator& p2, const std::vector<DiffPoly>& e) {
  DerivedPencil d;
  d.p2 = p2;
  d.e = e;
  d.p1 = lie_derivative(p2, e);
  d.lie_e_squared_zero = lie_derivative(d.p1, e).is_zero();
  d.omega1_nondegenerate = !poly_determinant(delta_coefficient(d.p1, 1)).is_zero();
  d.checks = pencil_checks(d.p2, d.p1, e);
  return d;
}

FlatChart flat_chart(const NilpotentCase& c, const Symbols& params) {
  const auto& fj = c.data.at("flat");
  FlatChart ch;
  ch.names = fj.at("names").get<Symbols>();
  ch.forward = parse_list(fj.at("forward"), params);
  for (const auto& s : fj.at("inverse")) ch.inverse.push_back(SymExpr::parse(s.get<std::string>(), ch.names));
  const int r = static_cast<int>(params.size());
  if (static_cast<int>(ch.forward.size()) != r || static_cast<int>(ch.inverse.size()) != r)
    throw FixtureError(c.id + ": flat chart size mismatch");
  ch.jacobian = poly_jacobian(ch.forward, r);
  std::vector<SymExpr> fwd;
  for (const auto& f : ch.forward) fwd.push_back(f.to_symexpr());
  ch.inverse_ok = true;
  for (int a = 0; a < r; ++a) {
    ch.inverse_ok = ch.inverse_ok && fwd[a].substitute_all(ch.inverse) == SymExpr::var(a);
    ch.inverse_ok = ch.inverse_ok && ch.inverse[a].substitute_all(fwd) == SymExpr::var(a);
  }
  return ch;
}

SymMat push_tensor(const PolyMat& m, const FlatChart& chart) {
  PolyMat t = chart.jacobian * m * chart.jacobian.transpose();
  return t.map<SymExpr>([&](const DiffPoly& p) { return p.to_symexpr().substitute_all(chart.inverse); });
}

std::vector<SymExpr> push_vector(const std::vector<DiffPoly>& v, const FlatChart& chart) {
  std::vector<SymExpr> out;
  for (int a = 0; a < chart.jacobian.rows(); ++a) {
    DiffPoly s;
    for (int i = 0; i < chart.jacobian.cols(); ++i) s += chart.jacobian(a, i) * v[i];
    out.push_back(s.to_symexpr().substitute_all(chart.inverse));
  }
  return out;
}

FlatPencil flat_pencil(const DerivedPencil& d, const FlatChart& chart) {
  FlatPencil f;
  f.names = chart.names;
  f.omega2 = push_tensor(delta_coefficient(d.p2, 1), chart);
  f.omega1 = push_tensor(delta_coefficient(d.p1, 1), chart);
  f.s22 = push_tensor(delta_coefficient(d.p2, 3), chart);
  f.s12 = push_tensor(delta_coefficient(d.p1, 3), chart);
  f.e = push_vector(d.e, chart);
  f.dispersionless = degree_part(d.p2, -1).is_zero() && degree_part(d.p1, -1).is_zero();
  f.s1_zero = delta_coefficient(d.p2, 2).is_zero() && delta_coefficient(d.p1, 2).is_zero();
  f.degree1_zero = degree_part(d.p2, 1).is_zero() && degree_part(d.p1, 1).is_zero();
  return f;
}

ReducedCase reduce_case(const NilpotentCase& c, const LocalPoissonOperator& b2) {
  ReducedCase rc;
  rc.locus = equilibrium_constraints(c);
  if (rc.locus.coords == "adapted") {
    CoordinateMap m = adapted_map(c);
    rc.ambient = change_coordinates(b2, m.forward, m.inverse, m.names);
  } else {
    rc.ambient = b2;
  }
  rc.dirac = dirac_check(rc.ambient, rc.locus);
  if (rc.dirac.flagged()) rc.series = dirac_series(rc.ambient, rc.locus);
  LocalPoissonOperator p2 = dirac_reduce(rc.ambient, rc.locus);
  rc.pencil = derived_pencil(p2, parse_list(c.data.at("reduction").at("e"), rc.locus.params));
  rc.chart = flat_chart(c, rc.locus.params);
  rc.flat = flat_pencil(rc.pencil, rc.chart);
  return rc;
}

SymMat parse_sym_matrix(const nlohmann::json& rows, const Symbols& names) {
  const int n = static_cast<int>(rows.size());
  SymMat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows.at(i).size()) != n) throw ParseError("matrix is not square");
    for (int j = 0; j < n; ++j) m(i, j) = SymExpr::parse(rows.at(i).at(j).get<std::string>(), names);
  }
  return m;
}

PolyMat poly_jacobian(const std::vector<DiffPoly>& f, int nvars) {
  PolyMat j(static_cast<int>(f.size()), nvars);
  for (int a = 0; a < static_cast<int>(f.size()); ++a)
    for (int i = 0; i < nvars; ++i) j(a, i) = f[a].partial(i, 0);
  return j;
}

DiffPoly poly_determinant(const PolyMat& m) {
  const int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return DiffPoly(FieldScalar(1));
  if (n == 1) return m(0, 0);
  DiffPoly det;
  for (int j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMat minor(n - 1, n - 1);
    for (int a = 1; a < n; ++a)
      for (int b = 0, bb = 0; b < n; ++b)
        if (b != j) minor(a - 1, bb++) = m(a, b);
    DiffPoly term = m(0, j) * poly_determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace wb
