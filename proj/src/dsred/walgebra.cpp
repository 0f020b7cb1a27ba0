#include "wbench/dsred/walgebra.hpp"

#include <algorithm>
#include <map>

namespace wb {

namespace {

PolyMat poly_commutator(const PolyMat& a, const PolyMat& b) { return a * b - b * a; }

PolyMat derivative(const PolyMat& m) {
  return m.map<DiffPoly>([](const DiffPoly& p) { return p.D(); });
}

DiffPoly poly_pairing(const FMat& x, const PolyMat& y, const FieldScalar& kappa) {
  DiffPoly s;
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k)
      if (!x(i, k).is_zero() && !y(k, i).is_zero()) s += y(k, i) * x(i, k);
  return s * kappa;
}

// Y - sum_j kappa tr(X_j^* Y) X_j
PolyMat project(const PolyMat& y, const std::vector<FMat>& dual, const std::vector<FMat>& basis, const FieldScalar& kappa) {
  PolyMat r = y;
  for (std::size_t j = 0; j < dual.size(); ++j) {
    DiffPoly c = poly_pairing(dual[j], y, kappa);
    if (c.is_zero()) continue;
    for (int a = 0; a < y.rows(); ++a)
      for (int b = 0; b < y.cols(); ++b)
        if (!basis[j](a, b).is_zero()) r(a, b) -= c * basis[j](a, b);
  }
  return r;
}

}  // namespace

LiftedGradient lift_gradient(const NilpotentCase& c) {
  const int n = c.n, dim = c.dim;
  const FMat& L1 = c.triple.e;
  const FMat& h = c.triple.h;
  const FMat& f = c.triple.f;
  LiftedGradient lift;
  lift.names = c.chart.names;
  for (const auto& w : default_names("w", dim)) lift.names.push_back(w);

  // X^*: the basis of g^{L1} dual to X under the normalized form.
  auto kbasis = centralizer_basis(L1);
  if (static_cast<int>(kbasis.size()) != dim) throw LiftError("dim g^{L1} differs from dim g^f");
  FMat gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) gram(a, b) = normalized_form(kbasis[a], c.chart.basis[b], c.kappa);
  FMat ginv = inverse(gram);
  for (int i = 0; i < dim; ++i) {
    FMat x(n, n);
    for (int a = 0; a < dim; ++a)
      if (!ginv(i, a).is_zero()) x += kbasis[a].scaled(ginv(i, a));
    lift.dual.push_back(x);
  }

  // Homogeneous basis of im ad_f, grade by grade.
  std::map<Rational, std::vector<std::vector<FieldScalar>>> images;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      FMat img = commutator(f, elementary(n, a, b));
      if (img.is_zero()) continue;
      images[grade_of(h, a, b) - Rational(1)].push_back(flatten(img));
    }
  std::vector<Rational> grades;
  for (const auto& [g, cols] : images)
    for (const auto& v : column_basis(cols)) {
      lift.complement.push_back(unflatten(v, n));
      grades.push_back(g);
    }
  const int nu = static_cast<int>(lift.complement.size());
  if (nu + dim != n * n - 1) throw LiftError("complement dimension mismatch");

  PolyMat q = c.chart.matrix;
  PolyMat base(n, n);
  for (int i = 0; i < dim; ++i) base += to_poly(lift.dual[i]).scaled(DiffPoly::var(dim + i));
  lift.unknowns.assign(nu, DiffPoly());

  auto assemble = [&]() {
    PolyMat v = base;
    for (int a = 0; a < nu; ++a)
      if (!lift.unknowns[a].is_zero()) v += to_poly(lift.complement[a]).scaled(lift.unknowns[a]);
    return v;
  };

  std::vector<Rational> order(grades.begin(), grades.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::reverse(order.begin(), order.end());
  for (const Rational& gam : order) {
    std::vector<int> idx;
    for (int a = 0; a < nu; ++a)
      if (grades[a] == gam) idx.push_back(a);
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (grade_of(h, i, j) == gam + Rational(1)) slots.emplace_back(i, j);
    FMat sys(static_cast<int>(slots.size()), static_cast<int>(idx.size()));
    for (std::size_t col = 0; col < idx.size(); ++col) {
      PolyMat img = project(to_poly(commutator(L1, lift.complement[idx[col]])), lift.dual, c.chart.basis, c.kappa);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        const DiffPoly& e = img(slots[s].first, slots[s].second);
        sys(static_cast<int>(s), static_cast<int>(col)) = e.is_zero() ? FieldScalar() : e.constant_value();
      }
    }
    PolyMat v = assemble();
    PolyMat res = project(derivative(v) + poly_commutator(q, v), lift.dual, c.chart.basis, c.kappa);
    FMat linv;
    try {
      linv = left_inverse(sys);
    } catch (const DomainError&) {
      throw LiftError("singular lift system at grade " + gam.str());
    }
    std::vector<DiffPoly> sol(idx.size());
    for (std::size_t col = 0; col < idx.size(); ++col)
      for (std::size_t s = 0; s < slots.size(); ++s) {
        const FieldScalar& l = linv(static_cast<int>(col), static_cast<int>(s));
        if (!l.is_zero()) sol[col] -= res(slots[s].first, slots[s].second) * l;
      }
    for (std::size_t s = 0; s < slots.size(); ++s) {
      DiffPoly lhs;
      for (std::size_t col = 0; col < idx.size(); ++col)
        if (!sys(int(s), int(col)).is_zero()) lhs += sol[col] * sys(int(s), int(col));
      if (lhs + res(slots[s].first, slots[s].second) != DiffPoly())
        throw LiftError("inconsistent lift system at grade " + gam.str());
    }
    for (std::size_t col = 0; col < idx.size(); ++col) lift.unknowns[idx[col]] = sol[col];
  }

  lift.matrix = assemble();
  PolyMat r = derivative(lift.matrix) + poly_commutator(q, lift.matrix);
  if (!project(r, lift.dual, c.chart.basis, c.kappa).is_zero()) throw LiftError("lift residual leaves g^f");
  lift.residual = r;
  for (int j = 0; j < dim; ++j) lift.components.push_back(poly_pairing(lift.dual[j], r, c.kappa));
  return lift;
}

LocalPoissonOperator walgebra_from_lift(const NilpotentCase& c, const LiftedGradient& lift) {
  const int dim = c.dim;
  LocalPoissonOperator p(c.chart.names);
  for (int j = 0; j < dim; ++j) {
    const DiffPoly& rj = lift.components[j];
    for (const auto& [vk, coef] : rj.gradient()) {
      int v = vk.first;
      if (v < dim) continue;
      if (coef.max_var() >= dim) throw LiftError("bracket is not linear in the gradient");
      p(j, v - dim).add(vk.second, coef);
    }
    // Terms without w would be a drift, not a bracket.
    DiffPoly rest = rj;
    for (int i = 0; i < dim; ++i) rest = rest.set_zero(dim + i);
    if (!rest.is_zero()) throw LiftError("bracket has a gradient-free part");
  }
  return p;
}

LocalPoissonOperator classical_walgebra(const NilpotentCase& c) { return walgebra_from_lift(c, lift_gradient(c)); }

CoordinateMap adapted_map(const NilpotentCase& c) {
  CoordinateMap m;
  if (!c.data.contains("adapted")) {
    m.names = c.chart.names;
    for (int i = 0; i < c.dim; ++i) {
      m.forward.push_back(DiffPoly::var(i));
      m.inverse.push_back(DiffPoly::var(i));
    }
    return m;
  }
  const auto& a = c.data.at("adapted");
  m.identity = false;
  m.names = a.at("names").get<Symbols>();
  for (const auto& s : a.at("forward")) m.forward.push_back(DiffPoly::parse(s.get<std::string>(), c.chart.names));
  for (const auto& s : a.at("inverse")) m.inverse.push_back(DiffPoly::parse(s.get<std::string>(), m.names));
  if (!maps_are_inverse(m.forward, m.inverse)) throw FixtureError(c.id + ": adapted maps are not mutually inverse");
  return m;
}

PencilData first_bracket(const NilpotentCase& c, const LocalPoissonOperator& b2) {
  const auto& pj = c.data.at("pencil");
  PencilData d;
  d.coords = pj.at("coords").get<std::string>();
  if (d.coords == "adapted") {
    CoordinateMap m = adapted_map(c);
    d.b2 = change_coordinates(b2, m.forward, m.inverse, m.names);
  } else {
    d.b2 = b2;
  }
  for (const auto& s : pj.at("liouville")) d.liouville.push_back(DiffPoly::parse(s.get<std::string>(), d.b2.names()));
  d.b1 = lie_derivative(d.b2, d.liouville);
  return d;
}

}  // namespace wb
