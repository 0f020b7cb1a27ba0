#include "wbench/centralinv/central.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace wb {

namespace {

bool value_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Point extend(const Point& t, std::complex<double> lambda) {
  Point p = t;
  p.push_back(lambda);
  return p;
}

struct Formula {
  CharPoly psi;
  SymExpr dlambda;
  std::vector<SymExpr> dt;
  SymMat s22, s12, o1;
};

Formula make_formula(const FlatPencil& f) {
  if (!f.dispersionless) throw DomainError("pencil has a nonzero ultralocal part");
  if (!f.s1_zero) throw DomainError("pencil has a nonzero S;1 part");
  Formula fm;
  fm.psi = char_poly(f.omega2, f.omega1, f.names);
  fm.dlambda = fm.psi.psi.diff(fm.psi.lambda);
  for (int k = 0; k < fm.psi.lambda; ++k) fm.dt.push_back(fm.psi.psi.diff(k));
  fm.s22 = f.s22;
  fm.s12 = f.s12;
  fm.o1 = f.omega1;
  return fm;
}

std::complex<double> ev(const SymExpr& e, const Point& p) { return e.is_zero() ? 0.0 : e.eval(p); }

std::optional<CentralSample> evaluate(const Formula& fm, const Point& t) {
  CentralSample s;
  s.point = t;
  try {
    s.roots = canonical_roots(fm.psi, t);
    const int r = fm.psi.lambda;
    CMat s22 = eval_matrix(fm.s22, t), s12 = eval_matrix(fm.s12, t), o1 = eval_matrix(fm.o1, t);
    for (const auto& u : s.roots) {
      Point p = extend(t, u);
      Eigen::VectorXcd g(r);
      for (int k = 0; k < r; ++k) g(k) = ev(fm.dt[k], p);
      std::complex<double> pl = ev(fm.dlambda, p);
      std::complex<double> num = g.transpose() * (s22 - u * s12) * g;
      std::complex<double> den = g.transpose() * o1 * g;
      if (std::abs(den) < 1e-12) return std::nullopt;
      s.c.push_back(pl * pl * num / (3.0 * den * den));
    }
  } catch (const DomainError&) {
    return std::nullopt;
  }
  return s;
}

void summarize(CentralInvariantReport& rep, double tol) {
  if (rep.samples.empty()) throw DomainError("no sample point admits the central-invariant formula");
  rep.values = sorted_values(rep.samples.front().c);
  rep.deviation = 0;
  for (const auto& s : rep.samples) {
    auto v = sorted_values(s.c);
    for (std::size_t i = 0; i < v.size(); ++i) rep.deviation = std::max(rep.deviation, std::abs(v[i] - rep.values[i]));
  }
  rep.constant = rep.deviation <= tol;
  double spread = 0;
  for (const auto& v : rep.values) spread = std::max(spread, std::abs(v - rep.values.front()));
  rep.topological = rep.constant && spread <= tol;
}

}  // namespace

std::vector<std::complex<double>> sorted_values(std::vector<std::complex<double>> v) {
  std::sort(v.begin(), v.end(), value_less);
  return v;
}

CharPoly char_poly(const SymMat& o2, const SymMat& o1, const Symbols& names) {
  const int r = static_cast<int>(names.size());
  if (r > 3) throw DomainError("characteristic polynomial supports rank at most 3");
  CharPoly cp;
  cp.names = names;
  cp.names.push_back("lambda");
  cp.lambda = r;
  SymExpr lam = SymExpr::var(r);
  SymMat m = o2 - o1.map<SymExpr>([&](const SymExpr& e) { return e * lam; });
  cp.psi = sym_determinant(m);
  cp.coeffs = cp.psi.coefficients_in(r);
  while (!cp.coeffs.empty() && cp.coeffs.back().is_zero()) cp.coeffs.pop_back();
  return cp;
}

std::vector<std::complex<double>> canonical_roots(const CharPoly& psi, const Point& t, double separation) {
  const int n = psi.degree();
  if (n < 1) throw DomainError("characteristic polynomial has no roots");
  Point p = extend(t, 0.0);
  std::vector<std::complex<double>> a;
  for (const auto& c : psi.coeffs) a.push_back(ev(c, p));
  if (std::abs(a.back()) < 1e-14) throw DomainError("leading coefficient vanishes at the point");
  CMat comp = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a.back();
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  roots = sorted_values(roots);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) < separation) throw RootCollision("roots collide at the point");
  return roots;
}

CentralInvariantReport central_invariants(const FlatPencil& f, const std::vector<Point>& points, double tol) {
  Formula fm = make_formula(f);
  CentralInvariantReport rep;
  for (const auto& p : points) {
    if (auto s = evaluate(fm, p)) rep.samples.push_back(*s);
    else rep.rejected.push_back(p);
  }
  summarize(rep, tol);
  return rep;
}

CentralInvariantReport central_invariants(const FlatPencil& f, std::uint64_t seed, int count, double tol) {
  Formula fm = make_formula(f);
  CentralInvariantReport rep;
  for (const auto& p : sample_points(static_cast<int>(f.names.size()), seed, 8 * count)) {
    if (static_cast<int>(rep.samples.size()) == count) break;
    if (auto s = evaluate(fm, p)) rep.samples.push_back(*s);
    else rep.rejected.push_back(p);
  }
  if (static_cast<int>(rep.samples.size()) < count) throw DomainError("too few admissible sample points");
  summarize(rep, tol);
  return rep;
}

void compare_expected(CentralInvariantReport& rep, const std::vector<FieldScalar>& expected, double tol) {
  std::vector<std::complex<double>> want;
  for (const auto& e : expected) want.push_back(e.embed());
  want = sorted_values(want);
  rep.match_error = 0;
  if (want.size() != rep.values.size()) {
    rep.matches = false;
    return;
  }
  for (const auto& s : rep.samples) {
    auto v = sorted_values(s.c);
    for (std::size_t i = 0; i < v.size(); ++i) rep.match_error = std::max(rep.match_error, std::abs(v[i] - want[i]));
  }
  rep.matches = rep.match_error <= tol;
}

RescaleReport rescale_check(const FlatPencil& f, const CentralInvariantReport& base, const FieldScalar& kappa) {
  auto scale = [&](const SymMat& m) { return m.map<SymExpr>([&](const SymExpr& e) { return e * kappa; }); };
  FlatPencil g = f;
  g.omega2 = scale(f.omega2);
  g.omega1 = scale(f.omega1);
  g.s22 = scale(f.s22);
  g.s12 = scale(f.s12);
  std::vector<Point> pts;
  for (const auto& s : base.samples) pts.push_back(s.point);
  auto rep = central_invariants(g, pts);
  RescaleReport out;
  out.kappa = kappa;
  out.values = rep.values;
  std::complex<double> k = kappa.embed();
  for (std::size_t i = 0; i < base.samples.size() && i < rep.samples.size(); ++i) {
    std::vector<std::complex<double>> want;
    for (const auto& c : base.samples[i].c) want.push_back(c / k);
    want = sorted_values(want);
    auto have = sorted_values(rep.samples[i].c);
    for (std::size_t j = 0; j < want.size(); ++j) out.max_error = std::max(out.max_error, std::abs(have[j] - want[j]));
  }
  if (rep.samples.size() != base.samples.size()) out.max_error = INFINITY;
  return out;
}

}  // namespace wb
