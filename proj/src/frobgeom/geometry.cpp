#include "wbench/frobgeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wb {

namespace {

std::complex<double> ev(const SymExpr& e, const Point& p) { return e.eval(p); }

bool invertible(const CMat& m) {
  Eigen::FullPivLU<CMat> lu(m);
  lu.setThreshold(1e-12);
  return lu.isInvertible();
}

std::vector<std::vector<std::vector<SymExpr>>> third_derivatives(const SymExpr& f, int r) {
  std::vector<std::vector<std::vector<SymExpr>>> t(r, std::vector<std::vector<SymExpr>>(r, std::vector<SymExpr>(r)));
  for (int i = 0; i < r; ++i) {
    SymExpr fi = f.diff(i);
    for (int j = i; j < r; ++j) {
      SymExpr fij = fi.diff(j);
      for (int k = j; k < r; ++k) {
        SymExpr v = fij.diff(k);
        int idx[3] = {i, j, k};
        std::sort(idx, idx + 3);
        do {
          t[idx[0]][idx[1]][idx[2]] = v;
        } while (std::next_permutation(idx, idx + 3));
      }
    }
  }
  return t;
}

SymExpr field_times(const SymExpr& e, const FieldScalar& c) { return e * c; }

}  // namespace

std::vector<Point> sample_points(int dim, std::uint64_t seed, int count, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(static_cast<int>(std::ceil(lo * 64)), static_cast<int>(std::floor(hi * 64)));
  std::vector<Point> pts;
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 0; i < dim; ++i) p.emplace_back(pick(rng) / 64.0, 0.0);
    pts.push_back(p);
  }
  return pts;
}

CMat eval_matrix(const SymMat& m, const Point& p) {
  CMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).is_zero() ? 0.0 : ev(m(i, j), p);
  return r;
}

bool is_symmetric(const SymMat& m) { return m.rows() == m.cols() && m == m.transpose(); }

ContravariantMetric::ContravariantMetric(Symbols names, SymMat omega) : names_(std::move(names)), omega_(std::move(omega)) {
  if (!is_symmetric(omega_)) throw DomainError("contravariant metric is not symmetric");
  const int r = dim();
  for (int l = 0; l < r; ++l) d1_.push_back(omega_.map<SymExpr>([l](const SymExpr& e) { return e.diff(l); }));
  d2_.assign(r, std::vector<SymMat>(r));
  for (int l = 0; l < r; ++l)
    for (int m = 0; m < r; ++m) d2_[l][m] = d1_[l].map<SymExpr>([m](const SymExpr& e) { return e.diff(m); });
}

ContravariantMetric::Jet ContravariantMetric::jet(const Point& p, bool second) const {
  const int r = dim();
  Jet j;
  j.om = eval_matrix(omega_, p);
  if (!invertible(j.om)) throw DomainError("metric is singular at the sample point");
  j.g = j.om.inverse();
  for (int l = 0; l < r; ++l) {
    j.dom.push_back(eval_matrix(d1_[l], p));
    j.dg.push_back(-j.g * j.dom[l] * j.g);
  }
  if (second) {
    j.ddg.assign(r, std::vector<CMat>(r));
    for (int l = 0; l < r; ++l)
      for (int m = 0; m < r; ++m) {
        CMat ddo = eval_matrix(d2_[l][m], p);
        j.ddg[l][m] = j.g * j.dom[l] * j.g * j.dom[m] * j.g + j.g * j.dom[m] * j.g * j.dom[l] * j.g - j.g * ddo * j.g;
      }
  }
  return j;
}

namespace {

// Gamma_{kij} = (d_i g_kj + d_j g_ki - d_k g_ij) / 2
std::vector<CMat> first_kind(const std::vector<CMat>& dg, int r) {
  std::vector<CMat> low(r, CMat::Zero(r, r));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) low[k](i, j) = 0.5 * (dg[i](k, j) + dg[j](k, i) - dg[k](i, j));
  return low;
}

std::vector<CMat> raise_first(const CMat& om, const std::vector<CMat>& low, int r) {
  std::vector<CMat> up(r, CMat::Zero(r, r));
  for (int s = 0; s < r; ++s)
    for (int k = 0; k < r; ++k)
      if (om(s, k) != 0.0) up[s] += om(s, k) * low[k];
  return up;
}

}  // namespace

std::vector<CMat> ContravariantMetric::levi_civita(const Point& p) const {
  Jet j = jet(p, false);
  return raise_first(j.om, first_kind(j.dg, dim()), dim());
}

std::vector<CMat> ContravariantMetric::christoffel(const Point& p) const {
  const int r = dim();
  Jet j = jet(p, false);
  auto gam = raise_first(j.om, first_kind(j.dg, r), r);
  std::vector<CMat> out(r, CMat::Zero(r, r));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int jj = 0; jj < r; ++jj)
        for (int m = 0; m < r; ++m) out[k](i, jj) -= j.om(i, m) * gam[jj](m, k);
  return out;
}

double ContravariantMetric::curvature(const Point& p) const {
  const int r = dim();
  Jet j = jet(p, true);
  auto low = first_kind(j.dg, r);
  auto gam = raise_first(j.om, low, r);
  // dgam[l][s](i, k) = d_l Gamma^s_{ik}
  std::vector<std::vector<CMat>> dgam(r, std::vector<CMat>(r, CMat::Zero(r, r)));
  for (int l = 0; l < r; ++l) {
    std::vector<CMat> dlow(r, CMat::Zero(r, r));
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        for (int jj = 0; jj < r; ++jj)
          dlow[k](i, jj) = 0.5 * (j.ddg[l][i](k, jj) + j.ddg[l][jj](k, i) - j.ddg[l][k](i, jj));
    for (int s = 0; s < r; ++s)
      for (int k = 0; k < r; ++k) dgam[l][s] += j.dom[l](s, k) * low[k] + j.om(s, k) * dlow[k];
  }
  double worst = 0, scale = 0;
  for (int s = 0; s < r; ++s)
    for (int i = 0; i < r; ++i)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          std::complex<double> t1 = dgam[a][s](i, b), t2 = dgam[b][s](i, a), t3 = 0, t4 = 0;
          for (int m = 0; m < r; ++m) {
            t3 += gam[s](a, m) * gam[m](i, b);
            t4 += gam[s](b, m) * gam[m](i, a);
          }
          worst = std::max(worst, std::abs(t1 - t2 + t3 - t4));
          scale = std::max({scale, std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
        }
  return worst / (1.0 + scale);
}

double curvature_residual(const ContravariantMetric& g, const std::vector<Point>& points) {
  double worst = 0;
  int used = 0;
  for (const auto& p : points) {
    try {
      worst = std::max(worst, g.curvature(p));
      ++used;
    } catch (const DomainError&) {
    }
  }
  if (used == 0) throw DomainError("metric is singular at every sample point");
  return worst;
}

bool FlatPencilReport::ok(double tol) const {
  bool all = omega2 <= tol && omega1 <= tol && additivity <= tol;
  for (const auto& [l, v] : combinations) all = all && v <= tol;
  return all;
}

FlatPencilReport flat_pencil_check(const SymMat& o2, const SymMat& o1, const Symbols& names, const std::vector<Point>& points,
                                   const std::vector<FieldScalar>& lambdas) {
  FlatPencilReport rep;
  ContravariantMetric g2(names, o2), g1(names, o1);
  rep.omega2 = curvature_residual(g2, points);
  rep.omega1 = curvature_residual(g1, points);
  for (const auto& lam : lambdas) {
    SymMat comb = o2 + o1.map<SymExpr>([&](const SymExpr& e) { return field_times(e, lam); });
    ContravariantMetric gl(names, comb);
    rep.combinations.emplace_back(lam, curvature_residual(gl, points));
    std::complex<double> l(lam.embed());
    for (const auto& p : points) {
      std::vector<CMat> a, b, c;
      try {
        a = gl.christoffel(p);
        b = g2.christoffel(p);
        c = g1.christoffel(p);
      } catch (const DomainError&) {
        continue;
      }
      for (std::size_t k = 0; k < a.size(); ++k) {
        CMat diff = a[k] - b[k] - l * c[k];
        double scale = 1.0 + a[k].cwiseAbs().maxCoeff();
        rep.additivity = std::max(rep.additivity, diff.cwiseAbs().maxCoeff() / scale);
      }
    }
  }
  return rep;
}

std::vector<SymExpr> raise_gradient(const SymMat& o, const SymExpr& f) {
  std::vector<SymExpr> out(o.rows());
  for (int j = 0; j < o.cols(); ++j) {
    SymExpr fj = f.diff(j);
    if (fj.is_zero()) continue;
    for (int i = 0; i < o.rows(); ++i)
      if (!o(i, j).is_zero()) out[i] += o(i, j) * fj;
  }
  return out;
}

std::vector<SymExpr> vector_bracket(const std::vector<SymExpr>& a, const std::vector<SymExpr>& b) {
  const int r = static_cast<int>(a.size());
  std::vector<SymExpr> out(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += a[j] * b[i].diff(j) - b[j] * a[i].diff(j);
  return out;
}

SymMat lie_derivative(const SymMat& o, const std::vector<SymExpr>& v) {
  const int r = o.rows();
  SymMat out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      SymExpr s;
      for (int k = 0; k < r; ++k) {
        s += v[k] * o(i, j).diff(k);
        s -= o(k, j) * v[i].diff(k);
        s -= o(i, k) * v[j].diff(k);
      }
      out(i, j) = s;
    }
  return out;
}

std::optional<FieldScalar> solve_charge(const SymMat& o2, const std::vector<SymExpr>& euler) {
  SymMat l = lie_derivative(o2, euler);
  for (int i = 0; i < o2.rows(); ++i)
    for (int j = 0; j < o2.cols(); ++j) {
      if (o2(i, j).is_zero()) continue;
      const auto& lead = o2(i, j).terms().front();
      FieldScalar k;
      for (const auto& t : l(i, j).terms())
        if (t.mono == lead.mono) k = t.coeff / lead.coeff;
      if (l != o2.map<SymExpr>([&](const SymExpr& e) { return field_times(e, k); })) return std::nullopt;
      return k + FieldScalar(1);
    }
  return std::nullopt;
}

QfpmReport qfpm_check(const SymMat& o2, const SymMat& o1, const SymExpr& tau, const Symbols& names,
                      const std::vector<Point>& points) {
  QfpmReport rep;
  rep.tau = tau;
  rep.E = raise_gradient(o2, tau);
  rep.e = raise_gradient(o1, tau);
  rep.charge = solve_charge(o2, rep.E);
  rep.bracket_ok = vector_bracket(rep.e, rep.E) == rep.e;
  rep.lie_e_o2 = lie_derivative(o2, rep.e) == o1;
  rep.lie_e_o1 = lie_derivative(o1, rep.e).is_zero();
  if (!rep.charge) return rep;
  const int r = o2.rows();
  ContravariantMetric g1(names, o1);
  std::complex<double> half = 0.5 * (rep.charge->embed() - 1.0);
  double worst = -1;
  for (const auto& p : points) {
    std::vector<CMat> gam;
    try {
      gam = g1.levi_civita(p);
    } catch (const DomainError&) {
      continue;
    }
    CMat R = CMat::Zero(r, r);  // R(i, j) = R_i^j
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        std::complex<double> v = (i == j) ? half : 0.0;
        SymExpr dE = rep.E[j].diff(i);
        if (!dE.is_zero()) v += ev(dE, p);
        for (int k = 0; k < r; ++k)
          if (!rep.E[k].is_zero()) v += gam[j](i, k) * ev(rep.E[k], p);
        R(i, j) = v;
      }
    double d = std::abs(R.determinant());
    worst = worst < 0 ? d : std::min(worst, d);
  }
  rep.min_det_R = std::max(worst, 0.0);
  rep.regular = worst > 1e-8;
  return rep;
}

FrobeniusPotential potential_from_json(const nlohmann::json& j, const Symbols& names) {
  FrobeniusPotential fp;
  fp.names = names;
  fp.F = SymExpr::parse(j.at("potential").get<std::string>(), names);
  fp.unity = j.at("unity").get<int>() - 1;
  if (fp.unity < 0 || fp.unity >= static_cast<int>(names.size())) throw DomainError("unity index out of range");
  for (const auto& e : j.at("euler")) fp.euler.push_back(SymExpr::parse(e.get<std::string>(), names));
  if (fp.euler.size() != names.size()) throw DomainError("Euler field has the wrong length");
  SymExpr d = SymExpr::parse(j.at("charge").get<std::string>(), names);
  if (!d.is_zero() && !d.is_constant()) throw DomainError("charge is not a constant");
  fp.charge = d.constant_value();
  return fp;
}

PotentialMetric metric_from_potential(const FrobeniusPotential& fp) {
  const int r = static_cast<int>(fp.names.size());
  auto t3 = third_derivatives(fp.F, r);
  PotentialMetric pm;
  pm.pi = FMat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const SymExpr& v = t3[fp.unity][i][j];
      if (!v.is_constant() && !v.is_zero()) throw DomainError("flat metric from the potential is not constant");
      pm.pi(i, j) = v.constant_value();
    }
  pm.eta = inverse(pm.pi);
  pm.C.assign(r, SymMat(r, r));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        SymExpr s;
        for (int p = 0; p < r; ++p)
          if (!pm.eta(k, p).is_zero()) s += t3[p][i][j] * pm.eta(k, p);
        pm.C[k](i, j) = s;
      }
  return pm;
}

WdvvReport wdvv_residual(const FrobeniusPotential& fp, const PotentialMetric& pm, const std::vector<Point>& points) {
  const int r = static_cast<int>(fp.names.size());
  auto t3 = third_derivatives(fp.F, r);
  WdvvReport rep;
  rep.vacuous = r < 3;
  rep.exact = true;
  // F_{ijk} eta^{kp} F_{pqn}, i.e. sum_p F_{ijp'} C^p'... written through C.
  auto side = [&](int i, int j, int q, int n) {
    SymExpr s;
    for (int p = 0; p < r; ++p)
      if (!pm.C[p](i, j).is_zero() && !t3[p][q][n].is_zero()) s += pm.C[p](i, j) * t3[p][q][n];
    return s;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int q = 0; q < r; ++q)
        for (int n = 0; n < r; ++n) {
          SymExpr lhs = side(i, j, q, n), rhs = side(n, j, q, i);
          SymExpr res = lhs - rhs;
          if (res.is_zero()) continue;
          rep.exact = false;
          for (const auto& p : points) {
            try {
              double scale = 1.0 + std::abs(ev(lhs, p)) + std::abs(ev(rhs, p));
              rep.max_residual = std::max(rep.max_residual, std::abs(ev(res, p)) / scale);
            } catch (const DomainError&) {
            }
          }
        }
  return rep;
}

SymExpr euler_remainder(const FrobeniusPotential& fp) {
  SymExpr ef;
  for (std::size_t i = 0; i < fp.euler.size(); ++i) ef += fp.euler[i] * fp.F.diff(static_cast<int>(i));
  SymExpr rem = ef - fp.F * (FieldScalar(3) - fp.charge);
  if (!rem.is_zero() && (!rem.is_polynomial() || rem.total_degree() > 2))
    throw DomainError("Euler remainder is not a quadratic polynomial");
  return rem;
}

SymMat intersection_form(const FrobeniusPotential& fp, const PotentialMetric& pm) {
  const int r = static_cast<int>(fp.names.size());
  auto t3 = third_derivatives(fp.F, r);
  // sum_p E^p F_{mkp}
  SymMat h(r, r);
  for (int m = 0; m < r; ++m)
    for (int k = 0; k < r; ++k)
      for (int p = 0; p < r; ++p)
        if (!fp.euler[p].is_zero()) h(m, k) += fp.euler[p] * t3[m][k][p];
  SymMat eta = pm.eta.map<SymExpr>([](const FieldScalar& c) { return SymExpr(c); });
  return eta * h * eta.transpose();
}

AlgebraReport frobenius_algebra_check(const FrobeniusPotential& fp, const PotentialMetric& pm,
                                      const std::vector<Point>& points, std::uint64_t seed) {
  const int r = static_cast<int>(fp.names.size());
  AlgebraReport rep;
  rep.commutative = rep.unity = true;
  for (int k = 0; k < r; ++k) {
    rep.commutative = rep.commutative && pm.C[k] == pm.C[k].transpose();
    for (int j = 0; j < r; ++j) rep.unity = rep.unity && pm.C[k](fp.unity, j) == SymExpr(FieldScalar(k == j ? 1 : 0));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat pi(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) pi(i, j) = pm.pi(i, j).embed();
  for (const auto& p : points) {
    std::vector<CMat> c;
    try {
      for (int k = 0; k < r; ++k) c.push_back(eval_matrix(pm.C[k], p));
    } catch (const DomainError&) {
      continue;
    }
    auto prod = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
      Eigen::VectorXcd out(r);
      for (int k = 0; k < r; ++k) out(k) = a.transpose() * c[k] * b;
      return out;
    };
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::VectorXcd a(r), b(r), cc(r);
      for (int i = 0; i < r; ++i) {
        a(i) = u(rng);
        b(i) = u(rng);
        cc(i) = u(rng);
      }
      std::complex<double> lhs = prod(a, b).transpose() * pi * cc;
      std::complex<double> rhs = a.transpose() * pi * prod(b, cc);
      rep.invariance = std::max(rep.invariance, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
  }
  return rep;
}

double hydrodynamic_mismatch(const DispersionData& d, const Symbols& names, const std::vector<Point>& points) {
  const int r = static_cast<int>(names.size());
  SymMat om = d.Omega.map<SymExpr>([](const DiffPoly& p) { return p.to_symexpr(); });
  ContravariantMetric g(names, om);
  std::vector<SymMat> gam;
  for (int k = 0; k < r; ++k) gam.push_back(d.Gamma[k].map<SymExpr>([](const DiffPoly& p) { return p.to_symexpr(); }));
  double worst = 0;
  int used = 0;
  for (const auto& p : points) {
    std::vector<CMat> want;
    try {
      want = g.christoffel(p);
    } catch (const DomainError&) {
      continue;
    }
    ++used;
    for (int k = 0; k < r; ++k) {
      CMat have = eval_matrix(gam[k], p);
      worst = std::max(worst, (have - want[k]).cwiseAbs().maxCoeff() / (1.0 + want[k].cwiseAbs().maxCoeff()));
    }
  }
  if (used == 0) throw DomainError("metric is singular at every sample point");
  return worst;
}

SymExpr sym_determinant(const SymMat& m) {
  const int n = m.rows();
  if (n == 0) return SymExpr(FieldScalar(1));
  if (n == 1) return m(0, 0);
  SymExpr det;
  for (int j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    SymMat minor(n - 1, n - 1);
    for (int a = 1; a < n; ++a)
      for (int b = 0, bb = 0; b < n; ++b)
        if (b != j) minor(a - 1, bb++) = m(a, b);
    SymExpr term = m(0, j) * sym_determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace wb
