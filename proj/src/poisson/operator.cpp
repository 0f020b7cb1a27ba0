#include "wbench/poisson/operator.hpp"

#include <map>
#include <sstream>

namespace wb {

LocalPoissonOperator::LocalPoissonOperator(Symbols names)
    : names_(std::move(names)), p_(static_cast<int>(names_.size()), static_cast<int>(names_.size())) {}

LocalPoissonOperator::LocalPoissonOperator(Symbols names, OpMat entries) : names_(std::move(names)), p_(std::move(entries)) {
  if (p_.rows() != dim() || p_.cols() != dim()) throw std::invalid_argument("operator matrix size mismatch");
}

int LocalPoissonOperator::max_order() const {
  int m = -1;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m = std::max(m, p_(i, j).order());
  return m;
}

LocalPoissonOperator LocalPoissonOperator::operator+(const LocalPoissonOperator& o) const {
  return LocalPoissonOperator(names_, p_ + o.p_);
}
LocalPoissonOperator LocalPoissonOperator::operator-(const LocalPoissonOperator& o) const {
  return LocalPoissonOperator(names_, p_ - o.p_);
}
LocalPoissonOperator LocalPoissonOperator::operator*(const FieldScalar& s) const {
  return LocalPoissonOperator(names_, p_.scaled(s));
}

LocalPoissonOperator LocalPoissonOperator::submatrix(const std::vector<int>& idx, Symbols names) const {
  LocalPoissonOperator r(std::move(names));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) r.p_(int(a), int(b)) = p_(idx[a], idx[b]);
  return r;
}

LocalPoissonOperator LocalPoissonOperator::renamed(Symbols names) const {
  if (names.size() != names_.size()) throw std::invalid_argument("rename with a different dimension");
  return LocalPoissonOperator(std::move(names), p_);
}

LocalPoissonOperator LocalPoissonOperator::from_bracket_list(const nlohmann::json& list, const Symbols& names) {
  LocalPoissonOperator r(names);
  for (const auto& e : list) {
    int i = e.at("i").get<int>() - 1, j = e.at("j").get<int>() - 1;
    if (i > j) throw ParseError("bracket list must give the upper triangle");
    DiffOperator op;
    int k = 0;
    for (const auto& c : e.at("delta")) op.set(k++, DiffPoly::parse(c.get<std::string>(), names));
    r.p_(i, j) = op;
    if (i != j) r.p_(j, i) = -op.adjoint();
  }
  return r;
}

nlohmann::json LocalPoissonOperator::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k <= p_(i, j).order(); ++k) {
        const DiffPoly& c = p_(i, j).coeff(k);
        if (c.is_zero()) continue;
        entries.push_back({{"i", i + 1}, {"j", j + 1}, {"delta_order", k}, {"coefficient", c.to_json()},
                           {"text", c.str(names_)}});
      }
  return {{"schema", 1}, {"names", names_}, {"entries", entries}};
}

LocalPoissonOperator LocalPoissonOperator::from_json(const nlohmann::json& j) {
  LocalPoissonOperator r(j.at("names").get<Symbols>());
  for (const auto& e : j.at("entries"))
    r.p_(e.at("i").get<int>() - 1, e.at("j").get<int>() - 1)
        .add(e.at("delta_order").get<int>(), DiffPoly::from_json(e.at("coefficient")));
  return r;
}

namespace {

std::string delta_name(int k) {
  if (k <= 3) return "delta" + std::string(k, '\'');
  return "delta^(" + std::to_string(k) + ")";
}

}  // namespace

std::string LocalPoissonOperator::to_text() const {
  std::ostringstream os;
  for (int i = 0; i < dim(); ++i)
    for (int j = i; j < dim(); ++j) {
      const DiffOperator& op = p_(i, j);
      if (op.is_zero()) continue;
      os << "{" << names_[i] << "(x), " << names_[j] << "(y)} =";
      bool first = true;
      for (int k = 0; k <= op.order(); ++k) {
        if (op.coeff(k).is_zero()) continue;
        os << (first ? " " : "\n    + ") << "(" << op.coeff(k).str(names_) << ") " << delta_name(k);
        first = false;
      }
      os << "\n";
    }
  return os.str();
}

PolyMat delta_coefficient(const LocalPoissonOperator& p, int k) {
  PolyMat m(p.dim(), p.dim());
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) m(i, j) = p.coeff(i, j, k).jet_weight_part(0);
  return m;
}

LocalPoissonOperator degree_part(const LocalPoissonOperator& p, int d) {
  LocalPoissonOperator r(p.names());
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j)
      for (int k = 0; k <= p(i, j).order(); ++k) {
        int w = d + 1 - k;
        if (w >= 0) r(i, j).add(k, p.coeff(i, j, k).jet_weight_part(w));
      }
  return r;
}

DispersionData extract_dispersion(const LocalPoissonOperator& p, int max_s) {
  int m = p.dim();
  DispersionData d;
  d.F = delta_coefficient(p, 0);
  d.Omega = delta_coefficient(p, 1);
  d.Gamma.assign(m, PolyMat(m, m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      DiffPoly w1 = p.coeff(i, j, 0).jet_weight_part(1);
      for (int k = 0; k < m; ++k) d.Gamma[k](i, j) = w1.partial(k, 1);
    }
  d.S.assign(max_s + 1, PolyMat(m, m));
  for (int k = 1; k <= max_s; ++k) d.S[k] = delta_coefficient(p, k + 1);
  DispersionData known = d;
  known.remainder = LocalPoissonOperator(p.names());
  d.remainder = p - reassemble(known);
  return d;
}

LocalPoissonOperator reassemble(const DispersionData& d) {
  int m = d.F.rows();
  Symbols names = d.remainder.dim() == m ? d.remainder.names() : default_names("u", m);
  LocalPoissonOperator r(names);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      DiffPoly a0 = d.F(i, j);
      for (int k = 0; k < static_cast<int>(d.Gamma.size()); ++k) a0 += d.Gamma[k](i, j) * DiffPoly::var(k, 1);
      r(i, j).add(0, a0);
      r(i, j).add(1, d.Omega(i, j));
      for (std::size_t k = 1; k < d.S.size(); ++k) r(i, j).add(int(k) + 1, d.S[k](i, j));
    }
  if (d.remainder.dim() == m) r = r + d.remainder;
  return r;
}

OpMat adjoint(const OpMat& m) {
  OpMat r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).adjoint();
  return r;
}

OpMat compose(const OpMat& a, const OpMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator matrix shape mismatch");
  OpMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) r(i, j) += a(i, k).compose(b(k, j));
    }
  return r;
}

OpMat skew_residual(const LocalPoissonOperator& p) { return adjoint(p.entries()) + p.entries(); }

namespace {

using Poly1 = std::vector<DiffPoly>;
using Poly2 = std::map<std::pair<int, int>, DiffPoly>;

void add_to(Poly1& p, int k, const DiffPoly& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(p.size()) <= k) p.resize(k + 1);
  p[k] += c;
}

void add_to(Poly2& p, int a, int b, const DiffPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.try_emplace({a, b}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

struct LambdaTable {
  // lam[i][j] = {u_i lambda u_j} = P^{ji}(lambda)
  std::vector<std::vector<Poly1>> lam;
  explicit LambdaTable(const LocalPoissonOperator& p) {
    int m = p.dim();
    lam.assign(m, std::vector<Poly1>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) lam[i][j] = p(j, i).coeffs();
  }

  // {u_i lambda g} = sum dg/du_j^{(n)} (lambda + d)^n {u_i lambda u_j}
  Poly1 left_generator(int i, const DiffPoly& g) const {
    Poly1 out;
    for (const auto& [vj, dg] : g.gradient()) {
      int j = vj.first, n = vj.second;
      const Poly1& b = lam[i][j];
      for (int k = 0; k < static_cast<int>(b.size()); ++k) {
        if (b[k].is_zero()) continue;
        DiffPoly der = b[k];
        for (int s = 0; s <= n; ++s) {
          if (s > 0) der = der.D();
          if (der.is_zero()) break;
          add_to(out, n - s + k, dg * der * FieldScalar(binomial(n, s)));
        }
      }
    }
    return out;
  }

  // {f nu u_k} = sum_{i,m} {u_i nu+d u_k}_-> (-nu-d)^m df/du_i^{(m)}
  Poly1 right_generator(const DiffPoly& f, int k) const {
    Poly1 out;
    for (const auto& [vi, h] : f.gradient()) {
      int i = vi.first, m = vi.second;
      const Poly1& b = lam[i][k];
      int maxp = static_cast<int>(b.size()) - 1 + m;
      std::vector<DiffPoly> hd{h};
      for (int t = 1; t <= maxp; ++t) hd.push_back(hd.back().D());
      long long sign = (m % 2) ? -1 : 1;
      for (int s = 0; s < static_cast<int>(b.size()); ++s) {
        if (b[s].is_zero()) continue;
        int p = s + m;
        for (int t = 0; t <= p; ++t) {
          if (hd[t].is_zero()) continue;
          add_to(out, p - t, b[s] * hd[t] * FieldScalar(sign * binomial(p, t)));
        }
      }
    }
    return out;
  }
};

}  // namespace

JacobiReport check_jacobi(const LocalPoissonOperator& p, bool stop_at_first) {
  LambdaTable t(p);
  int m = p.dim();
  JacobiReport rep;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        ++rep.triples;
        Poly2 J;
        // {u_i lambda {u_j mu u_k}}
        const Poly1& jk = t.lam[j][k];
        for (int b = 0; b < static_cast<int>(jk.size()); ++b) {
          if (jk[b].is_zero()) continue;
          Poly1 r = t.left_generator(i, jk[b]);
          for (int a = 0; a < static_cast<int>(r.size()); ++a) add_to(J, a, b, r[a]);
        }
        // -{u_j mu {u_i lambda u_k}}
        const Poly1& ik = t.lam[i][k];
        for (int a = 0; a < static_cast<int>(ik.size()); ++a) {
          if (ik[a].is_zero()) continue;
          Poly1 r = t.left_generator(j, ik[a]);
          for (int b = 0; b < static_cast<int>(r.size()); ++b) add_to(J, a, b, -r[b]);
        }
        // -{{u_i lambda u_j} lambda+mu u_k}
        const Poly1& ij = t.lam[i][j];
        for (int a = 0; a < static_cast<int>(ij.size()); ++a) {
          if (ij[a].is_zero()) continue;
          Poly1 r = t.right_generator(ij[a], k);
          for (int pw = 0; pw < static_cast<int>(r.size()); ++pw) {
            if (r[pw].is_zero()) continue;
            for (int q = 0; q <= pw; ++q) add_to(J, a + q, pw - q, r[pw] * FieldScalar(-binomial(pw, q)));
          }
        }
        if (!J.empty()) {
          rep.failures.push_back({i, j, k});
          for (const auto& [ab, c] : J) {
            int w = 0;
            while (c.jet_weight_part(w).is_zero()) ++w;
            int d = ab.first + ab.second + w - 2;
            if (rep.lowest_degree < 0 || d < rep.lowest_degree) rep.lowest_degree = d;
          }
          if (stop_at_first) return rep;
        }
      }
  return rep;
}

LocalPoissonOperator lie_derivative(const LocalPoissonOperator& p, const std::vector<DiffPoly>& e) {
  int m = p.dim();
  if (static_cast<int>(e.size()) != m) throw std::invalid_argument("vector field dimension mismatch");
  LocalPoissonOperator r = p.map([&](const DiffPoly& c) { return c.evolutionary(e); });
  OpMat de(m, m);
  for (int i = 0; i < m; ++i) {
    auto row = frechet(e[i], m);
    for (int j = 0; j < m; ++j) de(i, j) = row[j];
  }
  if (de.is_zero()) return r;
  OpMat corr = compose(de, p.entries()) + compose(p.entries(), adjoint(de));
  return LocalPoissonOperator(p.names(), r.entries() - corr);
}

LocalPoissonOperator conjugate(const LocalPoissonOperator& p, const OpMat& l, Symbols names) {
  return LocalPoissonOperator(std::move(names), compose(compose(l, p.entries()), adjoint(l)));
}

LocalPoissonOperator change_coordinates(const LocalPoissonOperator& p, const std::vector<DiffPoly>& forward,
                                        const std::vector<DiffPoly>& inverse, Symbols new_names) {
  int m = p.dim();
  if (static_cast<int>(forward.size()) != m || static_cast<int>(inverse.size()) != m)
    throw std::invalid_argument("coordinate map dimension mismatch");
  OpMat l(m, m);
  for (int a = 0; a < m; ++a) {
    auto row = frechet(forward[a], m);
    for (int i = 0; i < m; ++i) l(a, i) = row[i];
  }
  LocalPoissonOperator q = conjugate(p, l, p.names());
  LocalPoissonOperator out = q.map([&](const DiffPoly& c) { return c.substitute(inverse); });
  return out.renamed(std::move(new_names));
}

bool maps_are_inverse(const std::vector<DiffPoly>& forward, const std::vector<DiffPoly>& inverse) {
  for (std::size_t a = 0; a < forward.size(); ++a)
    if (forward[a].substitute(inverse) != DiffPoly::var(static_cast<int>(a))) return false;
  return true;
}

bool PencilReport::ok() const {
  bool all = lie_v_p2_is_p1 && lie_v_p1_zero && p2_jacobi && p1_jacobi;
  for (const auto& [lam, good] : combination_jacobi) all = all && good;
  return all;
}

PencilReport pencil_checks(const LocalPoissonOperator& p2, const LocalPoissonOperator& p1, const std::vector<DiffPoly>& v,
                           const std::vector<FieldScalar>& lambdas) {
  PencilReport r;
  r.lie_v_p2_is_p1 = lie_derivative(p2, v) == p1;
  r.lie_v_p1_zero = lie_derivative(p1, v).is_zero();
  r.p2_jacobi = check_jacobi(p2, true).ok();
  r.p1_jacobi = check_jacobi(p1, true).ok();
  for (const auto& lam : lambdas) r.combination_jacobi.emplace_back(lam, check_jacobi(p2 + p1 * lam, true).ok());
  return r;
}

}  // namespace wb
