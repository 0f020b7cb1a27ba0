#include "wbench/liealg/lie.hpp"

#include <sstream>

namespace wb {

FieldScalar parse_scalar(const std::string& text) {
  DiffPoly p = DiffPoly::parse(text, {});
  if (!p.is_constant()) throw ParseError("not a constant: " + text);
  return p.constant_value();
}

FMat parse_matrix(const nlohmann::json& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  FMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw ParseError("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = parse_scalar(rows[i][j].get<std::string>());
  }
  return m;
}

PolyMat parse_poly_matrix(const nlohmann::json& rows, const Symbols& names) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  PolyMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw ParseError("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = DiffPoly::parse(rows[i][j].get<std::string>(), names);
  }
  return m;
}

nlohmann::json matrix_json(const FMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_str(const FMat& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    os << "[";
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]\n";
  }
  return os.str();
}

PolyMat to_poly(const FMat& m) {
  return m.map<DiffPoly>([](const FieldScalar& x) { return DiffPoly(x); });
}

FMat elementary(int n, int i, int j) {
  FMat m(n, n);
  m(i, j) = FieldScalar(1);
  return m;
}

Sl2Report verify_sl2(const Sl2Triple& t) {
  Sl2Report r;
  r.he = commutator(t.h, t.e) - t.e;
  r.hf = commutator(t.h, t.f) + t.f;
  r.ef = commutator(t.e, t.f) - t.h.scaled(FieldScalar(2));
  return r;
}

FieldScalar trace_product(const FMat& a, const FMat& b) {
  FieldScalar s;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      if (!a(i, k).is_zero() && !b(k, i).is_zero()) s += a(i, k) * b(k, i);
  return s;
}

FieldScalar normalized_form(const FMat& a, const FMat& b, const FieldScalar& kappa) { return kappa * trace_product(a, b); }

Rational grade_of(const FMat& h, int i, int j) {
  FieldScalar g = h(i, i) - h(j, j);
  if (!g.is_rational()) throw DomainError("grading element with irrational eigenvalues");
  return g.rational_part();
}

std::map<Rational, FMat> grading_decompose(const FMat& x, const FMat& h) {
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      if (i != j && !h(i, j).is_zero()) throw DomainError("grading element must be diagonal");
  std::map<Rational, FMat> parts;
  int n = x.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x(i, j).is_zero()) continue;
      auto [it, fresh] = parts.try_emplace(grade_of(h, i, j), n, n);
      it->second(i, j) = x(i, j);
    }
  return parts;
}

std::vector<FieldScalar> flatten(const FMat& m) {
  std::vector<FieldScalar> v;
  v.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

FMat unflatten(const std::vector<FieldScalar>& v, int n) {
  FMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i) * n + j];
  return m;
}

std::vector<FMat> centralizer_basis(const FMat& x) {
  int n = x.rows();
  // Rows: entries of [x, E_ab] and the trace condition.
  FMat sys(n * n + 1, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto col = flatten(commutator(x, elementary(n, a, b)));
      for (int k = 0; k < n * n; ++k) sys(k, a * n + b) = col[k];
      if (a == b) sys(n * n, a * n + b) = FieldScalar(1);
    }
  std::vector<FMat> out;
  for (const auto& v : nullspace(sys)) out.push_back(unflatten(v, n));
  return out;
}

std::vector<DiffPoly> charpoly_coefficients(const PolyMat& a) {
  int n = a.rows();
  PolyMat m(n, n);
  std::vector<DiffPoly> coeff(n + 1);
  DiffPoly c(1);
  for (int k = 1; k <= n; ++k) {
    PolyMat am = a * m;
    for (int i = 0; i < n; ++i) am(i, i) += c;
    m = am;
    DiffPoly tr = (a * m).trace();
    c = tr * FieldScalar(Rational(-1, k));
    coeff[k] = c;
  }
  coeff.erase(coeff.begin());
  return coeff;
}

std::vector<FieldScalar> charpoly(const FMat& a) {
  std::vector<FieldScalar> out{FieldScalar(1)};
  for (const auto& c : charpoly_coefficients(to_poly(a))) out.push_back(c.constant_value());
  return out;
}

namespace {

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  uni_trim(a);
  FieldScalar lead = b.back().inverse();
  while (a.size() >= b.size()) {
    FieldScalar q = a.back() * lead;
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= q * b[k];
    uni_trim(a);
  }
  return a;
}

}  // namespace

UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * FieldScalar(static_cast<long long>(k)));
  uni_trim(d);
  return d;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FieldScalar lead = a.back().inverse();
    for (auto& c : a) c *= lead;
  }
  return a;
}

bool uni_squarefree(const UniPoly& p) { return uni_gcd(p, uni_derivative(p)).size() == 1; }

}  // namespace wb
