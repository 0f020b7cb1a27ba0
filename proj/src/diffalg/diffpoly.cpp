#include "wbench/diffalg/diffpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wb {

namespace {

using Monomial = DiffPoly::Monomial;

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && DiffPoly::key_of(a[i]) < DiffPoly::key_of(b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || DiffPoly::key_of(b[j]) < DiffPoly::key_of(a[i])) {
      out.push_back(b[j++]);
    } else {
      int e = DiffPoly::exp_of(a[i]) + DiffPoly::exp_of(b[j]);
      if (e != 0) out.push_back(DiffPoly::pack(DiffPoly::var_of(a[i]), DiffPoly::jet_of(a[i]), e));
      ++i;
      ++j;
    }
  }
  return out;
}

bool mono_less(const Monomial& a, const Monomial& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_slot(int var, int jet) {
  if (jet > kMaxJet)
    throw CapacityError("jet order " + std::to_string(jet) + " exceeds capacity " + std::to_string(kMaxJet));
  if (var < 0 || var > kMaxVar) throw CapacityError("variable index out of range");
}

}  // namespace

Symbols default_names(const std::string& stem, int n) {
  Symbols s;
  for (int k = 1; k <= n; ++k) s.push_back(stem + std::to_string(k));
  return s;
}

DiffPoly::DiffPoly(const FieldScalar& c) {
  if (!c.is_zero()) terms_.push_back({{}, c});
}

DiffPoly DiffPoly::var(int v, int jet, int exp) {
  check_slot(v, jet);
  DiffPoly p;
  if (exp == 0) return DiffPoly(1);
  if (exp < 0 && jet > 0) throw DomainError("negative power of a derivative");
  p.terms_.push_back({Monomial{pack(v, jet, exp)}, FieldScalar(1)});
  return p;
}

DiffPoly DiffPoly::monomial(const FieldScalar& c, const Monomial& m) {
  DiffPoly p;
  if (c.is_zero()) return p;
  Monomial s = m;
  std::sort(s.begin(), s.end());
  p.terms_.push_back({s, c});
  return p;
}

void DiffPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return mono_less(a.mono, b.mono); });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    if (w > 0 && terms_[w - 1].mono == terms_[r].mono) {
      terms_[w - 1].coeff += terms_[r].coeff;
      if (terms_[w - 1].coeff.is_zero()) --w;
    } else {
      if (w != r) terms_[w] = std::move(terms_[r]);
      ++w;
    }
  }
  terms_.resize(w);
}

bool DiffPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

FieldScalar DiffPoly::constant_value() const {
  if (!terms_.empty() && terms_[0].mono.empty()) return terms_[0].coeff;  // empty monomial sorts first
  return FieldScalar();
}

int DiffPoly::max_jet() const {
  int m = -1;
  for (const auto& t : terms_)
    for (Factor f : t.mono) m = std::max(m, jet_of(f));
  return m;
}

int DiffPoly::max_var() const {
  int m = -1;
  for (const auto& t : terms_)
    for (Factor f : t.mono) m = std::max(m, var_of(f));
  return m;
}

bool DiffPoly::has_negative_powers() const {
  for (const auto& t : terms_)
    for (Factor f : t.mono)
      if (exp_of(f) < 0) return true;
  return false;
}

bool DiffPoly::depends_on(int v) const {
  for (const auto& t : terms_)
    for (Factor f : t.mono)
      if (var_of(f) == v) return true;
  return false;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && mono_less(terms_[i].mono, o.terms_[j].mono))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || mono_less(o.terms_[j].mono, terms_[i].mono)) {
      out.push_back(o.terms_[j++]);
    } else {
      FieldScalar c = terms_[i].coeff + o.terms_[j].coeff;
      if (!c.is_zero()) out.push_back({std::move(terms_[i].mono), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) { return *this += -o; }

DiffPoly& DiffPoly::operator*=(const FieldScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.push_back({mono_mul(x.mono, y.mono), x.coeff * y.coeff});
  r.normalize();
  return r;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (a.terms_[k].mono != b.terms_[k].mono || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  return true;
}

DiffPoly DiffPoly::pow(int n) const {
  if (n < 0) return DiffPoly(1).div_monomial(pow(-n));
  DiffPoly r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

DiffPoly DiffPoly::div_monomial(const DiffPoly& m) const {
  if (m.terms_.size() != 1) throw DomainError("division by a non-monomial differential polynomial");
  const Term& t = m.terms_[0];
  Monomial inv;
  for (Factor f : t.mono) {
    if (jet_of(f) > 0) throw DomainError("division by a derivative");
    inv.push_back(pack(var_of(f), 0, -exp_of(f)));
  }
  return *this * monomial(t.coeff.inverse(), inv);
}

DiffPoly DiffPoly::D() const {
  DiffPoly r;
  for (const auto& t : terms_) {
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      Factor f = t.mono[k];
      int v = var_of(f), j = jet_of(f), e = exp_of(f);
      check_slot(v, j + 1);
      Monomial m = t.mono;
      if (e == 1) m.erase(m.begin() + k);
      else m[k] = pack(v, j, e - 1);
      m = mono_mul(m, Monomial{pack(v, j + 1, 1)});
      FieldScalar c = t.coeff;
      if (e != 1) c *= Rational(e);
      r.terms_.push_back({std::move(m), std::move(c)});
    }
  }
  r.normalize();
  return r;
}

DiffPoly DiffPoly::D(int times) const {
  DiffPoly r = *this;
  for (int k = 0; k < times; ++k) r = r.D();
  return r;
}

DiffPoly DiffPoly::partial(int v, int jet) const {
  DiffPoly r;
  std::uint32_t key = (std::uint32_t(v) << 8) | std::uint32_t(jet);
  for (const auto& t : terms_) {
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      if (key_of(t.mono[k]) != key) continue;
      int e = exp_of(t.mono[k]);
      Monomial m = t.mono;
      if (e == 1) m.erase(m.begin() + k);
      else m[k] = pack(v, jet, e - 1);
      FieldScalar c = t.coeff;
      c *= Rational(e);
      r.terms_.push_back({std::move(m), std::move(c)});
      break;
    }
  }
  r.normalize();
  return r;
}

std::vector<std::pair<std::pair<int, int>, DiffPoly>> DiffPoly::gradient() const {
  std::map<std::pair<int, int>, int> slots;
  for (const auto& t : terms_)
    for (Factor f : t.mono) slots.emplace(std::make_pair(var_of(f), jet_of(f)), 0);
  std::vector<std::pair<std::pair<int, int>, DiffPoly>> out;
  for (const auto& [vj, unused] : slots) out.push_back({vj, partial(vj.first, vj.second)});
  return out;
}

DiffPoly DiffPoly::evolutionary(const std::vector<DiffPoly>& e) const {
  DiffPoly r;
  for (const auto& [vj, dp] : gradient()) {
    int v = vj.first;
    if (v >= static_cast<int>(e.size()) || e[v].is_zero()) continue;
    r += dp * e[v].D(vj.second);
  }
  return r;
}

DiffPoly DiffPoly::substitute(const std::vector<DiffPoly>& images) const {
  // Cache D^k(image_v) and integer powers.
  std::map<std::uint32_t, DiffPoly> jet_img;
  auto image = [&](int v, int j) -> const DiffPoly& {
    if (v >= static_cast<int>(images.size())) throw DomainError("substitution misses a variable");
    auto key = [v](int k) { return (std::uint32_t(v) << 8) | std::uint32_t(k); };
    int have = j;
    while (have >= 0 && !jet_img.count(key(have))) --have;
    if (have < 0) {
      jet_img.emplace(key(0), images[v]);
      have = 0;
    }
    for (int k = have + 1; k <= j; ++k) jet_img.emplace(key(k), jet_img.at(key(k - 1)).D());
    return jet_img.at(key(j));
  };
  DiffPoly r;
  for (const auto& t : terms_) {
    DiffPoly acc(t.coeff);
    for (Factor f : t.mono) {
      int e = exp_of(f);
      const DiffPoly& img = image(var_of(f), jet_of(f));
      if (e < 0) {
        if (img.terms_.size() != 1) throw DomainError("substitution creates an unsupported denominator");
        acc = acc.div_monomial(img.pow(-e));
      } else {
        acc *= img.pow(e);
      }
    }
    r += acc;
  }
  return r;
}

DiffPoly DiffPoly::set_zero(int v) const {
  DiffPoly r;
  for (const auto& t : terms_) {
    bool hit = false;
    for (Factor f : t.mono)
      if (var_of(f) == v) {
        if (exp_of(f) < 0) throw DomainError("restriction to zero of a variable with negative power");
        hit = true;
      }
    if (!hit) r.terms_.push_back(t);
  }
  return r;
}

DiffPoly DiffPoly::jet_weight_part(int w) const {
  DiffPoly r;
  for (const auto& t : terms_) {
    int s = 0;
    for (Factor f : t.mono) s += jet_of(f) * exp_of(f);
    if (s == w) r.terms_.push_back(t);
  }
  return r;
}

int DiffPoly::max_jet_weight() const {
  int m = -1;
  for (const auto& t : terms_) {
    int s = 0;
    for (Factor f : t.mono) s += jet_of(f) * exp_of(f);
    m = std::max(m, s);
  }
  return m;
}

std::complex<double> DiffPoly::eval(const std::function<std::complex<double>(int, int)>& at) const {
  std::complex<double> sum = 0;
  for (const auto& t : terms_) {
    std::complex<double> p = t.coeff.embed();
    for (Factor f : t.mono) p *= std::pow(at(var_of(f), jet_of(f)), exp_of(f));
    sum += p;
  }
  return sum;
}

SymExpr DiffPoly::to_symexpr() const {
  SymExpr r;
  for (const auto& t : terms_) {
    SymExpr::Monomial m;
    for (Factor f : t.mono) {
      if (jet_of(f) != 0) throw DomainError("jet variable in a point function");
      m.push_back({var_of(f), Rational(exp_of(f)), 0});
    }
    r += SymExpr::monomial(t.coeff, m);
  }
  return r;
}

DiffPoly DiffPoly::from_symexpr(const SymExpr& e) {
  DiffPoly r;
  for (const auto& t : e.terms()) {
    Monomial m;
    for (const auto& f : t.mono) {
      if (f.logp || !f.exp.is_integer()) throw DomainError("expression is not a Laurent polynomial");
      m.push_back(pack(f.var, 0, static_cast<int>(f.exp.num_small())));
    }
    r.terms_.push_back({m, t.coeff});
  }
  r.normalize();
  return r;
}

std::string DiffPoly::str(const Symbols& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coeff.str();
    bool neg = c[0] == '-' && t.coeff.is_real() && t.coeff.support() == 1;
    if (neg) c = c.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = c == "1";
    if (!unit || t.mono.empty()) os << c;
    bool star = !unit;
    for (Factor f : t.mono) {
      if (star) os << "*";
      star = true;
      int v = var_of(f);
      os << (v < static_cast<int>(names.size()) ? names[v] : "u" + std::to_string(v + 1));
      os << std::string(jet_of(f), '\'');
      int e = exp_of(f);
      if (e != 1) os << (e > 0 ? "^" + std::to_string(e) : "^(" + std::to_string(e) + ")");
    }
  }
  return os.str();
}

nlohmann::json DiffPoly::to_json() const {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& t : terms_) {
    json c = json::array();
    for (int k = 0; k < 8; ++k) c.push_back(t.coeff.coord(k).str());
    json mono = json::array(), den = json::array();
    for (Factor f : t.mono) {
      if (exp_of(f) > 0) mono.push_back({var_of(f), jet_of(f), exp_of(f)});
      else den.push_back({var_of(f), -exp_of(f)});
    }
    arr.push_back({{"coeff", c}, {"monomial", mono}, {"denominator", den}});
  }
  return arr;
}

DiffPoly DiffPoly::from_json(const nlohmann::json& j) {
  DiffPoly r;
  for (const auto& t : j) {
    FieldScalar c;
    const auto& cj = t.at("coeff");
    if (!cj.is_array() || cj.size() != 8) throw ParseError("coefficient must be 8 rationals");
    for (int k = 0; k < 8; ++k) c.set_coord(k, Rational::parse(cj[k].get<std::string>()));
    Monomial m;
    for (const auto& f : t.at("monomial")) m.push_back(pack(f[0].get<int>(), f[1].get<int>(), f[2].get<int>()));
    if (t.contains("denominator"))
      for (const auto& f : t.at("denominator")) m.push_back(pack(f[0].get<int>(), 0, -f[1].get<int>()));
    r += monomial(c, m);
  }
  return r;
}

DiffPoly DiffPoly::from_tree(const ExprNode& e, const std::function<int(const std::string&)>& lookup) {
  using K = ExprNode::Kind;
  if (auto c = fold_constant(e)) return DiffPoly(*c);
  switch (e.kind) {
    case K::Num: return DiffPoly(FieldScalar(e.num));
    case K::Sym: {
      int v = lookup(e.name);
      if (v < 0) throw ParseError("unknown symbol '" + e.name + "'");
      return var(v, e.jet);
    }
    case K::Neg: return -from_tree(*e.kids[0], lookup);
    case K::Add: return from_tree(*e.kids[0], lookup) + from_tree(*e.kids[1], lookup);
    case K::Sub: return from_tree(*e.kids[0], lookup) - from_tree(*e.kids[1], lookup);
    case K::Mul: return from_tree(*e.kids[0], lookup) * from_tree(*e.kids[1], lookup);
    case K::Div: return from_tree(*e.kids[0], lookup).div_monomial(from_tree(*e.kids[1], lookup));
    case K::Pow: {
      auto q = fold_constant(*e.kids[1]);
      if (!q || !q->is_rational() || !q->rational_part().is_integer())
        throw ParseError("differential polynomials take integer exponents only");
      return from_tree(*e.kids[0], lookup).pow(static_cast<int>(q->rational_part().num_small()));
    }
    case K::Call: throw ParseError("function '" + e.name + "' of a non-constant argument");
  }
  throw ParseError("unhandled expression");
}

DiffPoly DiffPoly::parse(std::string_view text, const Symbols& names) {
  auto lookup = [&names](const std::string& n) {
    auto it = std::find(names.begin(), names.end(), n);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
  };
  return from_tree(*parse_expr(text), lookup);
}

}  // namespace wb
