#include "wbench/scalars/symexpr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wb {

namespace {

int factor_cmp(const SymExpr::Factor& a, const SymExpr::Factor& b) {
  if (a.var != b.var) return a.var < b.var ? -1 : 1;
  if (a.logp != b.logp) return a.logp < b.logp ? -1 : 1;
  return Rational::cmp(a.exp, b.exp);
}

SymExpr::Monomial mono_mul(const SymExpr::Monomial& a, const SymExpr::Monomial& b) {
  SymExpr::Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].var < a[i].var) {
      out.push_back(b[j++]);
    } else {
      SymExpr::Factor f{a[i].var, a[i].exp + b[j].exp, a[i].logp + b[j].logp};
      if (!f.exp.is_zero() || f.logp != 0) out.push_back(std::move(f));
      ++i;
      ++j;
    }
  }
  return out;
}

std::string json_rational(const Rational& q) { return q.str(); }

}  // namespace

bool monomial_less(const SymExpr::Monomial& a, const SymExpr::Monomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    int c = factor_cmp(a[k], b[k]);
    if (c) return c < 0;
  }
  return a.size() < b.size();
}

SymExpr::SymExpr(const FieldScalar& c) {
  if (!c.is_zero()) terms_.push_back({{}, c});
}

SymExpr SymExpr::var(int v) { return power(v, Rational(1)); }

SymExpr SymExpr::monomial(FieldScalar c, Monomial m) {
  SymExpr e;
  if (c.is_zero()) return e;
  std::sort(m.begin(), m.end(), [](const Factor& a, const Factor& b) { return a.var < b.var; });
  Monomial merged;
  for (auto& f : m) {
    if (!merged.empty() && merged.back().var == f.var) {
      merged.back().exp += f.exp;
      merged.back().logp += f.logp;
    } else {
      merged.push_back(f);
    }
  }
  std::erase_if(merged, [](const Factor& f) { return f.exp.is_zero() && f.logp == 0; });
  e.terms_.push_back({std::move(merged), std::move(c)});
  return e;
}

SymExpr SymExpr::power(int v, const Rational& q) {
  if (q.is_zero()) return SymExpr(1);
  return monomial(FieldScalar(1), {Factor{v, q, 0}});
}

SymExpr SymExpr::log(int v) { return monomial(FieldScalar(1), {Factor{v, Rational(0), 1}}); }

void SymExpr::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return monomial_less(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) out.back().coeff += t.coeff;
    else out.push_back(std::move(t));
    if (out.back().coeff.is_zero()) out.pop_back();
  }
  terms_ = std::move(out);
}

bool SymExpr::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

FieldScalar SymExpr::constant_value() const {
  for (const auto& t : terms_)
    if (t.mono.empty()) return t.coeff;
  return FieldScalar();
}

bool SymExpr::is_polynomial() const {
  for (const auto& t : terms_)
    for (const auto& f : t.mono)
      if (f.logp != 0 || !f.exp.is_integer() || f.exp.sign() < 0) return false;
  return true;
}

int SymExpr::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (const auto& f : t.mono) s += static_cast<int>(f.exp.num_small());
    d = std::max(d, s);
  }
  return d;
}

bool SymExpr::depends_on(int v) const {
  for (const auto& t : terms_)
    for (const auto& f : t.mono)
      if (f.var == v) return true;
  return false;
}

int SymExpr::max_var() const {
  int m = -1;
  for (const auto& t : terms_)
    for (const auto& f : t.mono) m = std::max(m, f.var);
  return m;
}

SymExpr SymExpr::operator-() const {
  SymExpr r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& o) { return *this += -o; }

SymExpr& SymExpr::operator*=(const FieldScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

SymExpr& SymExpr::operator*=(const SymExpr& o) { return *this = *this * o; }

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  SymExpr r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.push_back({mono_mul(x.mono, y.mono), x.coeff * y.coeff});
  r.normalize();
  return r;
}

bool operator==(const SymExpr& a, const SymExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (!(a.terms_[k].mono == b.terms_[k].mono) || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  return true;
}

SymExpr SymExpr::pow(int n) const {
  if (n < 0) return SymExpr(1).div_monomial(pow(-n));
  SymExpr r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

SymExpr SymExpr::div_monomial(const SymExpr& m) const {
  if (m.terms_.size() != 1) throw DomainError("division by a non-monomial expression");
  const Term& t = m.terms_[0];
  Monomial inv;
  for (const auto& f : t.mono) {
    if (f.logp != 0) throw DomainError("division by a logarithm");
    inv.push_back({f.var, -f.exp, 0});
  }
  return *this * monomial(t.coeff.inverse(), inv);
}

SymExpr SymExpr::diff(int v) const {
  SymExpr r;
  for (const auto& t : terms_) {
    auto it = std::find_if(t.mono.begin(), t.mono.end(), [v](const Factor& f) { return f.var == v; });
    if (it == t.mono.end()) continue;
    // d(v^q log^k v) = q v^{q-1} log^k v + k v^{q-1} log^{k-1} v
    if (!it->exp.is_zero()) {
      Monomial m = t.mono;
      auto& f = m[it - t.mono.begin()];
      f.exp -= Rational(1);
      FieldScalar c = t.coeff;
      c *= it->exp;
      if (f.exp.is_zero() && f.logp == 0) m.erase(m.begin() + (it - t.mono.begin()));
      r.terms_.push_back({std::move(m), std::move(c)});
    }
    if (it->logp != 0) {
      Monomial m = t.mono;
      auto& f = m[it - t.mono.begin()];
      f.exp -= Rational(1);
      f.logp -= 1;
      FieldScalar c = t.coeff;
      c *= Rational(it->logp);
      if (f.exp.is_zero() && f.logp == 0) m.erase(m.begin() + (it - t.mono.begin()));
      r.terms_.push_back({std::move(m), std::move(c)});
    }
  }
  r.normalize();
  return r;
}

SymExpr SymExpr::substitute(int v, const SymExpr& e) const {
  SymExpr r;
  for (const auto& t : terms_) {
    auto it = std::find_if(t.mono.begin(), t.mono.end(), [v](const Factor& f) { return f.var == v; });
    if (it == t.mono.end()) {
      r.terms_.push_back(t);
      continue;
    }
    if (it->logp != 0) throw DomainError("substitution into a logarithm is not supported");
    Monomial rest = t.mono;
    rest.erase(rest.begin() + (it - t.mono.begin()));
    SymExpr base = monomial(t.coeff, rest);
    const Rational& q = it->exp;
    SymExpr img;
    if (q.is_integer() && q.sign() > 0) {
      img = e.pow(static_cast<int>(q.num_small()));
    } else {
      if (e.terms_.size() != 1) throw DomainError("fractional or negative power of a non-monomial");
      const Term& et = e.terms_[0];
      if (!q.is_integer()) {
        // (c m)^q = c^q m^q holds on the positive region the expressions are used on.
        FieldScalar cq(1);
        if (!et.coeff.is_one()) {
          auto root = et.coeff.is_rational() && q.den_small() == 2 && et.coeff.rational_part().sign() > 0
                          ? FieldScalar::sqrt_rational(et.coeff.rational_part())
                          : std::nullopt;
          if (!root) throw DomainError("fractional power of a coefficient outside the field");
          cq = root->pow(static_cast<int>(q.num_small()));
        }
        Monomial m;
        for (const auto& f : et.mono) {
          if (f.logp != 0) throw DomainError("fractional power of a logarithm");
          m.push_back({f.var, f.exp * q, 0});
        }
        img = monomial(cq, m);
      } else {
        img = SymExpr(1).div_monomial(e.pow(static_cast<int>(-q.num_small())));
      }
    }
    SymExpr prod = base * img;
    r.terms_.insert(r.terms_.end(), prod.terms_.begin(), prod.terms_.end());
  }
  r.normalize();
  return r;
}

SymExpr SymExpr::substitute_all(const std::vector<SymExpr>& images) const {
  // Image variables may collide with source variables, so substitute through
  // fresh indices first.
  const int shift = 1 << 20;
  SymExpr r = *this;
  for (std::size_t v = 0; v < images.size(); ++v) {
    SymExpr fresh;
    for (auto t : images[v].terms_) {
      for (auto& f : t.mono) f.var += shift;
      fresh.terms_.push_back(std::move(t));
    }
    fresh.normalize();
    r = r.substitute(static_cast<int>(v), fresh);
  }
  for (auto& t : r.terms_)
    for (auto& f : t.mono)
      if (f.var >= shift) f.var -= shift;
      else throw DomainError("substitute_all: variable without image");
  for (auto& t : r.terms_)
    std::sort(t.mono.begin(), t.mono.end(), [](const Factor& a, const Factor& b) { return a.var < b.var; });
  r.normalize();
  return r;
}

std::complex<double> SymExpr::eval(const std::vector<std::complex<double>>& point) const {
  std::complex<double> sum = 0;
  for (const auto& t : terms_) {
    std::complex<double> p = t.coeff.embed();
    for (const auto& f : t.mono) {
      if (f.var < 0 || static_cast<std::size_t>(f.var) >= point.size())
        throw DomainError("evaluation point misses a variable");
      std::complex<double> x = point[f.var];
      if (x == 0.0 && (f.exp.sign() < 0 || f.logp > 0 || !f.exp.is_integer()))
        throw DomainError("evaluation at a singular point");
      if (!f.exp.is_zero()) {
        if (f.exp.is_integer() && f.exp.is_small())
          p *= std::pow(x, static_cast<int>(f.exp.num_small()));
        else
          p *= std::pow(x, f.exp.to_double());
      }
      if (f.logp) p *= std::pow(std::log(x), f.logp);
    }
    sum += p;
  }
  return sum;
}

std::string SymExpr::str(const Symbols& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coeff.str();
    bool neg = t.coeff.is_real() && !c.empty() && c[0] == '-';
    if (neg) c = (-t.coeff).str();
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = c == "1";
    if (!unit || t.mono.empty()) os << c;
    bool need_star = !unit;
    for (const auto& f : t.mono) {
      if (need_star) os << "*";
      need_star = true;
      const std::string& n = names.at(f.var);
      if (!f.exp.is_zero()) {
        os << n;
        if (!f.exp.is_one()) {
          if (f.exp.is_integer() && f.exp.sign() > 0) os << "^" << f.exp.str();
          else os << "^(" << f.exp.str() << ")";
        }
        if (f.logp) os << "*";
      }
      if (f.logp) {
        os << "log(" << n << ")";
        if (f.logp != 1) os << "^" << f.logp;
      }
    }
  }
  return os.str();
}

nlohmann::json SymExpr::to_json(const Symbols& names) const {
  using nlohmann::json;
  json sum = json::array({"+"});
  for (const auto& t : terms_) {
    json prod = json::array({"*"});
    json c = json::array();
    for (int k = 0; k < 8; ++k) c.push_back(json_rational(t.coeff.coord(k)));
    prod.push_back(json::array({"const", c}));
    for (const auto& f : t.mono) {
      if (!f.exp.is_zero()) prod.push_back(json::array({"^", json::array({"var", names.at(f.var)}), f.exp.str()}));
      if (f.logp)
        prod.push_back(json::array({"^", json::array({"log", json::array({"var", names.at(f.var)})}),
                                    std::to_string(f.logp)}));
    }
    sum.push_back(prod);
  }
  return sum;
}

namespace {

int lookup(const Symbols& names, const std::string& n) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw ParseError("unknown symbol '" + n + "'");
  return static_cast<int>(it - names.begin());
}

FieldScalar field_from_json(const nlohmann::json& c) {
  if (c.is_string()) {
    auto v = fold_constant(*parse_expr(c.get<std::string>()));
    if (!v) throw ParseError("non-constant scalar");
    return *v;
  }
  if (c.is_number_integer()) return FieldScalar(c.get<long long>());
  if (!c.is_array() || c.size() != 8) throw ParseError("scalar must be an array of 8 rationals");
  FieldScalar a;
  for (int k = 0; k < 8; ++k) a.set_coord(k, Rational::parse(c[k].get<std::string>()));
  return a;
}

SymExpr json_node(const nlohmann::json& j, const Symbols& names) {
  if (!j.is_array() || j.empty()) throw ParseError("malformed expression tree");
  const std::string op = j[0].get<std::string>();
  if (op == "const") return SymExpr(field_from_json(j[1]));
  if (op == "var") return SymExpr::var(lookup(names, j[1].get<std::string>()));
  if (op == "+" || op == "*") {
    SymExpr acc(op == "+" ? 0 : 1);
    for (std::size_t k = 1; k < j.size(); ++k) {
      SymExpr e = json_node(j[k], names);
      if (op == "+") acc += e;
      else acc *= e;
    }
    return acc;
  }
  if (op == "log") {
    const auto& arg = j[1];
    if (!arg.is_array() || arg[0] != "var") throw ParseError("log of a non-variable");
    return SymExpr::log(lookup(names, arg[1].get<std::string>()));
  }
  if (op == "^") {
    Rational q = Rational::parse(j[2].get<std::string>());
    const auto& base = j[1];
    if (base.is_array() && base[0] == "var") return SymExpr::power(lookup(names, base[1].get<std::string>()), q);
    if (!q.is_integer()) throw ParseError("fractional power of a compound expression");
    return json_node(base, names).pow(static_cast<int>(q.num_small()));
  }
  throw ParseError("unknown expression node '" + op + "'");
}

}  // namespace

SymExpr SymExpr::from_json(const nlohmann::json& j, const Symbols& names) { return json_node(j, names); }

SymExpr SymExpr::parse(std::string_view text, const Symbols& names) {
  return from_tree(*parse_expr(text), names);
}

SymExpr SymExpr::from_tree(const ExprNode& e, const Symbols& names) {
  using K = ExprNode::Kind;
  if (auto c = fold_constant(e)) return SymExpr(*c);
  switch (e.kind) {
    case K::Num: return SymExpr(FieldScalar(e.num));
    case K::Sym:
      if (e.jet != 0) throw ParseError("jet variables are not allowed here: '" + e.name + "'");
      return var(lookup(names, e.name));
    case K::Neg: return -from_tree(*e.kids[0], names);
    case K::Add: return from_tree(*e.kids[0], names) + from_tree(*e.kids[1], names);
    case K::Sub: return from_tree(*e.kids[0], names) - from_tree(*e.kids[1], names);
    case K::Mul: return from_tree(*e.kids[0], names) * from_tree(*e.kids[1], names);
    case K::Div: return from_tree(*e.kids[0], names).div_monomial(from_tree(*e.kids[1], names));
    case K::Pow: {
      auto q = fold_constant(*e.kids[1]);
      if (!q || !q->is_rational()) throw ParseError("exponent must be a rational constant");
      Rational r = q->rational_part();
      SymExpr base = from_tree(*e.kids[0], names);
      if (r.is_integer()) return base.pow(static_cast<int>(r.num_small()));
      const int tmp = 1 << 21;
      return SymExpr::power(tmp, r).substitute(tmp, base);
    }
    case K::Call: {
      if (e.name == "log") {
        SymExpr a = from_tree(*e.kids[0], names);
        if (a.terms_.size() != 1 || !a.terms_[0].coeff.is_one() || a.terms_[0].mono.size() != 1 ||
            !a.terms_[0].mono[0].exp.is_one())
          throw ParseError("log argument must be a variable");
        return log(a.terms_[0].mono[0].var);
      }
      if (e.name == "sqrt") {
        const int tmp = 1 << 21;
        return SymExpr::power(tmp, Rational(1, 2)).substitute(tmp, from_tree(*e.kids[0], names));
      }
      throw ParseError("unknown function '" + e.name + "'");
    }
  }
  throw ParseError("unhandled expression");
}

std::vector<SymExpr> SymExpr::coefficients_in(int v) const {
  std::vector<SymExpr> out;
  for (const auto& t : terms_) {
    int k = 0;
    Monomial rest;
    for (const auto& f : t.mono) {
      if (f.var == v) {
        if (f.logp || !f.exp.is_integer() || f.exp.sign() < 0) throw DomainError("not polynomial in variable");
        k = static_cast<int>(f.exp.num_small());
      } else {
        rest.push_back(f);
      }
    }
    if (static_cast<int>(out.size()) <= k) out.resize(k + 1);
    out[k].terms_.push_back({std::move(rest), t.coeff});
  }
  for (auto& c : out) c.normalize();
  return out;
}

bool sym_equal_sampled(const SymExpr& e1, const SymExpr& e2,
                       const std::vector<std::vector<std::complex<double>>>& points, double tol) {
  int used = 0;
  for (const auto& p : points) {
    std::complex<double> a, b;
    try {
      a = e1.eval(p);
      b = e2.eval(p);
    } catch (const DomainError&) {
      continue;
    }
    ++used;
    if (std::abs(a - b) > tol * (1 + std::abs(a))) return false;
  }
  if (used == 0) throw DomainError("all sample points are singular");
  return true;
}

}  // namespace wb
