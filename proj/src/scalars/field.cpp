#include "wbench/scalars/field.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace wb {

namespace {

// sqrt(2)^a sqrt(3)^b products: basis r1 * r2 = factor * basis(r1 ^ r2).
constexpr long long radical_factor(int r1, int r2) {
  int shared = r1 & r2;
  return ((shared & 1) ? 2 : 1) * ((shared & 2) ? 3 : 1);
}

const char* radical_name(int r) {
  switch (r) {
    case 1: return "sqrt(2)";
    case 2: return "sqrt(3)";
    case 3: return "sqrt(6)";
    default: return "";
  }
}

}  // namespace

FieldScalar::FieldScalar(const Rational& q) {
  if (!q.is_zero()) {
    c_[0] = q;
    mask_ = 1;
  }
}

FieldScalar FieldScalar::basis(int r, bool imag, const Rational& q) {
  FieldScalar a;
  a.set_coord(r + (imag ? 4 : 0), q);
  return a;
}

void FieldScalar::set_coord(int idx, Rational q) {
  if (q.is_zero()) mask_ &= ~(1u << idx);
  else mask_ |= (1u << idx);
  c_[idx] = std::move(q);
}

std::optional<FieldScalar> FieldScalar::sqrt_rational(const Rational& q) {
  if (q.is_zero()) return FieldScalar();
  // sqrt(p/d) = sqrt(p d) / d; strip square factors of p d over small primes and
  // accept only when what is left is 1, 2, 3 or 6.
  mpz_class p = q.to_mpq().get_num() * q.to_mpq().get_den();
  mpz_class den = q.to_mpq().get_den();
  bool neg = p < 0;
  if (neg) p = -p;
  mpz_class root;
  mpz_class rem;
  int radical = 0;
  for (int r : {0, 1, 2, 3}) {
    long m = (r == 0) ? 1 : (r == 1 ? 2 : (r == 2 ? 3 : 6));
    if (p % m != 0) continue;
    mpz_class t = p / m;
    if (mpz_perfect_square_p(t.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), t.get_mpz_t());
      radical = r;
      FieldScalar out = basis(radical, neg, Rational(mpq_class(root, den)));
      return out;
    }
  }
  return std::nullopt;
}

FieldScalar FieldScalar::operator-() const {
  FieldScalar r = *this;
  for (int k = 0; k < 8; ++k)
    if (mask_ & (1u << k)) r.c_[k] = -c_[k];
  return r;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  for (int k = 0; k < 8; ++k)
    if (o.mask_ & (1u << k)) {
      c_[k] += o.c_[k];
      if (c_[k].is_zero()) mask_ &= ~(1u << k);
      else mask_ |= (1u << k);
    }
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  for (int k = 0; k < 8; ++k)
    if (o.mask_ & (1u << k)) {
      c_[k] -= o.c_[k];
      if (c_[k].is_zero()) mask_ &= ~(1u << k);
      else mask_ |= (1u << k);
    }
  return *this;
}

FieldScalar& FieldScalar::operator*=(const Rational& q) {
  if (q.is_zero()) return *this = FieldScalar();
  for (int k = 0; k < 8; ++k)
    if (mask_ & (1u << k)) c_[k] *= q;
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) { return *this = *this * o; }

FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
  if (a.mask_ == 1) {
    FieldScalar r = b;
    return r *= a.c_[0];
  }
  if (b.mask_ == 1) {
    FieldScalar r = a;
    return r *= b.c_[0];
  }
  FieldScalar r;
  if (a.mask_ == 0 || b.mask_ == 0) return r;
  std::array<Rational, 8> acc{};
  for (int i = 0; i < 8; ++i) {
    if (!(a.mask_ & (1u << i))) continue;
    int ri = i & 3, ci = i >> 2;
    for (int j = 0; j < 8; ++j) {
      if (!(b.mask_ & (1u << j))) continue;
      int rj = j & 3, cj = j >> 2;
      long long f = radical_factor(ri, rj);
      if (ci & cj) f = -f;
      Rational p = a.c_[i] * b.c_[j];
      if (f != 1) p *= Rational(f);
      acc[(ri ^ rj) + 4 * (ci ^ cj)] += p;
    }
  }
  for (int k = 0; k < 8; ++k)
    if (!acc[k].is_zero()) r.set_coord(k, std::move(acc[k]));
  return r;
}

bool operator==(const FieldScalar& a, const FieldScalar& b) {
  if (a.mask_ != b.mask_) return false;
  for (int k = 0; k < 8; ++k)
    if ((a.mask_ & (1u << k)) && !(a.c_[k] == b.c_[k])) return false;
  return true;
}

FieldScalar FieldScalar::conj() const {
  FieldScalar r = *this;
  for (int k = 4; k < 8; ++k)
    if (mask_ & (1u << k)) r.c_[k] = -c_[k];
  return r;
}

FieldScalar FieldScalar::galois(int flip) const {
  FieldScalar r = *this;
  for (int k = 0; k < 8; ++k)
    if ((mask_ & (1u << k)) && ((k & 3) & flip) && __builtin_popcount((k & 3) & flip) % 2 == 1)
      r.c_[k] = -c_[k];
  return r;
}

FieldScalar FieldScalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero in number field");
  if (is_rational()) return FieldScalar(c_[0].inverse());
  // Multiply through by conjugates until the norm is rational.
  FieldScalar b1 = conj();
  FieldScalar p1 = *this * b1;
  FieldScalar b2 = p1.galois(2);
  FieldScalar p2 = p1 * b2;
  FieldScalar b3 = p2.galois(1);
  FieldScalar n = p2 * b3;
  FieldScalar num = b1 * b2 * b3;
  return num *= n.rational_part().inverse();
}

std::optional<FieldScalar> FieldScalar::try_div(const FieldScalar& b) const {
  if (b.is_zero()) return std::nullopt;
  return *this * b.inverse();
}

FieldScalar FieldScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FieldScalar r(1), base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

std::complex<double> FieldScalar::embed() const {
  static const double rad[4] = {1.0, std::sqrt(2.0), std::sqrt(3.0), std::sqrt(6.0)};
  double re = 0, im = 0;
  for (int k = 0; k < 8; ++k) {
    if (!(mask_ & (1u << k))) continue;
    double v = c_[k].to_double() * rad[k & 3];
    if (k < 4) re += v;
    else im += v;
  }
  return {re, im};
}

std::string FieldScalar::str() const {
  if (is_zero()) return "0";
  if (is_rational()) return c_[0].str();
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < 8; ++k) {
    if (!(mask_ & (1u << k))) continue;
    Rational q = c_[k];
    bool neg = q.sign() < 0;
    if (neg) q = -q;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = (k & 3) != 0 || k >= 4;
    if (!(unit && q.is_one())) {
      os << q.str();
      if (unit) os << "*";
    }
    os << radical_name(k & 3);
    if (k >= 4) os << ((k & 3) ? "*I" : "I");
  }
  std::string s = os.str();
  return mask_ & (mask_ - 1) ? "(" + s + ")" : s;
}

std::ostream& operator<<(std::ostream& os, const FieldScalar& a) { return os << a.str(); }

}  // namespace wb
