#include "wbench/scalars/rational.hpp"

#include <limits>
#include <ostream>

namespace wb {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(__int128 x) { return x < 0 ? u128(-x) : u128(x); }

constexpr __int128 kMax = std::numeric_limits<long long>::max();

bool fits(__int128 x) { return x <= kMax && x >= -kMax; }

mpz_class to_mpz(__int128 x) {
  bool neg = x < 0;
  u128 u = uabs(x);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  assign_i128(n, d);
}

Rational::Rational(const mpq_class& q) { set_big(q); }

Rational Rational::parse(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  mpq_class q;
  try {
    if (slash == std::string::npos) {
      q = mpq_class(mpz_class(str, 10));
    } else {
      mpz_class n(str.substr(0, slash), 10), d(str.substr(slash + 1), 10);
      if (d == 0) throw DomainError("rational with zero denominator");
      q = mpq_class(n, d);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational '" + str + "'");
  }
  return Rational(q);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  n_ = o.n_;
  d_ = o.d_;
  if (o.big_) {
    if (big_) *big_ = *o.big_;
    else big_ = new mpq_class(*o.big_);
  } else {
    delete big_;
    big_ = nullptr;
  }
  return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
  if (this == &o) return *this;
  delete big_;
  n_ = o.n_;
  d_ = o.d_;
  big_ = o.big_;
  o.big_ = nullptr;
  return *this;
}

void Rational::assign_i128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    delete big_;
    big_ = nullptr;
    n_ = 0;
    d_ = 1;
    return;
  }
  u128 g = gcd128(uabs(n), u128(d));
  if (g > 1) {
    n /= __int128(g);
    d /= __int128(g);
  }
  if (fits(n) && fits(d)) {
    delete big_;
    big_ = nullptr;
    n_ = static_cast<long long>(n);
    d_ = static_cast<long long>(d);
    return;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  set_big(std::move(q));
}

void Rational::set_big(mpq_class q) {
  q.canonicalize();
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    // Demote when both parts fit; keeps the common case on the fast path.
    long nn = n.get_si(), dd = d.get_si();
    if (nn != std::numeric_limits<long>::min()) {
      delete big_;
      big_ = nullptr;
      n_ = nn;
      d_ = dd;
      return;
    }
  }
  if (big_) *big_ = std::move(q);
  else big_ = new mpq_class(std::move(q));
  n_ = 0;
  d_ = 1;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (n_ > 0) - (n_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.n_ = -n_;
  r.d_ = d_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      __int128 s = __int128(n_) + o.n_;
      if (fits(s)) {
        n_ = static_cast<long long>(s);
        return *this;
      }
    }
    assign_i128(__int128(n_) * o.d_ + __int128(o.n_) * d_, __int128(d_) * o.d_);
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      __int128 p = __int128(n_) * o.n_;
      if (fits(p)) {
        n_ = static_cast<long long>(p);
        return *this;
      }
    }
    assign_i128(__int128(n_) * o.n_, __int128(d_) * o.d_);
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (big_) return Rational(mpq_class(1 / *big_));
  Rational r;
  r.assign_i128(d_, n_);
  return r;
}

Rational Rational::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Rational r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: big only when it does not fit inline
}

int Rational::cmp(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = __int128(a.n_) * b.d_, r = __int128(b.n_) * a.d_;
    return (l > r) - (l < r);
  }
  return ::cmp(a.to_mpq(), b.to_mpq());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace wb
