#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wb {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Exact rational. Values whose numerator and denominator fit in int64 live
// inline; anything larger is carried by a heap mpq_class.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : n_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);
  static Rational parse(std::string_view s);

  Rational(const Rational& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? new mpq_class(*o.big_) : nullptr) {}
  Rational(Rational&& o) noexcept : n_(o.n_), d_(o.d_), big_(o.big_) { o.big_ = nullptr; }
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept;
  ~Rational() { delete big_; }

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return big_ == nullptr; }
  // Only meaningful when is_small().
  long long num_small() const { return n_; }
  long long den_small() const { return d_; }

  mpq_class to_mpq() const;
  double to_double() const;
  std::string str() const;  // "p/q" or "p"

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }
  static int cmp(const Rational& a, const Rational& b);

  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational pow(int e) const;

private:
  void set_big(mpq_class q);
  void assign_i128(__int128 n, __int128 d);

  long long n_ = 0;
  long long d_ = 1;
  mpq_class* big_ = nullptr;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace wb
