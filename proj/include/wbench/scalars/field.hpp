#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "wbench/scalars/rational.hpp"

namespace wb {

// Element of Q(i, sqrt2, sqrt3), stored on the basis {1, sqrt2, sqrt3, sqrt6} x {1, i}.
// Coordinate index is r + 4c with r the radical index (bit 0 -> sqrt2,
// bit 1 -> sqrt3) and c = 1 for the imaginary part.
class FieldScalar {
public:
  enum Radical : int { One = 0, Sqrt2 = 1, Sqrt3 = 2, Sqrt6 = 3 };

  FieldScalar() = default;
  FieldScalar(long long n) : FieldScalar(Rational(n)) {}  // NOLINT
  FieldScalar(const Rational& q);                         // NOLINT
  FieldScalar(long long n, long long d) : FieldScalar(Rational(n, d)) {}

  static FieldScalar basis(int r, bool imag, const Rational& q = Rational(1));
  static FieldScalar sqrt2() { return basis(Sqrt2, false); }
  static FieldScalar sqrt3() { return basis(Sqrt3, false); }
  static FieldScalar sqrt6() { return basis(Sqrt6, false); }
  static FieldScalar imag_unit() { return basis(One, true); }
  // sqrt(q) for rational q whose squarefree part is in {+-1, +-2, +-3, +-6}.
  static std::optional<FieldScalar> sqrt_rational(const Rational& q);

  const Rational& coord(int idx) const { return c_[idx]; }
  void set_coord(int idx, Rational q);
  std::uint8_t support() const { return mask_; }

  bool is_zero() const { return mask_ == 0; }
  bool is_one() const { return mask_ == 1 && c_[0].is_one(); }
  bool is_rational() const { return (mask_ & ~1u) == 0; }
  bool is_real() const { return (mask_ & 0xF0u) == 0; }
  Rational rational_part() const { return c_[0]; }

  FieldScalar operator-() const;
  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator*=(const Rational& q);
  FieldScalar& operator/=(const FieldScalar& o) { return *this *= o.inverse(); }

  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b);
  friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) { return a * b.inverse(); }
  friend bool operator==(const FieldScalar& a, const FieldScalar& b);
  friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

  FieldScalar inverse() const;
  std::optional<FieldScalar> try_div(const FieldScalar& b) const;
  FieldScalar pow(int e) const;
  FieldScalar conj() const;            // complex conjugation
  FieldScalar galois(int flip) const;  // flip bit 0: sqrt2 -> -sqrt2, bit 1: sqrt3 -> -sqrt3

  std::complex<double> embed() const;
  std::string str() const;

private:
  std::array<Rational, 8> c_{};
  std::uint8_t mask_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldScalar& a);

}  // namespace wb
