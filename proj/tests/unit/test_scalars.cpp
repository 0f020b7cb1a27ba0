#include <doctest.h>

#include <random>

#include "wbench/scalars/field.hpp"
#include "wbench/scalars/symexpr.hpp"

using namespace wb;

namespace {

FieldScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7), use(0, 2);
  FieldScalar a;
  for (int k = 0; k < 8; ++k)
    if (use(rng) == 0) a.set_coord(k, Rational(num(rng), den(rng)));
  return a;
}

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / (1 + std::abs(b)); }

}  // namespace

TEST_CASE("rational arithmetic and overflow promotion") {
  Rational a(1, 3), b(-2, 6);
  CHECK((a + b).is_zero());
  CHECK(a * Rational(3) == Rational(1));
  Rational big(1);
  for (int k = 0; k < 40; ++k) big *= Rational(1000003);
  CHECK(!big.is_small());
  Rational back = big;
  for (int k = 0; k < 40; ++k) back /= Rational(1000003);
  CHECK(back.is_one());
  CHECK(back.is_small());
  CHECK(Rational::parse("-12/8") == Rational(-3, 2));
  CHECK(Rational(7, 2).str() == "7/2");
}

TEST_CASE("field basis products") {
  CHECK(FieldScalar::sqrt2() * FieldScalar::sqrt3() == FieldScalar::sqrt6());
  FieldScalar i = FieldScalar::imag_unit();
  CHECK((FieldScalar(1) + i) * (FieldScalar(1) - i) == FieldScalar(2));
  CHECK(i * i == FieldScalar(-1));
  CHECK(FieldScalar::sqrt6() * FieldScalar::sqrt6() == FieldScalar(6));
}

TEST_CASE("2 i sqrt(2/3) rationalizes to (2/3) i sqrt6") {
  auto s = FieldScalar::sqrt_rational(Rational(2, 3));
  REQUIRE(s.has_value());
  FieldScalar v = FieldScalar(2) * FieldScalar::imag_unit() * *s;
  CHECK(v == FieldScalar::basis(FieldScalar::Sqrt6, true, Rational(2, 3)));
  CHECK(!FieldScalar::sqrt_rational(Rational(5)).has_value());
  CHECK(*FieldScalar::sqrt_rational(Rational(-8)) == FieldScalar::basis(FieldScalar::Sqrt2, true, Rational(2)));
}

TEST_CASE("field inverse and division error") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    FieldScalar a = random_scalar(rng);
    if (a.is_zero()) continue;
    CHECK((a * a.inverse()).is_one());
  }
  CHECK_THROWS_AS(FieldScalar().inverse(), DomainError);
  CHECK(!FieldScalar(1).try_div(FieldScalar()).has_value());
}

TEST_CASE("numeric embedding is a ring homomorphism") {
  std::mt19937_64 rng(11);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    FieldScalar a = random_scalar(rng), b = random_scalar(rng);
    worst = std::max(worst, rel((a * b).embed(), a.embed() * b.embed()));
    worst = std::max(worst, rel((a + b).embed(), a.embed() + b.embed()));
    worst = std::max(worst, rel(a.conj().embed(), std::conj(a.embed())));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("symbolic derivatives") {
  Symbols s{"t1", "t2"};
  SymExpr f = SymExpr::parse("1/24*t1^2*log(t1)", s);
  CHECK(f.diff(0) == SymExpr::parse("1/12*t1*log(t1) + 1/24*t1", s));
  SymExpr g = SymExpr::parse("6/5*sqrt(2)*t1^(5/2)", s);
  CHECK(g.diff(0) == SymExpr::parse("3*sqrt(2)*t1^(3/2)", s));
  CHECK(SymExpr(5).diff(1).is_zero());
  SymExpr h = SymExpr::parse("t1^3*t2 - 2*t1*t2^4 + log(t1)*t2^2", s);
  CHECK(h.diff(0).diff(1) == h.diff(1).diff(0));
}

TEST_CASE("symbolic evaluation and canonical form") {
  Symbols s{"t1", "t2"};
  CHECK(std::abs(SymExpr::parse("t1^2*log(t1)", s).eval({1.0, 0.0})) < 1e-15);
  CHECK(std::abs(SymExpr::parse("sqrt(t1)", s).eval({4.0, 0.0}) - 2.0) < 1e-15);
  CHECK_THROWS_AS(SymExpr::parse("log(t1)", s).eval({0.0, 1.0}), DomainError);
  SymExpr a = SymExpr::parse("(t1+t2)^2", s), b = SymExpr::parse("t1^2 + 2*t1*t2 + t2^2", s);
  CHECK(a == b);
  CHECK(a + SymExpr() == a);
  std::vector<std::vector<std::complex<double>>> pts;
  for (int k = 1; k <= 5; ++k) pts.push_back({0.3 * k, 0.1 + 0.2 * k});
  CHECK(sym_equal_sampled(a, b, pts, 1e-12));
  CHECK(!sym_equal_sampled(a, SymExpr::parse("t1^2 + t2^2", s), pts, 1e-12));
}

TEST_CASE("square-root display entry under t1 = 8u^2") {
  Symbols s{"u", "t1"};
  SymExpr shown = SymExpr::parse("3*sqrt(2)*sqrt(t1)", s);
  CHECK(shown.substitute(1, SymExpr::parse("8*u^2", s)) == SymExpr::parse("12*u", s));
  std::vector<std::vector<std::complex<double>>> pts;
  for (int k = 1; k <= 5; ++k) {
    double u = 0.25 * k;
    pts.push_back({u, 8 * u * u});
  }
  CHECK(sym_equal_sampled(shown, SymExpr::parse("12*u", s), pts, 1e-12));
}

TEST_CASE("json prefix tree round trip") {
  Symbols s{"t1", "t2", "t3"};
  SymExpr f = SymExpr::parse("t1^3/12 + 1/2*t2*t3*t1 - 1/6*t2^3*t3 - 1/8*t3^2*log(t3) + I*sqrt(3)*t1^(1/2)", s);
  CHECK(SymExpr::from_json(f.to_json(s), s) == f);
  CHECK(SymExpr::parse(f.str(s), s) == f);
}
