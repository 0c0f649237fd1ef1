#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leakproof/rational.hpp"

using leakproof::Rational;

TEST_CASE("construction normalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(6, 3).num() == 2);
  CHECK(Rational(6, 3).den() == 1);
}

TEST_CASE("arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  Rational sum(0);
  for (int i = 0; i < 101; ++i) sum += Rational(1, 101);
  CHECK(sum == Rational(1));
}

TEST_CASE("comparisons cross-multiply exactly") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 9) > Rational(6, 9));
  // Values near the int64 edge: comparison must not overflow.
  Rational big1(4611686018427387903LL, 2);
  Rational big2(4611686018427387903LL, 3);
  CHECK(big2 < big1);
}

TEST_CASE("parse accepts fractions and decimals") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("0.005") == Rational(1, 200));
  CHECK_THROWS_AS(Rational::parse("x"), leakproof::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/"), leakproof::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), leakproof::ParseError);
}

TEST_CASE("str round-trips") {
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-3, 4).str() == "-3/4");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
}

TEST_CASE("overflow throws instead of wrapping") {
  Rational big(4611686018427387903LL);  // 2^62 - 1
  CHECK_THROWS_AS(big * big, leakproof::RationalOverflow);
  CHECK_THROWS_AS(Rational(1, 0), leakproof::RationalOverflow);
  Rational x(1, 3);
  CHECK_THROWS_AS(x / Rational(0), leakproof::RationalOverflow);
}

TEST_CASE("to_double") {
  CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(Rational(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0));
}
