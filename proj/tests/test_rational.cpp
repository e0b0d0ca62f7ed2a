#include <doctest.h>

#include "supercf/rational.hpp"

using namespace supercf;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  Rational a(6, -4);
  CHECK(a.str() == "-3/2");
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(10, 5).str() == "2");
}

TEST_CASE("parse accepts p and p/q, rejects junk") {
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK(Rational::parse("2/4").str() == "1/2");
  CHECK(Rational::parse("-2/4").str() == "-1/2");
  CHECK(Rational::parse("123456789012345678901234567890/2").str() ==
        "61728394506172839450617283945");
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational::parse("a/b"));
  CHECK_THROWS(Rational::parse("1/2/3"));
}

TEST_CASE("field operations are exact: two evaluation orders agree bit for bit") {
  // (a/b + c/d) computed two ways
  Rational a(1, 3), c(5, 7);
  Rational s1 = a + c;
  Rational s2 = Rational(1 * 7 + 5 * 3, 21);
  CHECK(s1 == s2);
  CHECK(s1.str() == s2.str());

  Rational x(355, 113);
  Rational y = (x * x - x) / x;
  CHECK(y == x - Rational(1));
  CHECK_THROWS(x / Rational(0));
}

TEST_CASE("ordering and floor") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2).floor() == -1);
  CHECK(Rational(5, 2).floor() == 2);
  CHECK(Rational(4, 2).floor() == 2);
}
