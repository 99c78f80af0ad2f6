#include "doctest.h"

#include "cig/rational.hpp"

using cig::Rational;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(-4, 8) == Rational(-1, 2));
  CHECK(Rational(4, -8) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(-Rational(5, 2) == Rational(-5, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 2) >= Rational(7, 2));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("rational rendering and parsing") {
  CHECK(Rational(4).str() == "4/1");
  CHECK(Rational(-5, 2).str() == "-5/2");
  CHECK(Rational::parse("9/2") == Rational(9, 2));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse(" 7/8 ") == Rational(7, 8));
  CHECK(Rational::parse(Rational(25, 2).str()) == Rational(25, 2));
  CHECK_THROWS(Rational::parse("x"));
  CHECK_THROWS(Rational::parse(""));
}
