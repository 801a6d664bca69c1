#include "doctest.h"
#include "weylab/rational.hpp"

using weylab::Rational;

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK((a + Rational(1, 2)) == Rational(1));
    CHECK((Rational(1, 3) * Rational(3, 5)) == Rational(1, 5));
    CHECK((Rational(7, 2) - Rational(1, 2)) == Rational(3));
    CHECK((Rational(1, 3) / Rational(2, 3)) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
}

TEST_CASE("rational comparisons and floor/frac") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5, 2).floor_r() == Rational(-3));
    CHECK(Rational(5, 2).floor_r() == Rational(2));
    CHECK(Rational(5, 2).frac() == Rational(1, 2));
    CHECK(Rational(-1, 4).frac() == Rational(3, 4));
    CHECK(Rational(7, 3).ceil_r() == Rational(3));
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("2.5") == Rational(5, 2));
    CHECK(Rational::parse("-0.2") == Rational(-1, 5));
    CHECK_THROWS(Rational::parse("abc"));
    CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}
