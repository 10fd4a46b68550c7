#include <catch2/catch_amalgamated.hpp>

#include "vc2ss/rational.hpp"

using vc2ss::Rational;

TEST_CASE("rational normalization and accessors") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(3, -2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK(Rational(5).num() == 5);
    CHECK(Rational(7, -3).den() == 3);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic") {
    Rational third(1, 3), quarter(1, 4);
    CHECK(third + quarter == Rational(7, 12));
    CHECK(third - quarter == Rational(1, 12));
    CHECK(third * quarter == Rational(1, 12));
    CHECK(third / quarter == Rational(4, 3));
    CHECK(-third == Rational(-1, 3));
    Rational acc(0);
    for (int i = 0; i < 12; ++i) acc += third;
    CHECK(acc == Rational(4));
    acc -= Rational(1, 2);
    CHECK(acc == Rational(7, 2));
    CHECK_THROWS_AS(third / Rational(0), std::invalid_argument);
}

TEST_CASE("rational comparisons") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(4, 3) > Rational(1));
    CHECK(Rational(2, 6) <= Rational(1, 3));
    CHECK(Rational(2, 6) >= Rational(1, 3));
    CHECK(Rational(10, 3) != Rational(3));
}

TEST_CASE("rational ceil and formatting") {
    CHECK(Rational(7, 3).ceil() == 3);
    CHECK(Rational(6, 3).ceil() == 2);
    CHECK(Rational(-7, 3).ceil() == -2);
    CHECK(Rational(0).ceil() == 0);
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK(Rational(4).str() == "4");
    CHECK(Rational(-3, 4).str() == "-3/4");
}
