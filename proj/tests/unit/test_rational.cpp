#include "support.hpp"

#include <limits>
#include <sstream>

using archlab::ErrorCode;
using archlab::Rational;
using archlab::test::code_of;

TEST_CASE("rationals are kept in lowest terms") {
    const Rational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(r.to_string() == "-3/2");
    CHECK(Rational(10, 5).to_string() == "2");
    CHECK(Rational(0, -7) == Rational(0));
}

TEST_CASE("rational arithmetic and ordering") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(9, 2).reciprocal() == Rational(2, 9));
    CHECK(Rational(-5, 3).abs() == Rational(5, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 7) == Rational(1));
}

TEST_CASE("rational parsing round-trips to_string") {
    for (const Rational r : {Rational(0), Rational(21), Rational(-3, 2), Rational(9, 2), Rational(1, 9)}) {
        CHECK(Rational::parse(r.to_string()) == r);
    }
    std::ostringstream os;
    os << Rational(5, 2);
    CHECK(os.str() == "5/2");
    CHECK_THROWS(Rational::parse("1.5"));
    CHECK_THROWS(Rational::parse("3/0"));
}

TEST_CASE("rational overflow is reported, not wrapped") {
    const Rational big(std::numeric_limits<std::int64_t>::max());
    CHECK(code_of([&] { (void)(big + Rational(1)); }) == ErrorCode::ArithmeticOverflow);
    CHECK(code_of([&] { (void)(big * Rational(2)); }) == ErrorCode::ArithmeticOverflow);
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS((void)Rational(0).reciprocal());
}
