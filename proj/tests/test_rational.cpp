#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unimodular/errors.hpp"
#include "unimodular/rational.hpp"

using namespace ul;

TEST_CASE("parse_rational accepts integers and p/q") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("+2") == Rational(2));
    CHECK(parse_rational(" 6/4 ") == Rational(3, 2));
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK(parse_rational("0/5") == Rational(0));
}

TEST_CASE("parse_rational reports the failing offset") {
    auto offset_of = [](const char* s) -> long {
        try {
            parse_rational(s);
        } catch (const FormatError& e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    CHECK(offset_of("") == 0);
    CHECK(offset_of("1x") == 1);
    CHECK(offset_of("1/0") == 2);
    CHECK(offset_of("1/") == 2);
    CHECK(offset_of("abc") == 0);
    CHECK(offset_of("1.5") == 1);
}

TEST_CASE("format_rational is canonical") {
    CHECK(format_rational(Rational(4, 2)) == "2");
    CHECK(format_rational(Rational(-3, 6)) == "-1/2");
    CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("format_real keeps 12 significant digits") {
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(3.14159265358979) == "3.14159265359");
    CHECK(format_real(-2.5) == "-2.5");
    CHECK(format_real(1e-20) == "1e-20");
    CHECK(format_real(123456789012345.0) == "1.23456789012e+14");
    CHECK(round12(3.14159265358979) == 3.14159265359);
    CHECK(round12(0.1) == 0.1);
}

TEST_CASE("sign") {
    CHECK(sign(Rational(-1, 2)) == -1);
    CHECK(sign(Rational(0)) == 0);
    CHECK(sign(Integer(5)) == 1);
}
