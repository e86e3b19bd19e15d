#include <doctest.h>

#include "numqa/decimal.hpp"
#include "numqa/errors.hpp"

using numqa::Decimal;

TEST_CASE("parse and print") {
    CHECK(Decimal::parse_or_throw("113246").to_string() == "113246");
    CHECK(Decimal::parse_or_throw("-0.25").to_string() == "-0.25");
    CHECK(Decimal::parse_or_throw("0.470").to_string() == "0.47");
    CHECK(Decimal::parse_or_throw(".5").to_string() == "0.5");
    CHECK(Decimal::parse_or_throw("+3.10") == Decimal::parse_or_throw("3.1"));
    CHECK(!Decimal::parse("1."));
    CHECK(!Decimal::parse(""));
    CHECK(!Decimal::parse("1,234"));
    CHECK(!Decimal::parse("abc"));
    CHECK(!Decimal::parse("1e3"));
}

TEST_CASE("exact add/sub/mul") {
    Decimal a = Decimal::parse_or_throw("0.1");
    Decimal b = Decimal::parse_or_throw("0.2");
    CHECK(a.add(b).to_string() == "0.3");
    CHECK(a.subtract(b).to_string() == "-0.1");
    CHECK(a.multiply(b).to_string() == "0.02");
    // the binary-float classic stays exact here
    CHECK(a.add(b) == Decimal::parse_or_throw("0.3"));
}

TEST_CASE("division rounds half away from zero at scale 12") {
    Decimal one(1), three(3);
    CHECK(one.divide(three).to_string() == "0.333333333333");
    CHECK(Decimal(2).divide(three).to_string() == "0.666666666667");
    CHECK(Decimal(-2).divide(three).to_string() == "-0.666666666667");
    CHECK(Decimal(10).divide(Decimal(4)).to_string() == "2.5");
    CHECK_THROWS_AS(one.divide(Decimal(0)), numqa::DivisionByZero);
}

TEST_CASE("rounding half away from zero") {
    CHECK(Decimal::parse_or_throw("0.33335").rounded_half_away(4).to_string() == "0.3334");
    CHECK(Decimal::parse_or_throw("0.33334").rounded_half_away(4).to_string() == "0.3333");
    CHECK(Decimal::parse_or_throw("-0.33335").rounded_half_away(4).to_string() == "-0.3334");
    CHECK(Decimal::parse_or_throw("2.5").rounded_half_away(0).to_string() == "3");
    CHECK(Decimal::parse_or_throw("-2.5").rounded_half_away(0).to_string() == "-3");
    CHECK(Decimal::parse_or_throw("7").rounded_half_away(4).to_string() == "7");
}

TEST_CASE("power") {
    bool inexact = false;
    CHECK(Decimal(2).power(Decimal(10), &inexact).to_string() == "1024");
    CHECK(!inexact);
    CHECK(Decimal::parse_or_throw("0.5").power(Decimal(2)).to_string() == "0.25");
    CHECK(Decimal(2).power(Decimal(-1)).to_string() == "0.5");
    CHECK(Decimal(5).power(Decimal(0)).to_string() == "1");
    // long exact powers quantize to 12 fractional digits
    CHECK(Decimal::parse_or_throw("0.5").power(Decimal(20)).to_string() == "0.000000953674");
    // fractional exponent falls back to double and flags it
    Decimal r = Decimal(9).power(Decimal::parse_or_throw("0.5"), &inexact);
    CHECK(inexact);
    CHECK(r.rounded_half_away(6).to_string() == "3");
}

TEST_CASE("comparisons") {
    CHECK(Decimal::parse_or_throw("1.5") > Decimal::parse_or_throw("1.25"));
    CHECK(Decimal::parse_or_throw("-3") < Decimal(0));
    CHECK(Decimal::parse_or_throw("2.50").compare(Decimal::parse_or_throw("2.5")) == 0);
}
