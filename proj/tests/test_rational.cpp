// Exact scalar layer: rationals, Bernoulli values, exact angles, recognition.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "ellu/rational.hpp"

using namespace ellu;

TEST_CASE("rational parse and print round-trip", "[rational]")
{
    REQUIRE(parse_rational("3/4") == Rational(3, 4));
    REQUIRE(parse_rational("-7") == Rational(-7));
    REQUIRE(parse_rational("-6/8") == Rational(-3, 4));
    REQUIRE(rat_str(Rational(-3, 4)) == "-3/4");
    REQUIRE(rat_str(Rational(5)) == "5");
    REQUIRE(rat_str(Rational(0)) == "0");
    REQUIRE(parse_rational(rat_str(Rational(22, 7))) == Rational(22, 7));
    REQUIRE_THROWS_AS(parse_rational("x/2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("floor and ceil handle negative fractions", "[rational]")
{
    REQUIRE(rat_floor(Rational(-7, 2)) == BigInt(-4));
    REQUIRE(rat_ceil(Rational(-7, 2)) == BigInt(-3));
    REQUIRE(rat_floor(Rational(5, 3)) == BigInt(1));
    REQUIRE(rat_ceil(Rational(5, 3)) == BigInt(2));
    REQUIRE(rat_floor(Rational(-4)) == BigInt(-4));
    REQUIRE(rat_ceil(Rational(-4)) == BigInt(-4));
    REQUIRE(rat_floor(Rational(0)) == BigInt(0));
}

TEST_CASE("gcd, lcm, integrality and narrowing", "[rational]")
{
    REQUIRE(big_gcd(BigInt(12), BigInt(18)) == BigInt(6));
    REQUIRE(big_lcm(BigInt(8), BigInt(12)) == BigInt(24));
    REQUIRE(big_lcm(BigInt(0), BigInt(5)) == BigInt(0));
    REQUIRE(is_integer(Rational(6, 3)));
    REQUIRE_FALSE(is_integer(Rational(1, 3)));
    REQUIRE(to_long(BigInt(42)) == 42);
    const BigInt huge = BigInt(1) << 80;
    REQUIRE_THROWS_AS(to_long(huge), std::overflow_error);
}

TEST_CASE("second Bernoulli polynomial exact values", "[rational]")
{
    REQUIRE(bernoulli2(Rational(0)) == Rational(1, 6));
    REQUIRE(bernoulli2(Rational(1)) == Rational(1, 6));
    REQUIRE(bernoulli2(Rational(1, 2)) == Rational(-1, 12));
    REQUIRE(bernoulli2(Rational(1, 3)) == Rational(-1, 18));
    REQUIRE(bernoulli2(Rational(-1, 3)) == Rational(11, 18));
    // symmetry about 1/2
    REQUIRE(bernoulli2(Rational(1, 3)) == bernoulli2(Rational(2, 3)));
    // the double overload agrees with the exact one
    REQUIRE(std::abs(bernoulli2(0.25) - to_double(bernoulli2(Rational(1, 4)))) < 1e-15);
}

TEST_CASE("exact angles canonicalize into [0,2) and multiply additively", "[rational]")
{
    REQUIRE(ExactAngle(Rational(5, 2)) == ExactAngle(Rational(1, 2)));
    REQUIRE(ExactAngle(Rational(-1, 3)) == ExactAngle(Rational(5, 3)));
    REQUIRE(ExactAngle(Rational(2)) == ExactAngle());
    const ExactAngle a{Rational(3, 4)};
    const ExactAngle b{Rational(3, 2)};
    REQUIRE((a * b).half_turns == Rational(1, 4));
    REQUIRE(ExactAngle(Rational(2, 3)).is_root_of_unity_of_order_dividing(BigInt(3)));
    REQUIRE_FALSE(ExactAngle(Rational(2, 3)).is_root_of_unity_of_order_dividing(BigInt(2)));
    // exp(pi*i/2) = i
    REQUIRE(std::abs(ExactAngle(Rational(1, 2)).value() - Complex(0.0, 1.0)) < 1e-15);
}

TEST_CASE("rational recognition by continued fractions", "[rational]")
{
    REQUIRE(recognize_rational(0.5).value() == Rational(1, 2));
    REQUIRE(recognize_rational(1.0 / 3.0 + 1e-12).value() == Rational(1, 3));
    REQUIRE(recognize_rational(-11.0 / 24.0).value() == Rational(-11, 24));
    REQUIRE_FALSE(recognize_rational(0.123456789, 24, 1e-8).has_value());
    // a loose tolerance accepts the nearby 1/8
    REQUIRE(recognize_rational(0.123456789, 24, 1e-1).has_value());
    REQUIRE_FALSE(recognize_rational(std::nan(""), 24, 1e-8).has_value());
}
