// Exact q-expansions: the frozen Euler-product oracle, leading terms,
// power/inverse algebra, root-of-unity ratios, the series-level
// distribution relation, and numeric resummation.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ellu/qseries.hpp"
#include "ellu/siegel.hpp"

using namespace ellu;

namespace {

const TorsionParameter v013{Rational(0), Rational(1, 3)};

CyclotomicNumber rat(long p, long q = 1) { return CyclotomicNumber(Rational(p, q)); }

}  // namespace

TEST_CASE("the (0,1/3) expansion is the Euler product over exponents prime to 3",
          "[qseries]")
{
    // q^{-1/36} * prod_{m >= 1, 3 !| m} (1 - q^{m/3}); the first nine
    // coefficients of the product are 1,-1,-1,1,-1,0,2,-1,-1.
    const QSeries s = qexp_siegel(v013, Rational(3));
    REQUIRE(s.leading_exponent() == Rational(-1, 36));
    const long expect[] = {1, -1, -1, 1, -1, 0, 2, -1, -1};
    for (int k = 0; k < 9; ++k) {
        const Rational e = Rational(-1, 36) + Rational(k, 3);
        REQUIRE(s.coefficient(e) == rat(expect[k]));
    }
    // every coefficient is a plain rational integer here
    for (const auto& [e, c] : s.terms()) {
        REQUIRE(c.is_rational());
        REQUIRE(is_integer(c.rational_value()));
        REQUIRE(is_integer((e - Rational(-1, 36)) * 3));
    }
}

TEST_CASE("leading terms at two-torsion", "[qseries]")
{
    const QSeries s = qexp_siegel(TorsionParameter(Rational(1, 2), Rational(0)), Rational(2));
    REQUIRE(s.leading_exponent() == Rational(1, 12));
    // prefactor exp(pi*i/2) times (1 - zeta_2) = 2i
    REQUIRE(s.leading_coefficient() == CyclotomicNumber::zeta(4) * rat(2));
}

TEST_CASE("integral parameters are rejected", "[qseries]")
{
    REQUIRE_THROWS_AS(qexp_siegel(TorsionParameter(Rational(2), Rational(-1)), Rational(1)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(qexp_siegel(TorsionParameter(Rational(0), Rational(0)), Rational(1)),
                      std::invalid_argument);
}

TEST_CASE("series algebra: inversion and power associativity", "[qseries]")
{
    const QSeries s = qexp_siegel(v013, Rational(2));
    const QSeries one = QSeries::monomial(Rational(0), rat(1), Rational(1));
    REQUIRE((s * s.inverted()) == one);
    REQUIRE((s.pow(BigInt(2))).pow(BigInt(3)) == (s.pow(BigInt(3))).pow(BigInt(2)));
    REQUIRE(s.pow(BigInt(-1)) == s.inverted());
}

TEST_CASE("integer powers stay on the level-three exponent lattice", "[qseries]")
{
    // 36th power of the (0,1/3) unit: leading exponent -1, and the expansion
    // proceeds in powers of q^{1/3} with integer coefficients.  The exponents
    // genuinely leave Z: the q^{-2/3} coefficient is -36.
    const QSeries p36 = qexp_siegel_power(v013, BigInt(36), Rational(0));
    REQUIRE(p36.leading_exponent() == Rational(-1));
    REQUIRE(p36.coefficient(Rational(-1)) == rat(1));
    REQUIRE(p36.coefficient(Rational(-2, 3)) == rat(-36));
    REQUIRE(p36.coefficient(Rational(-1, 3)) == rat(594));
    for (const auto& [e, c] : p36.terms()) {
        REQUIRE(is_integer(e * 3));
        REQUIRE(c.is_rational());
        REQUIRE(is_integer(c.rational_value()));
    }

    // for v2 = 0 the 36th power does have integral exponents
    const QSeries w36 =
        qexp_siegel_power(TorsionParameter(Rational(1, 3), Rational(0)), BigInt(36), Rational(6));
    REQUIRE(w36.leading_exponent() == Rational(3));
    for (const auto& [e, c] : w36.terms()) {
        REQUIRE(is_integer(e));
        REQUIRE(c.minimized().conductor() <= 3);
    }

    // consistency with the generic power route
    REQUIRE(qexp_siegel_power(v013, BigInt(2), Rational(1)) ==
            qexp_siegel(v013, Rational(2)).pow(BigInt(2)));

    // powers that lead beyond the truncation order are the zero series
    REQUIRE_FALSE(qexp_siegel_power(v013, BigInt(36), Rational(-2)).has_terms());

    // zeroth power is 1
    const QSeries p0 = qexp_siegel_power(v013, BigInt(0), Rational(1));
    REQUIRE(p0.leading_exponent() == Rational(0));
    REQUIRE(p0.leading_coefficient() == rat(1));
}

TEST_CASE("root-of-unity ratio detection", "[qseries]")
{
    const QSeries s = qexp_siegel(v013, Rational(2));

    // a series equals itself with constant 1
    REQUIRE(ratio_root_of_unity(s, s)->half_turns == Rational(0));

    // scaling by an eighth root is detected exactly
    const QSeries t = s.scaled(CyclotomicNumber::zeta(8));
    REQUIRE(ratio_root_of_unity(t, s)->half_turns == Rational(1, 4));

    // translation by Z^2 changes the unit only through such a constant; the
    // expansion is computed from the reduced parameter, so the two series
    // coincide outright
    const QSeries a = qexp_siegel(TorsionParameter(Rational(4, 3), Rational(1, 3)), Rational(2));
    const QSeries b = qexp_siegel(TorsionParameter(Rational(1, 3), Rational(1, 3)), Rational(2));
    REQUIRE(a == b);
    REQUIRE(ratio_root_of_unity(a, b)->half_turns == Rational(0));

    // the (0,1/3) and (0,2/3) units have the same expansion: the underlying
    // points differ by negation and a lattice shift whose factors cancel
    const QSeries c = qexp_siegel(TorsionParameter(Rational(0), Rational(2, 3)), Rational(2));
    REQUIRE(c == qexp_siegel(v013, Rational(2)));

    // scaling by a non-root constant is rejected
    const QSeries u = s.scaled(rat(2));
    REQUIRE_FALSE(ratio_root_of_unity(u, s).has_value());

    // genuinely different units are rejected by the term-by-term comparison
    const QSeries d =
        qexp_siegel(TorsionParameter(Rational(1, 3), Rational(1, 3)), Rational(2));
    const QSeries e = qexp_siegel(TorsionParameter(Rational(2, 3), Rational(1, 3)), Rational(2));
    REQUIRE_FALSE(ratio_root_of_unity(d, e).has_value());

    // different leading exponents are rejected immediately
    REQUIRE_FALSE(
        ratio_root_of_unity(qexp_siegel(TorsionParameter(Rational(1, 2), Rational(0)),
                                        Rational(2)),
                            s)
            .has_value());
}

TEST_CASE("distribution relation at series level", "[qseries]")
{
    // The four halves of v = (1/4, 3/4) are w0 + {0,1/2}^2 with w0 = (1/8, 3/8).
    // The product of their units equals the undivided unit up to a root of
    // unity; both sides lead at -1/96, and ten q^{1/8}-grid steps are covered.
    const Rational order(119, 96);
    const std::vector<std::pair<TorsionParameter, BigInt>> halves = {
        {TorsionParameter(Rational(1, 8), Rational(3, 8)), BigInt(1)},
        {TorsionParameter(Rational(5, 8), Rational(3, 8)), BigInt(1)},
        {TorsionParameter(Rational(1, 8), Rational(7, 8)), BigInt(1)},
        {TorsionParameter(Rational(5, 8), Rational(7, 8)), BigInt(1)},
    };
    const QSeries prod = qexp_siegel_product(halves, order);
    const QSeries undivided =
        qexp_siegel(TorsionParameter(Rational(1, 4), Rational(3, 4)), order);
    REQUIRE(prod.leading_exponent() == Rational(-1, 96));
    REQUIRE(undivided.leading_exponent() == Rational(-1, 96));
    const auto rho = ratio_root_of_unity(prod, undivided);
    REQUIRE(rho.has_value());

    // the constant is unimodular, so resummed moduli agree
    const Complex tau(0.0, 2.5);
    REQUIRE(std::abs(std::abs(prod.eval(tau)) - std::abs(undivided.eval(tau))) /
                std::abs(undivided.eval(tau)) < 1e-6);
}

TEST_CASE("resummation matches direct evaluation", "[qseries]")
{
    const HalfPlanePoint h(Complex(0.0, 2.0));
    const TorsionParameter v(Rational(1, 5), Rational(2, 5));
    const QSeries s = qexp_siegel(v, Rational(3));
    const Complex direct = siegel_torsion(v, h);
    REQUIRE(std::abs(s.eval(h.tau) - direct) / std::abs(direct) < 1e-8);
}
