// Siegel function: translation laws, evaluation paths, torsion values, li01.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "ellu/siegel.hpp"

using namespace ellu;

namespace {

TorusPoint at_coords(Complex tau, double r1, double r2)
{
    return TorusPoint::with_coords(Complex(r1, 0.0) - Complex(r2, 0.0) * tau, tau, r1, r2);
}

double rel_err(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

}  // namespace

TEST_CASE("lattice translation laws", "[siegel]")
{
    const Complex tau(0.23, 1.19);
    const struct {
        double r1, r2;
    } pts[] = {{0.31, -0.42}, {0.77, -0.13}, {-0.58, 0.64}, {1.21, -1.37}, {0.05, -0.95}};
    for (const auto& c : pts) {
        const TorusPoint p = at_coords(tau, c.r1, c.r2);
        const Complex base = siegel(p);

        // z -> z + 1
        const Complex s10 = siegel(TorusPoint(p.z + 1.0, tau));
        REQUIRE(rel_err(s10, siegel_translation_factor(1, 0, c.r1, c.r2) * base) < 1e-11);

        // z -> z + tau
        const Complex s01 = siegel(TorusPoint(p.z + tau, tau));
        REQUIRE(rel_err(s01, siegel_translation_factor(0, 1, c.r1, c.r2) * base) < 1e-11);

        // iterated law z -> z + m + n*tau
        const Complex s = siegel(TorusPoint(p.z + 2.0 - 3.0 * tau, tau));
        REQUIRE(rel_err(s, siegel_translation_factor(2, -3, c.r1, c.r2) * base) < 1e-10);
    }
}

TEST_CASE("translation factors compose", "[siegel]")
{
    const double r1 = 0.41, r2 = -0.27;
    // translating by (1,0) and then by (0,1) from the shifted coordinates
    // (r1+1, r2) equals the combined factor for (1,1)
    const Complex f10 = siegel_translation_factor(1, 0, r1, r2);
    const Complex f01_shifted = siegel_translation_factor(0, 1, r1 + 1.0, r2);
    const Complex f11 = siegel_translation_factor(1, 1, r1, r2);
    REQUIRE(rel_err(f10 * f01_shifted, f11) < 1e-13);
    // factors are unimodular
    REQUIRE(std::abs(std::abs(f11) - 1.0) < 1e-13);
}

TEST_CASE("direct and reduced evaluation paths agree", "[siegel]")
{
    const Complex tau(-0.35, 0.87);
    for (const auto& c : {std::pair{0.62, -0.18}, {1.85, -2.31}, {-0.73, 1.44}}) {
        const TorusPoint p = at_coords(tau, c.first, c.second);
        const Complex d = siegel(p, {}, EvalPath::Direct);
        const Complex r = siegel(p, {}, EvalPath::Reduced);
        const Complex a = siegel(p, {}, EvalPath::Auto);
        REQUIRE(rel_err(d, r) < 1e-11);
        REQUIRE((a == d || a == r));
    }
}

TEST_CASE("the function is odd", "[siegel]")
{
    const Complex tau(0.11, 1.53);
    const TorusPoint p = at_coords(tau, 0.29, -0.37);
    const TorusPoint m = at_coords(tau, -0.29, 0.37);
    REQUIRE(rel_err(siegel(m), -siegel(p)) < 1e-11);
}

TEST_CASE("lattice points are rejected", "[siegel]")
{
    const Complex tau(0.4, 1.1);
    REQUIRE_THROWS_AS(siegel(TorusPoint(Complex(1.0, 0.0) + tau, tau)), std::domain_error);
    REQUIRE_THROWS_AS(siegel(TorusPoint(Complex(0.0, 0.0), tau)), std::domain_error);
    REQUIRE_THROWS_AS(log_abs_siegel(TorusPoint(Complex(2.0, 0.0), tau)), std::domain_error);
    const HalfPlanePoint h(tau);
    REQUIRE_THROWS_AS(siegel_torsion(TorsionParameter(Rational(2), Rational(-1)), h),
                      std::domain_error);
}

TEST_CASE("torsion evaluation matches the embedded analytic point", "[siegel]")
{
    const HalfPlanePoint h(Complex(0.27, 1.31));
    for (const auto& v : {TorsionParameter(Rational(1, 3), Rational(0)),
                          TorsionParameter(Rational(1, 5), Rational(2, 5)),
                          TorsionParameter(Rational(7, 4), Rational(-5, 6))}) {
        const Complex a = siegel_torsion(v, h);
        const Complex b = siegel(v.embed_point(h));
        REQUIRE(rel_err(a, b) < 1e-11);
    }
}

TEST_CASE("log modulus agrees with the plain logarithm and is lattice invariant", "[siegel]")
{
    const Complex tau(0.19, 1.07);
    const TorusPoint p = at_coords(tau, 0.44, -0.81);
    REQUIRE(std::abs(log_abs_siegel(p) - std::log(std::abs(siegel(p)))) < 1e-11);

    // |q|^{B2(-r2)/2} dominates far from the fundamental domain: the direct
    // value would overflow long before this, the log must stay finite
    const TorusPoint wild = at_coords(tau, 0.3, 40.0);
    const double lw = log_abs_siegel(wild);
    REQUIRE(std::isfinite(lw));

    // log|Si(z + m + n*tau)| = log|Si(z)| + log|translation factor|
    const TorusPoint q(p.z + 3.0 + 2.0 * tau, tau);
    const double expected =
        log_abs_siegel(p) + std::log(std::abs(siegel_translation_factor(3, 2, p.r1, p.r2)));
    REQUIRE(std::abs(log_abs_siegel(q) - expected) < 1e-10);
}

TEST_CASE("li01 determination and continuation", "[siegel]")
{
    const Complex tau(0.21, 1.23);
    const TorusPoint p = at_coords(tau, 0.37, -0.29);

    // the public determination factors through reduction
    REQUIRE(std::abs(li01(TorusPoint(p.z + 1.0, tau)) - li01(p)) < 1e-12);

    // analytic continuation across z -> z + 1 returns to the same branch
    const Complex c10 = li01_continuation(p, 1, 0);
    REQUIRE(std::abs(c10 - li01(p)) < 1e-9);

    // continuation across z -> z + tau picks up -r1 + 1/2
    const Complex c01 = li01_continuation(p, 0, 1);
    REQUIRE(std::abs(c01 - (li01(p) - p.r1 + 0.5)) < 1e-9);
}

TEST_CASE("truncation cap is enforced", "[siegel]")
{
    SiegelConfig cfg;
    cfg.max_terms = 3;
    const Complex tau(0.0, 0.05);  // tiny Im tau needs many terms
    REQUIRE_THROWS_AS(siegel(TorusPoint(Complex(0.3, 0.1), tau), cfg), std::domain_error);
}
