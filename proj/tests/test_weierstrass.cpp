// Weierstrass layer: Eisenstein normalization, sigma quasi-periodicity,
// discriminant identities, wp differential equation, Klein parallelogram law.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "ellu/weierstrass.hpp"

using namespace ellu;

namespace {

double rel_err(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

}  // namespace

TEST_CASE("Eisenstein series normalize to 1 at the cusp", "[weierstrass]")
{
    const LatticeFunctions lf(HalfPlanePoint(Complex(0.0, 5.0)));
    REQUIRE(std::abs(lf.e2() - 1.0) < 1e-10);
    REQUIRE(std::abs(lf.e4() - 1.0) < 1e-10);
    REQUIRE(std::abs(lf.e6() - 1.0) < 1e-10);
}

TEST_CASE("special lattices pin the invariants", "[weierstrass]")
{
    // square lattice: g3 = 0, j = 1728
    const LatticeFunctions sq(HalfPlanePoint(Complex(0.0, 1.0)));
    REQUIRE(std::abs(sq.g3()) / std::pow(std::abs(sq.g2()), 1.5) < 1e-10);
    const Complex j_sq = 1728.0 * sq.g2() * sq.g2() * sq.g2() / sq.discriminant();
    REQUIRE(std::abs(j_sq - 1728.0) < 1e-6);

    // hexagonal lattice: g2 = 0, j = 0
    const LatticeFunctions hex(HalfPlanePoint(Complex(0.5, std::sqrt(3.0) / 2.0)));
    REQUIRE(std::abs(hex.g2()) / std::pow(std::abs(hex.g3()), 2.0 / 3.0) < 1e-8);
    const Complex j_hex = 1728.0 * hex.g2() * hex.g2() * hex.g2() / hex.discriminant();
    REQUIRE(std::abs(j_hex) < 1e-4);
}

TEST_CASE("discriminant identities", "[weierstrass]")
{
    const LatticeFunctions lf(HalfPlanePoint(Complex(0.3, 1.2)));
    const Complex g2 = lf.g2(), g3 = lf.g3();
    const Complex poly = g2 * g2 * g2 - 27.0 * g3 * g3;
    REQUIRE(rel_err(poly, lf.discriminant()) < 1e-10);

    Complex root12 = lf.delta_twelfth_root();
    Complex pw = 1.0;
    for (int k = 0; k < 12; ++k) pw *= root12;
    REQUIRE(rel_err(pw, lf.discriminant()) < 1e-10);

    REQUIRE(std::abs(lf.log_abs_discriminant() - std::log(std::abs(lf.discriminant()))) <
            1e-10);
}

TEST_CASE("sigma quasi-periodicity determines the quasi-periods", "[weierstrass]")
{
    const Complex tau(0.21, 1.33);
    const LatticeFunctions lf{HalfPlanePoint(tau)};
    // Im z < 0 keeps both z and z + tau inside the sigma strip r2 in (-1,1)
    const Complex z(0.23, -0.31);
    const TorusPoint p(z, tau);

    // sigma(z + 1) = -exp(eta1 * (z + 1/2)) * sigma(z)
    const Complex lhs1 = lf.sigma(TorusPoint(z + 1.0, tau));
    const Complex rhs1 = -std::exp(lf.eta1() * (z + 0.5)) * lf.sigma(p);
    REQUIRE(rel_err(lhs1, rhs1) < 1e-10);

    // sigma(z + tau) = -exp((eta1*tau - 2*pi*i) * (z + tau/2)) * sigma(z)
    const TorusPoint pt(z + tau, tau);
    REQUIRE(std::abs(pt.r2) < 1.0);  // stays inside the strip for this z
    const Complex eta_tau = lf.eta1() * tau - Complex(0.0, two_pi);
    const Complex rhs2 = -std::exp(eta_tau * (z + 0.5 * tau)) * lf.sigma(p);
    REQUIRE(rel_err(lf.sigma(pt), rhs2) < 1e-10);

    // the R-linear quasi-period map matches on both generators
    REQUIRE(rel_err(lf.eta(TorusPoint::with_coords(Complex(1.0, 0.0), tau, 1.0, 0.0)),
                    lf.eta1()) < 1e-12);
    REQUIRE(rel_err(lf.eta(TorusPoint::with_coords(tau, tau, 0.0, -1.0)), eta_tau) < 1e-12);

    // sigma rejects points outside its strip
    REQUIRE_THROWS_AS(lf.sigma(TorusPoint(z + 2.0 * tau, tau)), std::domain_error);
}

TEST_CASE("wp is even, periodic, and solves its differential equation", "[weierstrass]")
{
    const Complex tau(-0.14, 1.08);
    const LatticeFunctions lf{HalfPlanePoint(tau)};
    const Complex z(0.27, 0.41);
    const TorusPoint p(z, tau);

    REQUIRE(rel_err(lf.wp(TorusPoint(-z, tau)), lf.wp(p)) < 1e-10);
    REQUIRE(rel_err(lf.wp(TorusPoint(z + 1.0, tau)), lf.wp(p)) < 1e-10);
    REQUIRE(rel_err(lf.wp(TorusPoint(z + tau, tau)), lf.wp(p)) < 1e-10);
    REQUIRE(rel_err(lf.wp_prime(TorusPoint(-z, tau)), -lf.wp_prime(p)) < 1e-10);

    const Complex w = lf.wp(p), wd = lf.wp_prime(p);
    const Complex lhs = wd * wd;
    const Complex rhs = 4.0 * w * w * w - lf.g2() * w - lf.g3();
    REQUIRE(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) < 1e-9);
}

TEST_CASE("wp recovers the half-period values as the cubic's roots", "[weierstrass]")
{
    const Complex tau(0.0, 1.4);
    const LatticeFunctions lf{HalfPlanePoint(tau)};
    const Complex e1 = lf.wp(TorusPoint(Complex(0.5, 0.0), tau));
    const Complex e2v = lf.wp(TorusPoint(0.5 * tau, tau));
    const Complex e3 = lf.wp(TorusPoint(0.5 + 0.5 * tau, tau));
    // elementary symmetric functions of the roots of 4x^3 - g2 x - g3
    REQUIRE(std::abs(e1 + e2v + e3) < 1e-8 * std::abs(e1));
    REQUIRE(rel_err(-4.0 * (e1 * e2v + e1 * e3 + e2v * e3), lf.g2()) < 1e-9);
    REQUIRE(rel_err(4.0 * e1 * e2v * e3, lf.g3()) < 1e-9);
}

TEST_CASE("Klein form parallelogram law equals a wp difference", "[weierstrass]")
{
    const Complex tau(0.17, 1.21);
    const LatticeFunctions lf{HalfPlanePoint(tau)};
    const Complex z1(0.24, 0.19), z2(-0.11, 0.33);
    const auto k = [&](Complex z) { return lf.klein(TorusPoint(z, tau)); };
    const Complex lhs =
        k(z1 + z2) * k(z1 - z2) / (k(z1) * k(z1) * k(z2) * k(z2));
    const Complex rhs = lf.wp(TorusPoint(z2, tau)) - lf.wp(TorusPoint(z1, tau));
    REQUIRE(rel_err(lhs, rhs) < 1e-9);
}
