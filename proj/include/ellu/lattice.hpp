// ellu: points on the upper half-plane and on the universal elliptic curve.
//
// Conventions.  For tau in the upper half-plane H and z in C, the lattice is
// Z + Z*tau and z is written z = -r2*tau + r1 with real coordinates
//
//   r1 = Re(z) - Re(tau) * Im(z) / Im(tau),     r2 = -Im(z) / Im(tau).
//
// Both are R-linear in z for fixed tau.  The multiplicative coordinates are
// q_tau = exp(2*pi*i*tau) and q_z = exp(2*pi*i*z).  The fundamental domain
// used throughout the library is r1 in [0,1), r2 in (-1,0].

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "rational.hpp"

namespace ellu {

struct HalfPlanePoint {
    Complex tau;

    explicit HalfPlanePoint(Complex t) : tau(t)
    {
        if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
            throw std::domain_error("tau must lie in the open upper half-plane");
        }
    }

    Complex nome() const { return std::exp(Complex(0.0, two_pi) * tau); }
};

inline std::pair<double, double> lattice_coords(Complex z, Complex tau)
{
    const double y = tau.imag();
    const double r2 = -z.imag() / y;
    const double r1 = z.real() - tau.real() * z.imag() / y;
    return {r1, r2};
}

// A point z on the torus C / (Z + Z*tau), carrying its lattice coordinates.
// The coordinates are stored rather than recomputed so that reduction can
// guarantee its range contract bit-for-bit.
struct TorusPoint {
    Complex z;
    Complex tau;
    double r1;
    double r2;

    TorusPoint(Complex z_, HalfPlanePoint t) : z(z_), tau(t.tau)
    {
        auto rc = lattice_coords(z, tau);
        r1 = rc.first;
        r2 = rc.second;
    }

    TorusPoint(Complex z_, Complex tau_) : TorusPoint(z_, HalfPlanePoint(tau_)) {}

    // Internal: build from explicit coordinates (used by reduction).
    static TorusPoint with_coords(Complex z, Complex tau, double r1, double r2)
    {
        TorusPoint p(z, HalfPlanePoint(tau));
        p.r1 = r1;
        p.r2 = r2;
        return p;
    }

    Complex nome_tau() const { return std::exp(Complex(0.0, two_pi) * tau); }
    Complex nome_z() const { return std::exp(Complex(0.0, two_pi) * z); }

    bool is_reduced() const { return r1 >= 0.0 && r1 < 1.0 && r2 > -1.0 && r2 <= 0.0; }
};

struct ReducedPoint {
    TorusPoint point;   // representative with r1 in [0,1), r2 in (-1,0]
    long shift_m;       // integers such that point.z = z - shift_m - shift_n*tau
    long shift_n;
};

// Translates z by the lattice so that r1 lands in [0,1) and r2 in (-1,0].
// Under z -> z - m - n*tau the coordinates move by r1 -> r1 - m, r2 -> r2 + n,
// so m = floor(r1) and n = -ceil(r2).  The reduced coordinates are derived
// from the originals (not recomputed from the translated z), which makes the
// operation exactly idempotent; the clamp below absorbs the one-ulp case
// where r1 - floor(r1) rounds up to 1.0.
inline ReducedPoint reduce_to_fundamental(const TorusPoint& p)
{
    double m_d = std::floor(p.r1);
    double n_d = -std::ceil(p.r2);
    double r1 = p.r1 - m_d;
    double r2 = p.r2 + n_d;
    if (r1 >= 1.0) {
        r1 -= 1.0;
        m_d += 1.0;
    }
    if (r2 <= -1.0) {
        r2 += 1.0;
        n_d += 1.0;
    }
    if (std::abs(m_d) > 1e15 || std::abs(n_d) > 1e15) {
        throw std::domain_error("lattice reduction shift does not fit in an integer");
    }
    const long m = static_cast<long>(m_d);
    const long n = static_cast<long>(n_d);
    const Complex z_red = p.z - Complex(m_d, 0.0) - Complex(n_d, 0.0) * p.tau;
    return ReducedPoint{TorusPoint::with_coords(z_red, p.tau, r1, r2), m, n};
}

// A torsion point of the curve C / (Z + Z*tau), held exactly: the pair of
// rationals (v1, v2) names the point z = -v2*tau + v1, so the lattice
// coordinates of the embedded point are r1 = v1 and r2 = v2 exactly.
// The normal form keeps v1 and v2 in [0,1).
struct TorsionParameter {
    Rational v1;
    Rational v2;

    TorsionParameter() = default;
    TorsionParameter(Rational a, Rational b) : v1(std::move(a)), v2(std::move(b)) {}

    TorsionParameter reduced() const
    {
        return TorsionParameter(v1 - Rational(rat_floor(v1)), v2 - Rational(rat_floor(v2)));
    }

    bool is_lattice_point() const { return is_integer(v1) && is_integer(v2); }

    // Smallest N >= 1 with N * (v1, v2) in Z^2.
    BigInt order() const { return big_lcm(rat_den(v1), rat_den(v2)); }

    TorsionParameter operator+(const TorsionParameter& o) const
    {
        return TorsionParameter(v1 + o.v1, v2 + o.v2);
    }
    TorsionParameter operator-() const { return TorsionParameter(-v1, -v2); }
    TorsionParameter operator-(const TorsionParameter& o) const { return *this + (-o); }
    TorsionParameter operator*(const BigInt& k) const
    {
        return TorsionParameter(v1 * Rational(k), v2 * Rational(k));
    }

    bool operator==(const TorsionParameter& o) const { return v1 == o.v1 && v2 == o.v2; }

    Complex embed(Complex tau) const
    {
        return Complex(to_double(v1), 0.0) - Complex(to_double(v2), 0.0) * tau;
    }

    TorusPoint embed_point(const HalfPlanePoint& h) const
    {
        return TorusPoint::with_coords(embed(h.tau), h.tau, to_double(v1), to_double(v2));
    }
};

// Exact fundamental-domain reduction of a torsion point: integer shifts
// (m, n) with z - m - n*tau having coordinates rho1 = v1 - m in [0,1) and
// rho2 = v2 + n in (-1,0], all computed in rational arithmetic.
struct ReducedTorsion {
    Rational rho1;  // in [0,1)
    Rational rho2;  // in (-1,0]
    BigInt shift_m;
    BigInt shift_n;
};

inline ReducedTorsion reduce_torsion(const TorsionParameter& v)
{
    const BigInt m = rat_floor(v.v1);
    const BigInt n = -rat_ceil(v.v2);
    return ReducedTorsion{v.v1 - Rational(m), v.v2 + Rational(n), m, n};
}

// Distance from z to the nearest lattice point of Z + Z*tau.
inline double lattice_distance(const TorusPoint& p)
{
    ReducedPoint red = reduce_to_fundamental(p);
    const Complex z = red.point.z;
    const Complex tau = p.tau;
    double best = std::abs(z);
    for (const Complex corner : {Complex(1.0, 0.0), tau, tau + 1.0}) {
        best = std::min(best, std::abs(z - corner));
    }
    return best;
}

}  // namespace ellu
