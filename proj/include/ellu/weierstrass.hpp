// ellu: classical elliptic functions for the lattice Z + Z*tau, by q-series.
//
// Everything here is computed from Eisenstein series and Jacobi-style
// q-products only; nothing in this header depends on the Siegel-function
// module, so the two can be cross-validated against each other.
//
// Normalizations (q = exp(2*pi*i*tau), u = exp(2*pi*i*z)):
//
//   E2 = 1 - 24 sum sigma_1(n) q^n        eta1 = pi^2 E2 / 3
//   E4 = 1 + 240 sum sigma_3(n) q^n       g2 = (2*pi)^4 E4 / 12
//   E6 = 1 - 504 sum sigma_5(n) q^n       g3 = (2*pi)^6 E6 / 216
//
//   Delta = g2^3 - 27 g3^2 = (2*pi)^12 q prod (1-q^n)^24
//   Delta^(1/12) := 2*pi*i * q^(1/12) prod (1-q^n)^2      (fixed 12th root)
//
//   sigma(z) = (1/(2*pi*i)) exp(eta1 z^2 / 2) (u^(1/2) - u^(-1/2))
//              * prod (1-q^n u)(1-q^n/u) / (1-q^n)^2
//
//   wp(z)/(2*pi*i)^2 = 1/12 + u/(1-u)^2
//              + sum_{n>=1} [ q^n u/(1-q^n u)^2 + q^n u^-1/(1-q^n u^-1)^2
//                             - 2 q^n/(1-q^n)^2 ]
//
//   wp'(z)/(2*pi*i)^3 = u(1+u)/(1-u)^3
//              + sum_{n>=1} [ w(1+w)/(1-w)^3 - w~(1+w~)/(1-w~)^3 ],
//                w = q^n u, w~ = q^n / u.
//
// The Klein form attached to the extended quasi-period map
// eta(z) = eta1*z + 2*pi*i*r2 (Legendre: eta(tau) = eta1*tau - 2*pi*i) is
//
//   k(z) = exp(-eta(z) z / 2) sigma(z),
//
// and satisfies k(z1+z2) k(z1-z2) / (k(z1)^2 k(z2)^2) = wp(z2) - wp(z1).
//
// The q-products for sigma, wp, wp' converge for r2 in (-1, 1); wp and wp'
// are lattice-periodic and reduce their argument internally, sigma and the
// Klein form require the caller to stay in the convergence strip.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"
#include "rational.hpp"

namespace ellu {

class LatticeFunctions {
public:
    explicit LatticeFunctions(const HalfPlanePoint& h, double target_digits = 16.0, int extra_terms = 5)
        : tau_(h.tau), q_(h.nome())
    {
        nterms_ = static_cast<int>(
            std::ceil(target_digits * std::log(10.0) / (two_pi * tau_.imag())) + extra_terms);
        if (nterms_ < 1 || nterms_ > 200000) {
            throw std::domain_error("Eisenstein truncation order out of range");
        }
        compute_eisenstein();
    }

    Complex tau() const { return tau_; }
    Complex q() const { return q_; }
    int terms() const { return nterms_; }

    Complex e2() const { return e2_; }
    Complex e4() const { return e4_; }
    Complex e6() const { return e6_; }

    Complex eta1() const { return pi * pi * e2_ / 3.0; }
    Complex g2() const { return std::pow(two_pi, 4) * e4_ / 12.0; }
    Complex g3() const { return std::pow(two_pi, 6) * e6_ / 216.0; }
    Complex discriminant() const
    {
        const Complex a = g2();
        const Complex b = g3();
        return a * a * a - 27.0 * b * b;
    }

    // The fixed root 2*pi*i*q^(1/12)*prod(1-q^n)^2, with q^(1/12) principal
    // in tau: q^(1/12) := exp(2*pi*i*tau/12).
    Complex delta_twelfth_root() const
    {
        Complex prod = 1.0;
        for (int n = 1; n <= nterms_; ++n) {
            const Complex f = 1.0 - qpow(n);
            prod *= f * f;
        }
        return Complex(0.0, two_pi) * std::exp(Complex(0.0, two_pi) * tau_ / 12.0) * prod;
    }

    double log_abs_discriminant() const
    {
        double acc = 12.0 * std::log(two_pi) - two_pi * tau_.imag();
        for (int n = 1; n <= nterms_; ++n) {
            acc += 24.0 * std::log(std::abs(1.0 - qpow(n)));
        }
        return acc;
    }

    Complex sigma(const TorusPoint& p) const
    {
        require_strip(p);
        const Complex u = std::exp(Complex(0.0, two_pi) * p.z);
        const Complex half = std::exp(Complex(0.0, pi) * p.z);
        Complex prod = half - 1.0 / half;
        for (int n = 1; n <= nterms_; ++n) {
            const Complex qn = qpow(n);
            const Complex d = 1.0 - qn;
            prod *= (1.0 - qn * u) * (1.0 - qn / u) / (d * d);
        }
        return std::exp(eta1() * p.z * p.z / 2.0) * prod / Complex(0.0, two_pi);
    }

    // Quasi-period map extended R-linearly from eta(1) = eta1,
    // eta(tau) = eta1*tau - 2*pi*i: for z = -r2*tau + r1 this is
    // eta(z) = eta1*z + 2*pi*i*r2.
    Complex eta(const TorusPoint& p) const
    {
        return eta1() * p.z + Complex(0.0, two_pi) * p.r2;
    }

    Complex klein(const TorusPoint& p) const
    {
        return std::exp(-eta(p) * p.z / 2.0) * sigma(p);
    }

    Complex wp(const TorusPoint& p) const
    {
        const TorusPoint r = reduce_to_fundamental(p).point;
        nonzero_guard(r);
        const Complex u = std::exp(Complex(0.0, two_pi) * r.z);
        Complex sum = 1.0 / 12.0 + u / square(1.0 - u);
        for (int n = 1; n <= nterms_; ++n) {
            const Complex qn = qpow(n);
            sum += qn * u / square(1.0 - qn * u);
            sum += (qn / u) / square(1.0 - qn / u);
            sum -= 2.0 * qn / square(1.0 - qn);
        }
        return Complex(-4.0 * pi * pi, 0.0) * sum;  // (2*pi*i)^2 = -4*pi^2
    }

    Complex wp_prime(const TorusPoint& p) const
    {
        const TorusPoint r = reduce_to_fundamental(p).point;
        nonzero_guard(r);
        const Complex u = std::exp(Complex(0.0, two_pi) * r.z);
        Complex sum = u * (1.0 + u) / cube(1.0 - u);
        for (int n = 1; n <= nterms_; ++n) {
            const Complex qn = qpow(n);
            const Complex w = qn * u;
            const Complex wb = qn / u;
            sum += w * (1.0 + w) / cube(1.0 - w);
            sum -= wb * (1.0 + wb) / cube(1.0 - wb);
        }
        return Complex(0.0, -8.0 * pi * pi * pi) * sum;  // (2*pi*i)^3
    }

private:
    Complex tau_;
    Complex q_;
    int nterms_ = 0;
    Complex e2_, e4_, e6_;
    std::vector<Complex> qpow_;  // qpow_[n] = q^n

    static Complex square(Complex x) { return x * x; }
    static Complex cube(Complex x) { return x * x * x; }

    Complex qpow(int n) const { return qpow_[static_cast<std::size_t>(n)]; }

    void require_strip(const TorusPoint& p) const
    {
        if (!(p.r2 > -1.0 && p.r2 < 1.0)) {
            throw std::domain_error("sigma/Klein q-product requires r2 in (-1, 1)");
        }
    }

    void nonzero_guard(const TorusPoint& p) const
    {
        if (lattice_distance(p) < 1e-13) {
            throw std::domain_error("Weierstrass functions have a pole on the lattice");
        }
    }

    void compute_eisenstein()
    {
        const int N = nterms_;
        qpow_.assign(static_cast<std::size_t>(N) + 1, Complex(1.0, 0.0));
        for (int n = 1; n <= N; ++n) {
            qpow_[static_cast<std::size_t>(n)] = qpow_[static_cast<std::size_t>(n - 1)] * q_;
        }
        std::vector<double> s1(static_cast<std::size_t>(N) + 1, 0.0);
        std::vector<double> s3 = s1;
        std::vector<double> s5 = s1;
        for (int d = 1; d <= N; ++d) {
            const double dd = static_cast<double>(d);
            const double d3 = dd * dd * dd;
            const double d5 = d3 * dd * dd;
            for (int m = d; m <= N; m += d) {
                s1[static_cast<std::size_t>(m)] += dd;
                s3[static_cast<std::size_t>(m)] += d3;
                s5[static_cast<std::size_t>(m)] += d5;
            }
        }
        e2_ = e4_ = e6_ = 1.0;
        for (int n = 1; n <= N; ++n) {
            const Complex qn = qpow(n);
            e2_ -= 24.0 * s1[static_cast<std::size_t>(n)] * qn;
            e4_ += 240.0 * s3[static_cast<std::size_t>(n)] * qn;
            e6_ -= 504.0 * s5[static_cast<std::size_t>(n)] * qn;
        }
    }
};

}  // namespace ellu
