// ellu: Siegel functions on the universal elliptic curve.
//
// For z = -r2*tau + r1 the Siegel function is
//
//   Si(z,tau) = -exp(pi*i*B2(-r2)*tau) * exp(-pi*i*r1*(r2+1))
//               * (1 - q_z) * prod_{n>=1} (1 - q_tau^n q_z)(1 - q_tau^n / q_z)
//
// with B2(X) = X^2 - X + 1/6.  Si vanishes exactly on the lattice Z + Z*tau
// and transforms under translation by
//
//   Si(z+1,  tau) = exp(-pi*i*(r2+1)) * Si(z,tau)
//   Si(z+tau,tau) = exp(-pi*i*(r1+1)) * Si(z,tau)
//
// (coordinates taken at z), which iterates to
//
//   Si(z + m + n*tau) = exp(-pi*i*(n*r1 + m*r2 + m*n + m + n)) * Si(z,tau).
//
// The module also provides the series
//
//   Li01(z) = (1/(2*pi*i)) * ( sum_{j>=0} log(1 - q_tau^j q_z)
//                            + sum_{j>=1} log(1 - q_tau^j / q_z) )
//             + (1/2) * B2(-r2) * tau,
//
// whose public determination reduces z to the fundamental domain and takes
// every logarithm principal.  Analytic continuation of the same series along
// straight lattice translations is provided for monodromy computations.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"
#include "rational.hpp"

namespace ellu {

struct SiegelConfig {
    double target_digits = 16.0;   // requested relative accuracy, in decimal digits
    int extra_terms = 5;           // safety margin on the truncation order
    int max_terms = 100000;        // hard cap on product/series length
    double lattice_tol = 1e-13;    // points closer than this to the lattice are rejected
    int continuation_steps = 256;  // path subdivisions per unit lattice translation

    // Truncation order: the tail of the q-product after N factors is of size
    // |q_tau|^(N - |r2|), so N ~ digits*ln(10)/(2*pi*Im tau) plus margin.
    int terms(double im_tau, double r2_abs = 0.0) const
    {
        double n = std::ceil(target_digits * std::log(10.0) / (two_pi * im_tau));
        n += extra_terms + std::ceil(r2_abs);
        if (n > static_cast<double>(max_terms)) {
            throw std::domain_error("Siegel product truncation exceeds the configured term cap");
        }
        return static_cast<int>(n);
    }
};

enum class EvalPath {
    Auto,     // direct product when numerically safe, reduced otherwise
    Direct,   // q-product at the given z, no reduction
    Reduced,  // reduce to the fundamental domain, then apply the translation factor
};

namespace detail {

// log|1 - exp(s)| computed without overflow: for Re(s) large the factor is
// dominated by exp(s) itself, so peel the exponential off first.
inline double log_abs_one_minus_exp(Complex s)
{
    if (s.real() > 30.0) {
        return s.real() + std::log(std::abs(1.0 - std::exp(-s)));
    }
    return std::log(std::abs(1.0 - std::exp(s)));
}

inline void check_not_lattice(const TorusPoint& p, const SiegelConfig& cfg)
{
    if (lattice_distance(p) < cfg.lattice_tol) {
        throw std::domain_error("Siegel function vanishes on the lattice; point is too close to Z + Z*tau");
    }
}

}  // namespace detail

// Direct q-product evaluation at z, with no reduction.  Valid for any z whose
// factors stay inside double range; the Auto policy below bounds that.
inline Complex siegel_direct(const TorusPoint& p, const SiegelConfig& cfg = {})
{
    detail::check_not_lattice(p, cfg);
    const Complex i2pi(0.0, two_pi);
    const Complex qz = std::exp(i2pi * p.z);
    const int N = cfg.terms(p.tau.imag(), std::abs(p.r2));
    Complex prod = 1.0 - qz;
    for (int n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        prod *= 1.0 - std::exp(i2pi * (dn * p.tau + p.z));
        prod *= 1.0 - std::exp(i2pi * (dn * p.tau - p.z));
    }
    const Complex ipi(0.0, pi);
    const Complex pre = -std::exp(ipi * (bernoulli2(-p.r2) * p.tau - p.r1 * (p.r2 + 1.0)));
    return pre * prod;
}

// Translation factor F(m,n;z') with Si(z' + m + n*tau) = F * Si(z'), in terms
// of the coordinates of the base point z'.
inline Complex siegel_translation_factor(long m, long n, double r1, double r2)
{
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return std::exp(Complex(0.0, -pi) * (nd * r1 + md * r2 + md * nd + md + nd));
}

inline Complex siegel(const TorusPoint& p, const SiegelConfig& cfg = {}, EvalPath path = EvalPath::Auto)
{
    if (path == EvalPath::Auto) {
        // The largest factor in the direct product is exp(2*pi*Im(tau)*|r2|);
        // keep well away from double overflow.
        const bool safe = two_pi * p.tau.imag() * (std::abs(p.r2) + 1.0) < 600.0;
        path = safe ? EvalPath::Direct : EvalPath::Reduced;
    }
    if (path == EvalPath::Direct) {
        return siegel_direct(p, cfg);
    }
    const ReducedPoint red = reduce_to_fundamental(p);
    const Complex base = siegel_direct(red.point, cfg);
    return siegel_translation_factor(red.shift_m, red.shift_n, red.point.r1, red.point.r2) * base;
}

// log|Si(z,tau)|, computed in the log domain so that arbitrarily unreduced
// points never overflow.  This is the quantity entering local heights.
inline double log_abs_siegel(const TorusPoint& p, const SiegelConfig& cfg = {})
{
    detail::check_not_lattice(p, cfg);
    const Complex i2pi(0.0, two_pi);
    const int N = cfg.terms(p.tau.imag(), std::abs(p.r2));
    double acc = -pi * bernoulli2(-p.r2) * p.tau.imag();
    acc += detail::log_abs_one_minus_exp(i2pi * p.z);
    for (int n = 1; n <= N; ++n) {
        const double dn = static_cast<double>(n);
        acc += detail::log_abs_one_minus_exp(i2pi * (dn * p.tau + p.z));
        acc += detail::log_abs_one_minus_exp(i2pi * (dn * p.tau - p.z));
    }
    return acc;
}

// Value of Si at the torsion point z = -v2*tau + v1.  The parameter is taken
// mod Z^2 to its normal form in [0,1)^2, where the direct product converges,
// and the exact lattice-translation factor is applied back, so the result is
// the value at the given (possibly unreduced) parameter.
inline Complex siegel_torsion(const TorsionParameter& v, const HalfPlanePoint& h,
                              const SiegelConfig& cfg = {})
{
    const TorsionParameter w = v.reduced();
    if (w.is_lattice_point()) {
        throw std::domain_error("Siegel function vanishes at lattice points; torsion parameter is integral");
    }
    // z_v = z_w + m + n*tau with m = v1 - w1 and n = -(v2 - w2), both integers.
    const long m = to_long(rat_num(v.v1 - w.v1));
    const long n = -to_long(rat_num(v.v2 - w.v2));
    const Complex base = siegel_direct(w.embed_point(h), cfg);
    return siegel_translation_factor(m, n, to_double(w.v1), to_double(w.v2)) * base;
}

namespace detail {

// The arguments of the logarithms in Li01 at z, as exp(s_j): s = 2*pi*i*(j*tau + z)
// for j >= 0 and s = 2*pi*i*(j*tau - z) for j >= 1.
inline std::vector<Complex> li01_log_arguments(Complex z, Complex tau, int N)
{
    const Complex i2pi(0.0, two_pi);
    std::vector<Complex> w;
    w.reserve(static_cast<std::size_t>(2 * N + 1));
    for (int j = 0; j <= N; ++j) {
        w.push_back(1.0 - std::exp(i2pi * (static_cast<double>(j) * tau + z)));
    }
    for (int j = 1; j <= N; ++j) {
        w.push_back(1.0 - std::exp(i2pi * (static_cast<double>(j) * tau - z)));
    }
    return w;
}

}  // namespace detail

// Public determination of Li01: reduce z to the fundamental domain, then sum
// principal logarithms.  Well defined away from the lattice.
inline Complex li01(const TorusPoint& p, const SiegelConfig& cfg = {})
{
    detail::check_not_lattice(p, cfg);
    const ReducedPoint red = reduce_to_fundamental(p);
    const int N = cfg.terms(p.tau.imag());
    Complex sum = 0.0;
    for (const Complex w : detail::li01_log_arguments(red.point.z, p.tau, N)) {
        sum += std::log(w);
    }
    return sum / Complex(0.0, two_pi) + 0.5 * bernoulli2(-red.point.r2) * p.tau;
}

// Analytic continuation of Li01 along the straight path from z to
// z + m + n*tau, starting from the public determination at z (which must be
// reduced for the start value to coincide with li01(p)).  Branches of the
// individual logarithms are tracked term by term along the path.
inline Complex li01_continuation(const TorusPoint& p, long m, long n, const SiegelConfig& cfg = {})
{
    detail::check_not_lattice(p, cfg);
    const Complex tau = p.tau;
    const Complex step_total = Complex(static_cast<double>(m), 0.0)
                             + Complex(static_cast<double>(n), 0.0) * tau;
    const int N = cfg.terms(tau.imag()) + static_cast<int>(std::labs(n)) + 2;
    const int K = cfg.continuation_steps * static_cast<int>(std::max<long>(1, std::labs(m) + std::labs(n)));

    std::vector<Complex> w_prev = detail::li01_log_arguments(p.z, tau, N);
    std::vector<Complex> L(w_prev.size());
    for (std::size_t j = 0; j < w_prev.size(); ++j) {
        L[j] = std::log(w_prev[j]);
    }
    for (int k = 1; k <= K; ++k) {
        const Complex zk = p.z + (static_cast<double>(k) / static_cast<double>(K)) * step_total;
        std::vector<Complex> w_now = detail::li01_log_arguments(zk, tau, N);
        for (std::size_t j = 0; j < w_now.size(); ++j) {
            if (std::abs(w_now[j]) < 1e-12) {
                throw std::domain_error("continuation path passes through a zero of a log factor");
            }
            L[j] += std::log(w_now[j] / w_prev[j]);
        }
        w_prev.swap(w_now);
    }
    Complex sum = 0.0;
    for (const Complex lj : L) {
        sum += lj;
    }
    const double r2_end = p.r2 - static_cast<double>(n);
    return sum / Complex(0.0, two_pi) + 0.5 * bernoulli2(-r2_end) * tau;
}

}  // namespace ellu
