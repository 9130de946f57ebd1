// ellu: unit-valued functions attached to kernel divisors.
//
// The central object is g_S, defined for a divisor S = sum_a q_a {s_a} in
// the kernel of  d: Q[A] -> Sym^2(A_free) tensor Q  by
//
//   g_S = exp( -2*pi*i * (1/2) sum_a q_a (P41 + P52)(s_a) ),
//
// where P41, P52 are entries of a generalized determination of the period
// matrix, chosen additively on the subgroup generated by the points.  The
// value is well defined only up to roots of unity of bounded order, so it is
// returned as a UnitValue: a chosen logarithm together with the ambiguity
// denominator D (the value is fixed up to D-th roots of unity).
//
// Also here: the torsion-divisor product Si_D, its unique holomorphic
// modification Si_D * exp(2*pi*i*F) with F a rational affine polynomial in
// (r1, r2), the parallelogram quotient Si_P, the strong-norm check, and a
// branch-safe finite-difference d/dzbar residual estimator used to verify
// holomorphy claims.

#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "divisor.hpp"
#include "lattice.hpp"
#include "polylog_matrix.hpp"
#include "rational.hpp"
#include "siegel.hpp"

namespace ellu {

// ---------------------------------------------------------------------------
// Values in C* tensor Q: a nonzero complex number up to roots of unity.

struct UnitValue {
    Complex log_value{0.0, 0.0};     // one chosen logarithm of the value
    BigInt ambiguity_denominator{1}; // value fixed up to roots of unity of this order

    static UnitValue one() { return UnitValue{Complex(0.0, 0.0), BigInt(1)}; }

    Complex value() const { return std::exp(log_value); }
    double log_abs() const { return log_value.real(); }

    // Multiplication of unit values: logs add, ambiguities coarsen.
    UnitValue operator*(const UnitValue& o) const
    {
        return UnitValue{log_value + o.log_value,
                         big_lcm(ambiguity_denominator, o.ambiguity_denominator)};
    }

    UnitValue inverse() const { return UnitValue{-log_value, ambiguity_denominator}; }

    UnitValue pow(const BigInt& k) const
    {
        return UnitValue{static_cast<double>(to_long(k)) * log_value, ambiguity_denominator};
    }
};

// A plain nonzero complex value viewed as a UnitValue with no ambiguity.
inline UnitValue unit_from_value(Complex w, BigInt ambiguity = BigInt(1))
{
    if (w == Complex(0.0, 0.0)) throw std::domain_error("unit value must be nonzero");
    return UnitValue{std::log(w), std::move(ambiguity)};
}

// True iff a and b agree up to a D-th root of unity, within tol measured in
// the log metric: (log a - log b) must lie within tol of 2*pi*i*(k/D) for
// some integer k (the real part of the log difference counts toward the
// distance, so moduli must agree to tol as well).
inline bool unit_equal_mod_roots(const UnitValue& a, const UnitValue& b, const BigInt& D,
                                 double tol)
{
    if (D < 1) throw std::invalid_argument("ambiguity denominator must be >= 1");
    const double Dd = static_cast<double>(to_long(D));
    const Complex w = (a.log_value - b.log_value) * Dd / Complex(0.0, two_pi);
    const double k = std::round(w.real());
    return std::abs(w - Complex(k, 0.0)) * (two_pi / Dd) <= tol;
}

// Distance used by unit_equal_mod_roots, for reporting.
inline double unit_root_distance(const UnitValue& a, const UnitValue& b, const BigInt& D)
{
    const double Dd = static_cast<double>(to_long(D));
    const Complex w = (a.log_value - b.log_value) * Dd / Complex(0.0, two_pi);
    const double k = std::round(w.real());
    return std::abs(w - Complex(k, 0.0)) * (two_pi / Dd);
}

// ---------------------------------------------------------------------------
// A divisor on a concrete curve C/(Z + Z*tau).
//
// The analytic data realizes a group-level divisor: the abstract group has
// `rank` free generators, each with a chosen complex lift, and up to two
// torsion factors Z/n1 x Z/n2, whose generators embed as the exact torsion
// parameters (1/n1, 0) and (0, 1/n2).  A group element (k_1..k_r; t_1, t_2)
// then realizes as  sum_j k_j * lift_j + embed(t_1/n_1, t_2/n_2).  Keeping
// the abstract divisor as the single source of truth makes the kernel check
// and the realization automatically consistent.

struct CurveDivisorInstance {
    HalfPlanePoint tau;
    AbelianGroup group;
    std::vector<Complex> free_lifts;  // one per free generator
    std::vector<std::pair<GroupElement, Rational>> terms;

    CurveDivisorInstance(HalfPlanePoint h, AbelianGroup g, std::vector<Complex> lifts)
        : tau(h), group(std::move(g)), free_lifts(std::move(lifts))
    {
        if (free_lifts.size() != static_cast<std::size_t>(group.rank)) {
            throw std::invalid_argument("need exactly one complex lift per free generator");
        }
        if (group.torsion_orders.size() > 2) {
            throw std::invalid_argument("a curve realizes at most two torsion factors");
        }
    }

    void add_term(const GroupElement& e, const Rational& q)
    {
        if (q == 0) return;
        if (e.is_zero()) throw std::invalid_argument("divisor terms must avoid the zero section");
        terms.emplace_back(e, q);
    }

    Divisor abstract_divisor() const
    {
        Divisor s(group);
        for (const auto& [e, q] : terms) s.add(e, q);
        return s;
    }

    // Exact torsion parameter of an element's torsion part.
    TorsionParameter torsion_parameter(const GroupElement& e) const
    {
        Rational v1(0), v2(0);
        if (!group.torsion_orders.empty()) {
            v1 = Rational(e.torsion_part[0], BigInt(group.torsion_orders[0]));
        }
        if (group.torsion_orders.size() > 1) {
            v2 = Rational(e.torsion_part[1], BigInt(group.torsion_orders[1]));
        }
        return TorsionParameter(v1, v2);
    }

    Complex realize(const GroupElement& e) const
    {
        Complex z(0.0, 0.0);
        for (int j = 0; j < group.rank; ++j) {
            z += static_cast<double>(to_long(e.free_part[static_cast<std::size_t>(j)])) *
                 free_lifts[static_cast<std::size_t>(j)];
        }
        return z + torsion_parameter(e).embed(tau.tau);
    }

    TorusPoint realize_point(const GroupElement& e) const
    {
        return TorusPoint(realize(e), tau.tau);
    }
};

// Builds the instance for a list of concrete points, each either a free
// complex point (getting its own free generator) or an exact torsion
// parameter.  All torsion parameters land in one (Z/N)^2 factor with N the
// lcm of their orders; this is the canonical shadow of a point list.
inline CurveDivisorInstance make_instance_from_points(
    const HalfPlanePoint& h,
    const std::vector<std::pair<std::optional<TorsionParameter>, Complex>>& points,
    const std::vector<Rational>& coeffs)
{
    if (points.size() != coeffs.size()) {
        throw std::invalid_argument("one coefficient per point required");
    }
    BigInt N(1);
    int rank = 0;
    for (const auto& [v, z] : points) {
        if (v) N = big_lcm(N, v->order());
        else ++rank;
    }
    std::vector<long> tors;
    if (N > 1) tors = {to_long(N), to_long(N)};
    AbelianGroup g{rank, tors};
    std::vector<Complex> lifts;
    lifts.reserve(static_cast<std::size_t>(rank));
    for (const auto& [v, z] : points) {
        if (!v) lifts.push_back(z);
    }
    CurveDivisorInstance inst(h, g, lifts);
    int next_free = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& [v, z] = points[i];
        std::vector<BigInt> fp(static_cast<std::size_t>(rank), BigInt(0));
        std::vector<long> tp(tors.size(), 0);
        if (v) {
            const TorsionParameter w = v->reduced();
            tp[0] = to_long(rat_num(w.v1) * (N / rat_den(w.v1)));
            tp[1] = to_long(rat_num(w.v2) * (N / rat_den(w.v2)));
        } else {
            fp[static_cast<std::size_t>(next_free++)] = 1;
        }
        inst.add_term(make_element(g, fp, tp), coeffs[i]);
    }
    return inst;
}

// ---------------------------------------------------------------------------
// g_S via additive generalized determinations.
//
// For each term s_a = sum_j k_j e_j + torsion v, the additive lifts are
// R_i(s_a) = sum_j k_j r_i(lift_j): additivity forces R_i = 0 on torsion
// (n*R(t) = R(0) = 0 in R).  Writing (m_a, n_a) for the reduction shifts of
// the realized point, the determination parameters are the exact rationals
//
//   u1_a = m_a - v1_a,   u2_a = -v2_a - n_a,
//
// and the determination entries at the reduced point are
//
//   P41 = p41 + u2_a * r1,   P52 = p52 - u1_a * r2   (x = y = 0).
//
// An optional twist adds a further additive rational shift (delta1, delta2)
// per free generator; by the kernel property the resulting UnitValue is
// unchanged up to roots of unity, which the test suite exercises.

struct DeterminationTwist {
    std::vector<std::pair<Rational, Rational>> per_free_generator;
};

namespace detail {

struct PointDetermination {
    TorusPoint reduced;
    Rational u1;
    Rational u2;
};

inline PointDetermination determine_point(const CurveDivisorInstance& inst,
                                          const GroupElement& e,
                                          const DeterminationTwist* twist)
{
    const TorsionParameter v = inst.torsion_parameter(e);
    Rational u1, u2;
    TorusPoint red(Complex(0.0, 0.0), inst.tau.tau);
    if (e.free_is_zero()) {
        // Pure torsion: reduce in exact rational arithmetic.
        const ReducedTorsion rt = reduce_torsion(v);
        u1 = Rational(rt.shift_m) - v.v1;
        u2 = -v.v2 - Rational(rt.shift_n);
        red = TorusPoint::with_coords(
            Complex(to_double(rt.rho1), 0.0) - Complex(to_double(rt.rho2), 0.0) * inst.tau.tau,
            inst.tau.tau, to_double(rt.rho1), to_double(rt.rho2));
    } else {
        const ReducedPoint rp = reduce_to_fundamental(inst.realize_point(e));
        u1 = Rational(BigInt(rp.shift_m)) - v.v1;
        u2 = -v.v2 - Rational(BigInt(rp.shift_n));
        red = rp.point;
    }
    if (twist) {
        if (twist->per_free_generator.size() != static_cast<std::size_t>(inst.group.rank)) {
            throw std::invalid_argument("twist needs one rational pair per free generator");
        }
        for (int j = 0; j < inst.group.rank; ++j) {
            const Rational k(e.free_part[static_cast<std::size_t>(j)]);
            u1 += k * twist->per_free_generator[static_cast<std::size_t>(j)].first;
            u2 += k * twist->per_free_generator[static_cast<std::size_t>(j)].second;
        }
    }
    return PointDetermination{red, u1, u2};
}

}  // namespace detail

// Ambiguity denominator for g_S over a given instance: the fixed eighth root
// of the Siegel normalization, the 12n-th roots attached to torsion sections
// of order n, and the denominators of the coefficients.
inline BigInt unit_ambiguity_denominator(const CurveDivisorInstance& inst)
{
    BigInt D(8);
    BigInt n_tors(1);
    for (const auto& [e, q] : inst.terms) {
        if (!e.torsion_is_zero()) {
            n_tors = big_lcm(n_tors, inst.torsion_parameter(e).order());
        }
        D = big_lcm(D, rat_den(q));
    }
    if (n_tors > 1) D = big_lcm(D, 12 * n_tors);
    else D = big_lcm(D, BigInt(12));
    return D;
}

inline UnitValue g_S(const CurveDivisorInstance& inst, const SiegelConfig& cfg = {},
                     const DeterminationTwist* twist = nullptr)
{
    const Divisor S = inst.abstract_divisor();
    if (!kernel_member(S)) {
        throw std::domain_error("divisor is not in the kernel of d");
    }
    Complex total(0.0, 0.0);
    for (const auto& [e, q] : inst.terms) {
        const detail::PointDetermination pd = detail::determine_point(inst, e, twist);
        const Complex L = li01(pd.reduced, cfg);
        const double r1 = pd.reduced.r1;
        const double r2 = pd.reduced.r2;
        const Complex p41 = L - 0.5 * r1;
        const Complex p52 = L - r1 * r2 - 0.5 * r1 + 0.25;
        const Complex P41 = p41 + to_double(pd.u2) * r1;
        const Complex P52 = p52 - to_double(pd.u1) * r2;
        total += to_double(q) * (P41 + P52);
    }
    return UnitValue{Complex(0.0, -pi) * total, unit_ambiguity_denominator(inst)};
}

// ---------------------------------------------------------------------------
// Si_D: the product  prod_v Si(z + v2*tau - v1, tau)^{q_v}  over an exact
// torsion divisor of degree zero, evaluated at one fixed determination
// (rational powers act on the principal logarithm of each factor value).

using TorsionDivisor = std::vector<std::pair<TorsionParameter, Rational>>;

inline void check_torsion_divisor_degree(const TorsionDivisor& d)
{
    Rational total(0);
    for (const auto& [v, q] : d) total += q;
    if (!(total == 0)) {
        throw std::domain_error("torsion divisor must have degree zero");
    }
}

inline TorusPoint si_d_shifted_point(Complex z, const TorsionParameter& v, const HalfPlanePoint& h)
{
    const Complex w = z + Complex(to_double(v.v2), 0.0) * h.tau - Complex(to_double(v.v1), 0.0);
    return TorusPoint(w, h.tau);
}

inline Complex si_D(const TorsionDivisor& d, Complex z, const HalfPlanePoint& h,
                    const SiegelConfig& cfg = {})
{
    check_torsion_divisor_degree(d);
    Complex log_total(0.0, 0.0);
    for (const auto& [v, q] : d) {
        const TorusPoint w = si_d_shifted_point(z, v, h);
        log_total += to_double(q) * std::log(siegel(w, cfg));
    }
    return std::exp(log_total);
}

inline double log_abs_si_D(const TorsionDivisor& d, Complex z, const HalfPlanePoint& h,
                           const SiegelConfig& cfg = {})
{
    check_torsion_divisor_degree(d);
    double acc = 0.0;
    for (const auto& [v, q] : d) {
        acc += to_double(q) * log_abs_siegel(si_d_shifted_point(z, v, h), cfg);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Holomorphic modification of Si_D.
//
// Writing each factor as  log Si(w) = pi*i*(tau/6 - w - w*r2(w)) + holomorphic,
// with w = z + v2*tau - v1 and r2(w) = r2(z) - v2, the antiholomorphic part of
// log Si_D collapses (for degree-zero divisors, using r2*tau = r1 - z) to
// -pi*i*(A*r1 - B*r2) with A = sum q_v v2 and B = sum q_v v1.  Hence
//
//   F(r1, r2) = (A*r1 - B*r2) / 2
//
// is the unique degree <= 1 rational polynomial with Si_D * exp(2*pi*i*F)
// holomorphic in z; only the linear part is pinned by holomorphy, and the
// constant term is normalized to zero here.

struct AffineModification {
    Rational coeff_r1;
    Rational coeff_r2;

    double eval(double r1, double r2) const
    {
        return to_double(coeff_r1) * r1 + to_double(coeff_r2) * r2;
    }
};

inline AffineModification holomorphic_modification(const TorsionDivisor& d)
{
    check_torsion_divisor_degree(d);
    Rational A(0), B(0);
    for (const auto& [v, q] : d) {
        A += q * v.v2;
        B += q * v.v1;
    }
    return AffineModification{A / 2, -B / 2};
}

// The modified function Si_D * exp(2*pi*i*F) at z, with an optional extra
// perturbation of F (used to witness uniqueness of the modification).
inline Complex si_D_modified(const TorsionDivisor& d, Complex z, const HalfPlanePoint& h,
                             const SiegelConfig& cfg = {},
                             const AffineModification* perturbation = nullptr)
{
    const AffineModification F = holomorphic_modification(d);
    const auto [r1, r2] = lattice_coords(z, h.tau);
    double f = F.eval(r1, r2);
    if (perturbation) f += perturbation->eval(r1, r2);
    return si_D(d, z, h, cfg) * std::exp(Complex(0.0, two_pi) * f);
}

// ---------------------------------------------------------------------------
// Si_P: the parallelogram quotient
//   Si(z1+z2) * Si(z1-z2) / ( Si(z1)^2 * Si(z2)^2 ),
// holomorphic off the zero sections, the diagonal and the anti-diagonal.

inline Complex si_P(Complex z1, Complex z2, const HalfPlanePoint& h, const SiegelConfig& cfg = {})
{
    const TorusPoint p1(z1, h.tau);
    const TorusPoint p2(z2, h.tau);
    const TorusPoint ps(z1 + z2, h.tau);
    const TorusPoint pd(z1 - z2, h.tau);
    const Complex a = siegel(ps, cfg);
    const Complex b = siegel(pd, cfg);
    const Complex c = siegel(p1, cfg);
    const Complex e = siegel(p2, cfg);
    return (a * b) / (c * c * e * e);
}

// ---------------------------------------------------------------------------
// Strong norm compatibility.  For a free section s with lift z and the full
// N-torsion E[N], the divisor
//
//   T = {N s} - sum_{t in E[N]} {s - t}
//
// lies in ker(d); g_T must be trivial up to roots of unity, and in modulus
// the same statement reads  prod_{t in E[N]} |Si(z + t)| = |Si(N z)|.

struct StrongNormReport {
    BigInt ambiguity_denominator;
    double unit_distance;      // distance of g_T from 1 in UnitValue semantics
    double modulus_residual;   // | sum_t log|Si(z+t)| - log|Si(Nz)| |
};

inline CurveDivisorInstance strong_norm_instance(Complex z, long N, const HalfPlanePoint& h)
{
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    AbelianGroup g{1, N > 1 ? std::vector<long>{N, N} : std::vector<long>{}};
    CurveDivisorInstance inst(h, g, {z});
    std::vector<long> no_tors(N > 1 ? 2 : 0, 0);
    inst.add_term(make_element(g, {BigInt(N)}, no_tors), Rational(1));
    for (long a = 0; a < N; ++a) {
        for (long b = 0; b < N; ++b) {
            std::vector<long> tp;
            if (N > 1) tp = {((-a) % N + N) % N, ((-b) % N + N) % N};
            inst.add_term(make_element(g, {BigInt(1)}, tp), Rational(-1));
        }
    }
    return inst;
}

inline StrongNormReport strong_norm_check(Complex z, long N, const HalfPlanePoint& h,
                                          const SiegelConfig& cfg = {})
{
    const CurveDivisorInstance inst = strong_norm_instance(z, N, h);
    const UnitValue gT = g_S(inst, cfg);
    const double dist = unit_root_distance(gT, UnitValue::one(), gT.ambiguity_denominator);

    double sum = 0.0;
    for (long a = 0; a < N; ++a) {
        for (long b = 0; b < N; ++b) {
            const TorsionParameter t(Rational(a, N), Rational(b, N));
            const TorusPoint p(z + t.embed(h.tau), h.tau);
            sum += log_abs_siegel(p, cfg);
        }
    }
    const double rhs = log_abs_siegel(TorusPoint(static_cast<double>(N) * z, h.tau), cfg);
    return StrongNormReport{gT.ambiguity_denominator, dist, std::abs(sum - rhs)};
}

// ---------------------------------------------------------------------------
// Branch-safe finite-difference estimate of (d/dzbar) log f at z.  The four
// sampled values enter only through ratios of nearby points, so principal
// logarithms are safe as long as f is continuous and nonvanishing near z:
//
//   dzbar log f ~ [ Log(f(z+h)/f(z-h)) + i * Log(f(z+ih)/f(z-ih)) ] / (4h).
inline Complex dbar_log_residual(const std::function<Complex(Complex)>& f, Complex z, double h)
{
    const Complex re = std::log(f(z + h) / f(z - h));
    const Complex im = std::log(f(z + Complex(0.0, h)) / f(z - Complex(0.0, h)));
    return (re + Complex(0.0, 1.0) * im) / (4.0 * h);
}

}  // namespace ellu
