// ellu: exact rational scalar layer.
//
// Everything downstream that claims exactness (Bernoulli values, angle
// book-keeping, q-series coefficients, divisor certificates) is built on the
// types in this header.  We use boost::multiprecision's cpp_int/cpp_rational
// backends: coefficient growth under repeated series multiplication overflows
// 64-bit integers quickly, and the boost types are header-only.

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ellu {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// floor(p/q) with exact integer arithmetic (cpp_int division truncates
// toward zero, so negative fractions need the usual adjustment).
inline BigInt rat_floor(const Rational& r)
{
    BigInt n = rat_num(r), d = rat_den(r);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) {
        --q;
    }
    return q;
}

inline BigInt rat_ceil(const Rational& r) { return -rat_floor(-r); }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline BigInt big_lcm(const BigInt& a, const BigInt& b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    return boost::multiprecision::lcm(a, b);
}

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

inline long to_long(const BigInt& n)
{
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min()) {
        throw std::overflow_error("integer does not fit in long: " + n.str());
    }
    return n.template convert_to<long>();
}

// Renders "p/q", or just "p" for integers.  This is the wire format used by
// the JSON layer and the CLI.
inline std::string rat_str(const Rational& r)
{
    if (is_integer(r)) {
        return rat_num(r).str();
    }
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (s.empty() || slash == 0 || slash == s.size() - 1) {
            throw std::invalid_argument("empty numerator or denominator");
        }
        if (slash == std::string::npos) {
            return Rational(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator");
        }
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational from '" + s + "'");
    }
}

// Second Bernoulli polynomial B2(x) = x^2 - x + 1/6, evaluated exactly.
inline Rational bernoulli2(const Rational& x) { return x * x - x + Rational(1, 6); }

inline double bernoulli2(double x) { return x * x - x + 1.0 / 6.0; }

// A number of the form exp(pi*i*c) with c rational, kept exact.  The
// coefficient is canonicalised into [0,2), so two angles are equal iff their
// coefficients are.  Multiplication adds coefficients.
struct ExactAngle {
    Rational half_turns;  // c in exp(pi*i*c), reduced mod 2

    ExactAngle() : half_turns(0) {}
    explicit ExactAngle(Rational c) : half_turns(std::move(c)) { reduce(); }

    void reduce()
    {
        Rational two(2);
        half_turns -= Rational(2) * Rational(rat_floor(half_turns / two));
        // guard against c exactly a multiple of 2 mapping to 2 via rounding in
        // rational arithmetic (cannot happen, but keep the invariant obvious)
        if (half_turns >= two) {
            half_turns -= two;
        }
    }

    ExactAngle& operator*=(const ExactAngle& o)
    {
        half_turns += o.half_turns;
        reduce();
        return *this;
    }

    friend ExactAngle operator*(ExactAngle a, const ExactAngle& b) { return a *= b; }

    bool operator==(const ExactAngle& o) const { return half_turns == o.half_turns; }

    // True if exp(pi*i*c) is an N-th root of unity, i.e. N*c/2 is integral.
    bool is_root_of_unity_of_order_dividing(const BigInt& n) const
    {
        return is_integer(half_turns * Rational(n, 2));
    }

    Complex value() const
    {
        const double t = pi * to_double(half_turns);
        return {std::cos(t), std::sin(t)};
    }
};

// Nearest rational with denominator <= max_den, via continued fractions.
// Returns nothing when no candidate approximates x within tol.
inline std::optional<Rational> recognize_rational(double x, long max_den = 24, double tol = 1e-8)
{
    if (!std::isfinite(x)) {
        return std::nullopt;
    }
    // continued fraction convergents p_k/q_k of x
    double v = x;
    BigInt p_prev = 1, q_prev = 0;
    BigInt p = BigInt(static_cast<long long>(std::floor(v))), q = 1;
    v -= std::floor(v);
    for (int it = 0; it < 64 && q <= max_den; ++it) {
        double approx = to_double(Rational(p, q));
        if (std::abs(approx - x) <= tol) {
            return Rational(p, q);
        }
        if (v < 1e-15) {
            break;
        }
        v = 1.0 / v;
        const double a_d = std::floor(v);
        if (a_d > 1e18) {
            break;
        }
        BigInt a = BigInt(static_cast<long long>(a_d));
        v -= a_d;
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    // also consider the last convergent computed before the denominator bound
    if (q <= max_den) {
        if (std::abs(to_double(Rational(p, q)) - x) <= tol) {
            return Rational(p, q);
        }
    }
    return std::nullopt;
}

}  // namespace ellu
