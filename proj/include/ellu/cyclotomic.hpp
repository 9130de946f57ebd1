// ellu: exact arithmetic in cyclotomic fields Q(zeta_m).
//
// An element is stored as a rational coefficient vector on the power basis
// 1, zeta, ..., zeta^(phi(m)-1) of Q(zeta_m), reduced modulo the m-th
// cyclotomic polynomial Phi_m.  Conductors are kept canonical: m = 1 or
// m != 2 (mod 4), using zeta_{2k} = -zeta_k^((k+1)/2) for odd k.  Mixed
// arithmetic lifts both operands to the least common conductor.
//
// Phi_m is computed exactly as (x^m - 1) / prod_{d | m, d < m} Phi_d.
// Inverses come from the extended Euclidean algorithm in Q[x] modulo Phi_m,
// which is irreducible over Q.  The cache of cyclotomic polynomials is not
// synchronized; the library assumes single-threaded use.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace ellu {
namespace detail {

using Poly = std::vector<Rational>;  // coefficient of x^i at index i

inline void poly_trim(Poly& p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly poly_add(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

inline Poly poly_scale(const Poly& a, const Rational& c)
{
    if (c == 0) return {};
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, Rational(-1))); }

inline Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    poly_trim(r);
    return r;
}

// Quotient and remainder of a by b (b nonzero).  Exact over Q.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b)
{
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    Poly q;
    const int db = poly_deg(b);
    const Rational lead = b.back();
    while (poly_deg(a) >= db) {
        const int shift = poly_deg(a) - db;
        const Rational c = a.back() / lead;
        if (static_cast<int>(q.size()) < shift + 1) q.resize(static_cast<std::size_t>(shift) + 1, Rational(0));
        q[static_cast<std::size_t>(shift)] += c;
        for (int i = 0; i <= db; ++i) {
            a[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
        }
        poly_trim(a);
    }
    poly_trim(q);
    return {q, a};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g the monicized gcd.
inline std::tuple<Poly, Poly, Poly> poly_ext_gcd(Poly a, Poly b)
{
    Poly s0{Rational(1)}, s1{};
    Poly t0{}, t1{Rational(1)};
    while (!b.empty()) {
        auto [q, r] = poly_divmod(a, b);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!a.empty() && a.back() != 1) {
        const Rational inv = Rational(1) / a.back();
        a = poly_scale(a, inv);
        s0 = poly_scale(s0, inv);
        t0 = poly_scale(t0, inv);
    }
    return {a, s0, t0};
}

inline long euler_phi(long m)
{
    long result = m;
    long n = m;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline const Poly& cyclotomic_polynomial(long m)
{
    static std::map<long, Poly> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    if (m < 1) throw std::invalid_argument("cyclotomic polynomial index must be positive");
    Poly num(static_cast<std::size_t>(m) + 1, Rational(0));
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;  // x^m - 1
    for (long d = 1; d < m; ++d) {
        if (m % d == 0) {
            auto [q, r] = poly_divmod(num, cyclotomic_polynomial(d));
            if (!r.empty()) throw std::logic_error("cyclotomic polynomial division left a remainder");
            num = std::move(q);
        }
    }
    return cache.emplace(m, std::move(num)).first->second;
}

}  // namespace detail

class CyclotomicNumber {
public:
    CyclotomicNumber() : conductor_(1), c_{Rational(0)} {}

    explicit CyclotomicNumber(const Rational& x) : conductor_(1), c_{x} {}

    // zeta_m^k, with the conductor brought to canonical form.
    static CyclotomicNumber zeta(long m, BigInt k = 1)
    {
        if (m < 1) throw std::invalid_argument("root-of-unity order must be positive");
        BigInt kk = ((k % m) + m) % m;
        long e = static_cast<long>(kk);
        bool negate = false;
        if (m % 4 == 2) {
            // zeta_{2n} = -zeta_n^((n+1)/2) for odd n: exponent e picks up the sign (-1)^e.
            const long n = m / 2;
            negate = (e % 2 != 0);
            e = static_cast<long>((static_cast<BigInt>(e) * ((n + 1) / 2)) % n);
            m = n;
        }
        const long g = std::gcd(e == 0 ? m : e, m);
        if (e == 0 || g > 1) {
            // Not a primitive m-th root; restate at the true order.
            if (e == 0) {
                CyclotomicNumber r(Rational(negate ? -1 : 1));
                return r;
            }
            CyclotomicNumber r = zeta(m / g, e / g);
            if (negate) r = r.negated();
            return r;
        }
        CyclotomicNumber r;
        r.conductor_ = m;
        r.c_.assign(static_cast<std::size_t>(detail::euler_phi(m)), Rational(0));
        detail::Poly mono(static_cast<std::size_t>(e) + 1, Rational(0));
        mono[static_cast<std::size_t>(e)] = negate ? Rational(-1) : Rational(1);
        r.assign_poly(mono);
        return r;
    }

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
    }

    bool is_rational() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i) {
            if (c_[i] != 0) return false;
        }
        return true;
    }

    Rational rational_value() const
    {
        if (!is_rational()) throw std::domain_error("cyclotomic number is not rational");
        return c_[0];
    }

    CyclotomicNumber negated() const
    {
        CyclotomicNumber r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b)
    {
        auto [x, y] = to_common(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }

    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b)
    {
        return a + b.negated();
    }

    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b)
    {
        auto [x, y] = to_common(a, b);
        detail::Poly p = detail::poly_mul(x.as_poly(), y.as_poly());
        x.assign_poly(detail::poly_mod(p, detail::cyclotomic_polynomial(x.conductor_)));
        return x;
    }

    CyclotomicNumber inverse() const
    {
        if (is_zero()) throw std::domain_error("division by zero in a cyclotomic field");
        auto [g, s, t] = detail::poly_ext_gcd(as_poly(), detail::cyclotomic_polynomial(conductor_));
        (void)t;
        if (detail::poly_deg(g) != 0) throw std::logic_error("cyclotomic polynomial is irreducible; nontrivial gcd");
        CyclotomicNumber r = *this;
        r.assign_poly(detail::poly_scale(s, Rational(1) / g[0]));
        return r;
    }

    friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b)
    {
        return a * b.inverse();
    }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b)
    {
        auto [x, y] = to_common(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

    CyclotomicNumber pow(BigInt k) const
    {
        if (k < 0) return inverse().pow(-k);
        CyclotomicNumber base = *this;
        CyclotomicNumber acc(Rational(1));
        while (k > 0) {
            if ((k & 1) != 0) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    // Rewrite with the smallest cyclotomic conductor that contains the value.
    CyclotomicNumber minimized() const
    {
        CyclotomicNumber cur = *this;
        bool descended = true;
        while (descended && cur.conductor_ > 1) {
            descended = false;
            const long m = cur.conductor_;
            std::vector<long> primes;
            long n = m;
            for (long p = 2; p * p <= n; ++p) {
                if (n % p == 0) {
                    primes.push_back(p);
                    while (n % p == 0) n /= p;
                }
            }
            if (n > 1) primes.push_back(n);
            for (const long p : primes) {
                long sub = m / p;
                if (sub % 4 == 2) sub /= 2;
                auto down = cur.rewritten_at(sub);
                if (down) {
                    cur = *down;
                    descended = true;
                    break;
                }
            }
        }
        return cur;
    }

    // If the value lies in Q(zeta_sub) for sub | conductor, return it there.
    std::optional<CyclotomicNumber> rewritten_at(long sub) const
    {
        if (sub == conductor_) return *this;
        if (sub < 1 || conductor_ % sub != 0) return std::nullopt;
        const long phi_sub = detail::euler_phi(sub);
        const long phi_m = detail::euler_phi(conductor_);
        // Images of the subfield power basis inside Q(zeta_m).
        std::vector<std::vector<Rational>> cols;
        cols.reserve(static_cast<std::size_t>(phi_sub));
        const long stride = conductor_ / sub;
        for (long j = 0; j < phi_sub; ++j) {
            detail::Poly mono(static_cast<std::size_t>(j * stride) + 1, Rational(0));
            mono[static_cast<std::size_t>(j * stride)] = 1;
            detail::Poly red = detail::poly_mod(mono, detail::cyclotomic_polynomial(conductor_));
            std::vector<Rational> col(static_cast<std::size_t>(phi_m), Rational(0));
            for (std::size_t i = 0; i < red.size(); ++i) col[i] = red[i];
            cols.push_back(std::move(col));
        }
        // Solve cols * x = c_ exactly by Gaussian elimination.
        std::vector<std::vector<Rational>> aug(static_cast<std::size_t>(phi_m));
        for (long i = 0; i < phi_m; ++i) {
            aug[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(phi_sub) + 1, Rational(0));
            for (long j = 0; j < phi_sub; ++j) {
                aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            }
            aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(phi_sub)] = c_[static_cast<std::size_t>(i)];
        }
        std::size_t row = 0;
        std::vector<long> pivot_col;
        for (long col = 0; col < phi_sub && row < aug.size(); ++col) {
            std::size_t sel = row;
            while (sel < aug.size() && aug[sel][static_cast<std::size_t>(col)] == 0) ++sel;
            if (sel == aug.size()) continue;
            std::swap(aug[row], aug[sel]);
            const Rational piv = aug[row][static_cast<std::size_t>(col)];
            for (auto& x : aug[row]) x /= piv;
            for (std::size_t i = 0; i < aug.size(); ++i) {
                if (i == row) continue;
                const Rational f = aug[i][static_cast<std::size_t>(col)];
                if (f == 0) continue;
                for (std::size_t j = 0; j < aug[i].size(); ++j) {
                    aug[i][j] -= f * aug[row][j];
                }
            }
            pivot_col.push_back(col);
            ++row;
        }
        // Consistency: all remaining rows must have zero RHS.
        for (std::size_t i = row; i < aug.size(); ++i) {
            if (aug[i][static_cast<std::size_t>(phi_sub)] != 0) return std::nullopt;
        }
        CyclotomicNumber r;
        r.conductor_ = sub;
        r.c_.assign(static_cast<std::size_t>(phi_sub), Rational(0));
        for (std::size_t k = 0; k < pivot_col.size(); ++k) {
            r.c_[static_cast<std::size_t>(pivot_col[k])] = aug[k][static_cast<std::size_t>(phi_sub)];
        }
        return r;
    }

    // If the value is a root of unity, return its angle as exp(pi*i*t).
    // Roots of unity in Q(zeta_m) are exactly +/- zeta_m^k (m canonical).
    std::optional<ExactAngle> as_root_of_unity() const
    {
        const long m = conductor_;
        for (long k = 0; k < m; ++k) {
            const CyclotomicNumber cand = zeta(m, k);
            if (*this == cand) {
                return ExactAngle{Rational(2 * k, m)};
            }
            if (*this == cand.negated()) {
                return ExactAngle{Rational(2 * k, m) + 1};
            }
        }
        return std::nullopt;
    }

    static CyclotomicNumber from_exact_angle(const ExactAngle& a)
    {
        // exp(pi*i*p/q) = zeta_{2q}^p.
        const BigInt p = rat_num(a.half_turns);
        const BigInt q = rat_den(a.half_turns);
        return zeta(2 * static_cast<long>(q), p);
    }

    Complex to_complex() const
    {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const double angle = two_pi * static_cast<double>(j) / static_cast<double>(conductor_);
            acc += to_double(c_[j]) * Complex(std::cos(angle), std::sin(angle));
        }
        return acc;
    }

private:
    long conductor_;
    std::vector<Rational> c_;  // length phi(conductor_)

    detail::Poly as_poly() const
    {
        detail::Poly p(c_.begin(), c_.end());
        detail::poly_trim(p);
        return p;
    }

    void assign_poly(const detail::Poly& p)
    {
        const auto& phi = detail::cyclotomic_polynomial(conductor_);
        detail::Poly red = detail::poly_mod(p, phi);
        c_.assign(static_cast<std::size_t>(detail::poly_deg(phi)), Rational(0));
        for (std::size_t i = 0; i < red.size(); ++i) c_[i] = red[i];
    }

    // Lift into Q(zeta_M) for conductor_ | M, M canonical.
    CyclotomicNumber lifted_to(long M) const
    {
        if (M == conductor_) return *this;
        if (M % conductor_ != 0) throw std::invalid_argument("conductor lift must be to a multiple");
        const long stride = M / conductor_;
        detail::Poly p;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const std::size_t e = j * static_cast<std::size_t>(stride);
            if (p.size() <= e) p.resize(e + 1, Rational(0));
            p[e] += c_[j];
        }
        CyclotomicNumber r;
        r.conductor_ = M;
        r.c_.assign(static_cast<std::size_t>(detail::euler_phi(M)), Rational(0));
        r.assign_poly(p);
        return r;
    }

    static long lcm_conductor(long a, long b)
    {
        long g = std::gcd(a, b);
        long m = a / g * b;
        if (m % 4 == 2) m *= 2;  // keep canonical: lcm of canonical conductors, adjusted
        return m;
    }

    static std::pair<CyclotomicNumber, CyclotomicNumber> to_common(const CyclotomicNumber& a,
                                                                   const CyclotomicNumber& b)
    {
        const long M = lcm_conductor(a.conductor_, b.conductor_);
        return {a.lifted_to(M), b.lifted_to(M)};
    }
};

}  // namespace ellu
