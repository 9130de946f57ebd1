// ellu: formal divisors on finitely generated abelian groups and the
// constructive decomposition of ker(d) into standard generators.
//
// For A = Z^r x prod Z/n_i, the divisor space L(A) = Q[A - {0}] carries
//
//   d : L(A) -> Sym^2(Q^r),   {a} |-> f(a) f(a)^T
//
// with f the free part (torsion dies after tensoring with Q).  The kernel of
// d is generated by four families, each subject to "no zero symbol" side
// conditions:
//
//   o)  {a}                          a torsion, a != 0
//   i)  {a} - {a-b}                  b torsion, a != 0, a-b != 0
//       {Na} - N^2 {a}               N >= 1, Na != 0
//   ii) {a+b} + {a-b} - 2{a} - 2{b}  a, b, a+b, a-b != 0
//
// decompose() rewrites a kernel divisor into exactly these generators:
//   stage 1 strips torsion parts (o and translate generators),
//   stage 2 reduces free-lattice symbols by support splitting
//     {z+w+u} -> pair symbols, via the exact identity
//       2( {z+w+u} - {z+w} - {z+u} - {w+u} + {z} + {w} + {u} )
//         = P(z+w,u) - P(z,w-u) + P(z+u,w) - 2 P(w,u),
//     P(x,y) = {x+y} + {x-y} - 2{x} - 2{y},
//   then peels two-coordinate symbols down to units by P(m - s e_i, s e_i),
//   fixes signs with {-a} - {a} = P(a,2a) - P(2a,a), and collapses axis
//   multiples with distribution generators.  The surviving support lies on
//   {e_i} and {e_i + e_j}, whose d-images are linearly independent, so the
//   kernel condition forces the residual to vanish identically.
//
// Everything in this header is exact rational arithmetic.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace ellu {

struct AbelianGroup {
    int rank = 0;                      // free rank r
    std::vector<long> torsion_orders;  // n_i >= 2

    bool operator==(const AbelianGroup& o) const
    {
        return rank == o.rank && torsion_orders == o.torsion_orders;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }
};

struct GroupElement {
    std::vector<BigInt> free_part;    // length rank
    std::vector<long> torsion_part;   // length torsion_orders.size(), each in [0, n_i)

    bool operator<(const GroupElement& o) const
    {
        if (free_part != o.free_part) return free_part < o.free_part;
        return torsion_part < o.torsion_part;
    }
    bool operator==(const GroupElement& o) const
    {
        return free_part == o.free_part && torsion_part == o.torsion_part;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    bool is_zero() const
    {
        for (const auto& x : free_part) {
            if (x != 0) return false;
        }
        for (const long t : torsion_part) {
            if (t != 0) return false;
        }
        return true;
    }

    bool free_is_zero() const
    {
        for (const auto& x : free_part) {
            if (x != 0) return false;
        }
        return true;
    }

    bool torsion_is_zero() const
    {
        for (const long t : torsion_part) {
            if (t != 0) return false;
        }
        return true;
    }
};

inline GroupElement zero_element(const AbelianGroup& g)
{
    GroupElement e;
    e.free_part.assign(static_cast<std::size_t>(g.rank), BigInt(0));
    e.torsion_part.assign(g.torsion_orders.size(), 0);
    return e;
}

inline GroupElement make_element(const AbelianGroup& g, std::vector<BigInt> fr, std::vector<long> to)
{
    if (fr.size() != static_cast<std::size_t>(g.rank) || to.size() != g.torsion_orders.size()) {
        throw std::invalid_argument("group element has wrong coordinate counts");
    }
    GroupElement e;
    e.free_part = std::move(fr);
    e.torsion_part = std::move(to);
    for (std::size_t i = 0; i < e.torsion_part.size(); ++i) {
        const long n = g.torsion_orders[i];
        long t = e.torsion_part[i] % n;
        if (t < 0) t += n;
        e.torsion_part[i] = t;
    }
    return e;
}

inline GroupElement g_add(const AbelianGroup& g, const GroupElement& a, const GroupElement& b)
{
    GroupElement e = a;
    for (std::size_t i = 0; i < e.free_part.size(); ++i) e.free_part[i] += b.free_part[i];
    for (std::size_t i = 0; i < e.torsion_part.size(); ++i) {
        e.torsion_part[i] = (e.torsion_part[i] + b.torsion_part[i]) % g.torsion_orders[i];
    }
    return e;
}

inline GroupElement g_neg(const AbelianGroup& g, const GroupElement& a)
{
    GroupElement e = a;
    for (auto& x : e.free_part) x = -x;
    for (std::size_t i = 0; i < e.torsion_part.size(); ++i) {
        e.torsion_part[i] = (g.torsion_orders[i] - e.torsion_part[i]) % g.torsion_orders[i];
    }
    return e;
}

inline GroupElement g_sub(const AbelianGroup& g, const GroupElement& a, const GroupElement& b)
{
    return g_add(g, a, g_neg(g, b));
}

inline GroupElement g_scale(const AbelianGroup& g, const BigInt& k, const GroupElement& a)
{
    GroupElement e = a;
    for (auto& x : e.free_part) x *= k;
    for (std::size_t i = 0; i < e.torsion_part.size(); ++i) {
        const long n = g.torsion_orders[i];
        BigInt t = (BigInt(e.torsion_part[i]) * k) % n;
        if (t < 0) t += n;
        e.torsion_part[i] = static_cast<long>(t);
    }
    return e;
}

// (0, torsion part of a) and (free part of a, 0).
inline GroupElement torsion_shadow(const AbelianGroup& g, const GroupElement& a)
{
    GroupElement e = zero_element(g);
    e.torsion_part = a.torsion_part;
    return e;
}

inline GroupElement free_shadow(const AbelianGroup& g, const GroupElement& a)
{
    GroupElement e = zero_element(g);
    e.free_part = a.free_part;
    return e;
}

class Divisor {
public:
    explicit Divisor(AbelianGroup g) : group_(std::move(g)) {}

    const AbelianGroup& group() const { return group_; }
    const std::map<GroupElement, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add(const GroupElement& e, const Rational& c)
    {
        if (e.is_zero()) {
            throw std::invalid_argument("divisors live on A - {0}: zero element not allowed");
        }
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const GroupElement& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Divisor scaled(const Rational& c) const
    {
        Divisor s(group_);
        if (c == 0) return s;
        for (const auto& [e, q] : terms_) s.terms_.emplace(e, q * c);
        return s;
    }

    friend Divisor operator+(const Divisor& a, const Divisor& b)
    {
        if (a.group_ != b.group_) throw std::invalid_argument("divisors belong to different groups");
        Divisor s = a;
        for (const auto& [e, q] : b.terms_) s.add(e, q);
        return s;
    }

    friend Divisor operator-(const Divisor& a, const Divisor& b)
    {
        return a + b.scaled(Rational(-1));
    }

    friend bool operator==(const Divisor& a, const Divisor& b)
    {
        return a.group_ == b.group_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

private:
    AbelianGroup group_;
    std::map<GroupElement, Rational> terms_;
};

// d(S) = sum_a c_a * f(a) f(a)^T, a symmetric rank x rank rational matrix.
inline std::vector<std::vector<Rational>> d_map(const Divisor& s)
{
    const int r = s.group().rank;
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(r),
                                         std::vector<Rational>(static_cast<std::size_t>(r), Rational(0)));
    for (const auto& [e, c] : s.terms()) {
        for (int i = 0; i < r; ++i) {
            if (e.free_part[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < r; ++j) {
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    c * Rational(e.free_part[static_cast<std::size_t>(i)] *
                                 e.free_part[static_cast<std::size_t>(j)]);
            }
        }
    }
    return m;
}

inline bool kernel_member(const Divisor& s)
{
    for (const auto& row : d_map(s)) {
        for (const auto& x : row) {
            if (x != 0) return false;
        }
    }
    return true;
}

// ----------------------------------------------------------------------------
// Generators and certificates.

enum class GeneratorKind {
    TorsionSymbol,     // {a},  a torsion, a != 0
    TorsionTranslate,  // {a} - {a-b},  b torsion
    Distribution,      // {Na} - N^2 {a}
    Parallelogram,     // {a+b} + {a-b} - 2{a} - 2{b}
};

inline std::string generator_tag(GeneratorKind k)
{
    switch (k) {
        case GeneratorKind::TorsionSymbol: return "o";
        case GeneratorKind::TorsionTranslate: return "i-translate";
        case GeneratorKind::Distribution: return "i-distribution";
        case GeneratorKind::Parallelogram: return "ii";
    }
    throw std::logic_error("unknown generator kind");
}

inline GeneratorKind generator_kind_from_tag(const std::string& t)
{
    if (t == "o") return GeneratorKind::TorsionSymbol;
    if (t == "i-translate") return GeneratorKind::TorsionTranslate;
    if (t == "i-distribution") return GeneratorKind::Distribution;
    if (t == "ii") return GeneratorKind::Parallelogram;
    throw std::invalid_argument("unknown generator tag: " + t);
}

struct Generator {
    GeneratorKind kind;
    GroupElement a;
    GroupElement b;  // TorsionTranslate / Parallelogram only
    BigInt n = 1;    // Distribution only

    // Factories validate the side conditions; ill-formed generators are
    // rejected rather than silently projected.
    static Generator torsion_symbol(const AbelianGroup& g, const GroupElement& a)
    {
        if (a.is_zero() || !a.free_is_zero()) {
            throw std::invalid_argument("o-generator requires a nonzero torsion element");
        }
        return Generator{GeneratorKind::TorsionSymbol, a, zero_element(g), 1};
    }

    static Generator torsion_translate(const AbelianGroup& g, const GroupElement& a, const GroupElement& b)
    {
        if (!b.free_is_zero()) throw std::invalid_argument("translate offset must be torsion");
        if (a.is_zero() || g_sub(g, a, b).is_zero()) {
            throw std::invalid_argument("translate generator touches the zero symbol");
        }
        return Generator{GeneratorKind::TorsionTranslate, a, b, 1};
    }

    static Generator distribution(const AbelianGroup& g, const GroupElement& a, const BigInt& n)
    {
        if (n < 1) throw std::invalid_argument("distribution index must be >= 1");
        if (g_scale(g, n, a).is_zero()) {
            throw std::invalid_argument("distribution generator touches the zero symbol");
        }
        return Generator{GeneratorKind::Distribution, a, zero_element(g), n};
    }

    static Generator parallelogram(const AbelianGroup& g, const GroupElement& a, const GroupElement& b)
    {
        if (a.is_zero() || b.is_zero() || g_add(g, a, b).is_zero() || g_sub(g, a, b).is_zero()) {
            throw std::invalid_argument("parallelogram generator touches the zero symbol");
        }
        return Generator{GeneratorKind::Parallelogram, a, b, 1};
    }

    Divisor expand(const AbelianGroup& g) const
    {
        Divisor d(g);
        switch (kind) {
            case GeneratorKind::TorsionSymbol:
                d.add(a, Rational(1));
                break;
            case GeneratorKind::TorsionTranslate:
                d.add(a, Rational(1));
                d.add(g_sub(g, a, b), Rational(-1));
                break;
            case GeneratorKind::Distribution:
                d.add(g_scale(g, n, a), Rational(1));
                d.add(a, Rational(-(n * n)));
                break;
            case GeneratorKind::Parallelogram:
                d.add(g_add(g, a, b), Rational(1));
                d.add(g_sub(g, a, b), Rational(1));
                d.add(a, Rational(-2));
                d.add(b, Rational(-2));
                break;
        }
        return d;
    }
};

struct CertificateEntry {
    Generator gen;
    Rational multiplier;
};

struct GeneratorCertificate {
    AbelianGroup group;
    std::vector<CertificateEntry> entries;

    Divisor expand() const
    {
        Divisor d(group);
        for (const auto& e : entries) {
            d = d + e.gen.expand(group).scaled(e.multiplier);
        }
        return d;
    }
};

// ----------------------------------------------------------------------------
// Decomposition.

namespace detail {

// Coordinate support size and l1 size of a free vector.
inline int coord_support(const GroupElement& e)
{
    int k = 0;
    for (const auto& x : e.free_part) {
        if (x != 0) ++k;
    }
    return k;
}

inline BigInt l1_size(const GroupElement& e)
{
    BigInt t = 0;
    for (const auto& x : e.free_part) t += (x < 0 ? -x : x);
    return t;
}

inline GroupElement axis(const AbelianGroup& g, int i, const BigInt& c)
{
    GroupElement e = zero_element(g);
    e.free_part[static_cast<std::size_t>(i)] = c;
    return e;
}

class Decomposer {
public:
    explicit Decomposer(const Divisor& s) : g_(s.group()), w_(s), cert_{s.group(), {}} {}

    GeneratorCertificate run()
    {
        for (long guard = 0; guard < 2000000; ++guard) {
            if (!step()) {
                if (!w_.empty()) {
                    throw std::domain_error("divisor is not in ker(d): decomposition left a residual");
                }
                return std::move(cert_);
            }
        }
        throw std::logic_error("decomposition did not terminate");
    }

private:
    const AbelianGroup& g_;
    Divisor w_;
    GeneratorCertificate cert_;

    void emit(const Generator& gen, const Rational& mult)
    {
        cert_.entries.push_back(CertificateEntry{gen, mult});
        w_ = w_ - gen.expand(g_).scaled(mult);
    }

    // One rewrite; false when no rule applies (support is on {e_i}, {e_i+e_j}
    // only — and then the kernel condition forces w_ to be empty).
    bool step()
    {
        for (const auto& [e, c] : w_.terms()) {
            if (!e.torsion_is_zero()) {
                strip_torsion(e, c);
                return true;
            }
        }
        for (const auto& [e, c] : w_.terms()) {
            const int k = coord_support(e);
            if (k >= 3) {
                frechet_split(e, c);
                return true;
            }
        }
        for (const auto& [e, c] : w_.terms()) {
            if (coord_support(e) == 2 && l1_size(e) >= 3) {
                peel_unit(e, c);
                return true;
            }
        }
        for (const auto& [e, c] : w_.terms()) {
            if (coord_support(e) == 2 && !is_normal_pair(e)) {
                fix_pair_signs(e, c);
                return true;
            }
        }
        for (const auto& [e, c] : w_.terms()) {
            if (coord_support(e) == 1) {
                const int i = first_axis(e);
                const BigInt& x = e.free_part[static_cast<std::size_t>(i)];
                if (x >= 2 || x <= -2) {
                    collapse_axis(e, c, i);
                    return true;
                }
                if (x == -1) {
                    negate_symbol(e, c);
                    return true;
                }
            }
        }
        return false;
    }

    static int first_axis(const GroupElement& e)
    {
        for (std::size_t i = 0; i < e.free_part.size(); ++i) {
            if (e.free_part[i] != 0) return static_cast<int>(i);
        }
        throw std::logic_error("free vector is zero");
    }

    static bool is_normal_pair(const GroupElement& e)
    {
        // normal two-coordinate symbol: e_i + e_j (both entries exactly +1)
        for (const auto& x : e.free_part) {
            if (x != 0 && x != 1) return false;
        }
        return l1_size(e) == 2;
    }

    void strip_torsion(GroupElement e, Rational c)
    {
        if (e.free_is_zero()) {
            emit(Generator::torsion_symbol(g_, e), c);
        } else {
            emit(Generator::torsion_translate(g_, e, torsion_shadow(g_, e)), c);
        }
    }

    // {z+w+u} -> {z+w} + {z+u} + {w+u} - {z} - {w} - {u}  via four
    // parallelogram generators (see the identity in the header comment).
    void frechet_split(GroupElement e, Rational c)
    {
        std::vector<int> sup;
        for (std::size_t i = 0; i < e.free_part.size(); ++i) {
            if (e.free_part[i] != 0) sup.push_back(static_cast<int>(i));
        }
        GroupElement z = axis(g_, sup[0], e.free_part[static_cast<std::size_t>(sup[0])]);
        GroupElement w = axis(g_, sup[1], e.free_part[static_cast<std::size_t>(sup[1])]);
        GroupElement u = zero_element(g_);
        for (std::size_t s = 2; s < sup.size(); ++s) {
            u.free_part[static_cast<std::size_t>(sup[s])] = e.free_part[static_cast<std::size_t>(sup[s])];
        }
        const Rational half = c / 2;
        emit(Generator::parallelogram(g_, g_add(g_, z, w), u), half);
        emit(Generator::parallelogram(g_, z, g_sub(g_, w, u)), -half);
        emit(Generator::parallelogram(g_, g_add(g_, z, u), w), half);
        emit(Generator::parallelogram(g_, w, u), -c);
    }

    // For a two-coordinate symbol with an entry of size >= 2:
    // {m} = -{m - 2 s e_i} + 2{m - s e_i} + 2{s e_i} + P(m - s e_i, s e_i).
    void peel_unit(GroupElement e, Rational c)
    {
        int i = -1;
        for (std::size_t k = 0; k < e.free_part.size(); ++k) {
            const BigInt& x = e.free_part[k];
            if (x >= 2 || x <= -2) {
                i = static_cast<int>(k);
                break;
            }
        }
        if (i < 0) throw std::logic_error("peel called without a large coordinate");
        const BigInt s = e.free_part[static_cast<std::size_t>(i)] > 0 ? 1 : -1;
        const GroupElement step = axis(g_, i, s);
        emit(Generator::parallelogram(g_, g_sub(g_, e, step), step), c);
    }

    // Unit pair symbols with a negative entry.
    void fix_pair_signs(GroupElement e, Rational c)
    {
        int neg = 0;
        for (const auto& x : e.free_part) {
            if (x == -1) ++neg;
        }
        if (neg == 2) {
            negate_symbol(e, c);
            return;
        }
        // exactly one negative entry: e = e_i - e_j; use P(e_i, e_j).
        int ip = -1;
        int in = -1;
        for (std::size_t k = 0; k < e.free_part.size(); ++k) {
            if (e.free_part[k] == 1) ip = static_cast<int>(k);
            if (e.free_part[k] == -1) in = static_cast<int>(k);
        }
        emit(Generator::parallelogram(g_, axis(g_, ip, 1), axis(g_, in, 1)), c);
    }

    // {-a} = {a} + P(a, 2a) - P(2a, a), for free a != 0.
    void negate_symbol(GroupElement e, Rational c)
    {
        const GroupElement a = g_neg(g_, e);
        const GroupElement a2 = g_scale(g_, 2, a);
        emit(Generator::parallelogram(g_, a, a2), c);
        emit(Generator::parallelogram(g_, a2, a), -c);
    }

    // {x e_i} = x^2 {sgn(x) e_i} + dist(sgn(x) e_i, |x|).
    void collapse_axis(GroupElement e, Rational c, int i)
    {
        const BigInt& x = e.free_part[static_cast<std::size_t>(i)];
        const BigInt n = x > 0 ? x : -x;
        const GroupElement unit = axis(g_, i, x > 0 ? 1 : -1);
        emit(Generator::distribution(g_, unit, n), c);
    }
};

}  // namespace detail

inline GeneratorCertificate decompose(const Divisor& s)
{
    if (!kernel_member(s)) {
        throw std::domain_error("divisor is not in ker(d)");
    }
    return detail::Decomposer(s).run();
}

}  // namespace ellu
