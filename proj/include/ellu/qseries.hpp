// ellu: exact q-expansions with rational exponents and cyclotomic coefficients.
//
// A QSeries is a finite sum  sum_e  c_e * q^e  with e rational and c_e in a
// cyclotomic field, known modulo q^order: exponents below `order` are stored
// exactly, larger ones are unknown.  Arithmetic tracks the truncation order
// precisely (for a product, ord(AB) = min(ord A + lead B, ord B + lead A)).
//
// The expansion of a Siegel function specialized along the torsion section
// z = -v2*tau + v1, with v = (v1, v2) reduced so that v1, v2 lie in [0,1),
// is assembled from
//
//   v2 > 0 : Si^v = e^{pi i v1 (1-v2)} q^{B2(v2)/2} (1 - z^{-1} q^{v2})
//                   prod_{n>=1} (1 - z q^{n-v2})(1 - z^{-1} q^{n+v2})
//   v2 = 0 : Si^v = -e^{-pi i v1} q^{1/12} (1 - z)
//                   prod_{n>=1} (1 - z q^n)(1 - z^{-1} q^n)
//
// with z = e^{2 pi i v1} and B2(X) = X^2 - X + 1/6.  (Substituting
// q_C = z q^{-v2} into the defining product and pulling the negative power
// of q out of the factor 1 - q_C collapses the Bernoulli prefactor to
// q^{B2(v2)/2}.)  For v in (1/n)Z^2 the exponents lie in (1/(12 n^2))Z and
// the coefficients in Q(zeta_{2 n^2}).

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace ellu {

class QSeries {
public:
    using TermMap = std::map<Rational, CyclotomicNumber>;

    explicit QSeries(Rational order) : order_(std::move(order)) {}

    static QSeries zero(Rational order) { return QSeries(std::move(order)); }

    static QSeries monomial(const Rational& e, CyclotomicNumber c, Rational order)
    {
        QSeries s(std::move(order));
        s.set(e, std::move(c));
        return s;
    }

    // 1 + c * q^e, known modulo q^order.
    static QSeries one_plus(const Rational& e, const CyclotomicNumber& c, Rational order)
    {
        QSeries s(std::move(order));
        s.set(Rational(0), CyclotomicNumber(Rational(1)));
        s.set(e, c);
        return s;
    }

    const Rational& order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool has_terms() const { return !terms_.empty(); }

    // Smallest stored exponent; for an (identically truncation-zero) series,
    // all that is known is that every exponent is >= order.
    Rational leading_exponent() const { return terms_.empty() ? order_ : terms_.begin()->first; }

    const CyclotomicNumber& leading_coefficient() const
    {
        if (terms_.empty()) throw std::domain_error("q-series has no known terms");
        return terms_.begin()->second;
    }

    CyclotomicNumber coefficient(const Rational& e) const
    {
        if (e >= order_) throw std::domain_error("coefficient requested beyond the truncation order");
        auto it = terms_.find(e);
        return it == terms_.end() ? CyclotomicNumber(Rational(0)) : it->second;
    }

    QSeries truncated(const Rational& new_order) const
    {
        QSeries s(new_order < order_ ? new_order : order_);
        for (const auto& [e, c] : terms_) {
            if (e < s.order_) s.terms_.emplace(e, c);
        }
        return s;
    }

    QSeries shifted(const Rational& d) const
    {
        QSeries s(order_ + d);
        for (const auto& [e, c] : terms_) s.terms_.emplace(e + d, c);
        return s;
    }

    QSeries scaled(const CyclotomicNumber& c) const
    {
        QSeries s(order_);
        if (c.is_zero()) return s;
        for (const auto& [e, coef] : terms_) s.set(e, coef * c);
        return s;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b)
    {
        QSeries s(a.order_ < b.order_ ? a.order_ : b.order_);
        for (const auto& [e, c] : a.terms_) {
            if (e < s.order_) s.add_to(e, c);
        }
        for (const auto& [e, c] : b.terms_) {
            if (e < s.order_) s.add_to(e, c);
        }
        return s;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + b.scaled(CyclotomicNumber(Rational(-1))); }

    friend QSeries operator*(const QSeries& a, const QSeries& b)
    {
        const Rational oa = a.order_ + b.leading_exponent();
        const Rational ob = b.order_ + a.leading_exponent();
        QSeries s(oa < ob ? oa : ob);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                const Rational e = ea + eb;
                if (e < s.order_) s.add_to(e, ca * cb);
            }
        }
        return s;
    }

    // Multiplicative inverse; the leading term must be known and nonzero.
    QSeries inverted() const
    {
        if (terms_.empty()) throw std::domain_error("cannot invert a q-series with no known terms");
        const Rational la = leading_exponent();
        const CyclotomicNumber c0 = leading_coefficient();
        const Rational rel = order_ - la;  // relative precision of 1 + R
        // A = c0 q^la (1 + R), R with positive exponents known mod q^rel.
        QSeries R(rel);
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
            R.set(it->first - la, it->second * c0.inverse());
        }
        QSeries acc = monomial(Rational(0), CyclotomicNumber(Rational(1)), rel);
        QSeries term = acc;
        const QSeries negR = R.scaled(CyclotomicNumber(Rational(-1)));
        while (term.has_terms()) {
            term = (term * negR).truncated(rel);
            if (!term.has_terms()) break;
            acc = acc + term;
        }
        return acc.scaled(c0.inverse()).shifted(-la);
    }

    QSeries pow(BigInt k) const
    {
        if (k < 0) return inverted().pow(-k);
        if (k == 0) return monomial(Rational(0), CyclotomicNumber(Rational(1)), order_);
        // Preserve relative precision: X^k is known to ord + (k-1)*lead.
        const Rational target = order_ + (Rational(k) - 1) * leading_exponent();
        QSeries acc = monomial(Rational(0), CyclotomicNumber(Rational(1)), order_ - leading_exponent());
        QSeries base = *this;
        bool any = false;
        while (k > 0) {
            if ((k & 1) != 0) {
                acc = any ? acc * base : base;
                any = true;
            }
            k >>= 1;
            if (k > 0) base = base * base;
        }
        if (!any) return monomial(Rational(0), CyclotomicNumber(Rational(1)), target);
        return acc.truncated(target);
    }

    friend bool operator==(const QSeries& a, const QSeries& b)
    {
        const Rational o = a.order_ < b.order_ ? a.order_ : b.order_;
        return (a.truncated(o) - b.truncated(o)).terms_.empty();
    }
    friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

    // Numeric resummation at tau: sum c_e exp(2*pi*i*tau*e).
    Complex eval(Complex tau) const
    {
        Complex acc = 0.0;
        for (const auto& [e, c] : terms_) {
            acc += c.to_complex() * std::exp(Complex(0.0, two_pi) * tau * to_double(e));
        }
        return acc;
    }

private:
    Rational order_;
    TermMap terms_;

    void set(const Rational& e, CyclotomicNumber c)
    {
        if (e >= order_ || c.is_zero()) return;
        terms_[e] = std::move(c);
    }

    void add_to(const Rational& e, const CyclotomicNumber& c)
    {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
};

// If a = rho * b for a root of unity rho, return its angle; otherwise nullopt.
// The comparison runs to the common truncation order.
inline std::optional<ExactAngle> ratio_root_of_unity(const QSeries& a, const QSeries& b)
{
    if (!a.has_terms() || !b.has_terms()) return std::nullopt;
    if (a.leading_exponent() != b.leading_exponent()) return std::nullopt;
    const CyclotomicNumber rho = a.leading_coefficient() / b.leading_coefficient();
    auto angle = rho.as_root_of_unity();
    if (!angle) return std::nullopt;
    if (a != b.scaled(rho)) return std::nullopt;
    return angle;
}

// Exact expansion of the Siegel function at torsion parameter v, as a series
// in q known modulo q^order.  The parameter is reduced first; integral v is
// rejected (the function vanishes identically there).
inline QSeries qexp_siegel(const TorsionParameter& v_in, const Rational& order)
{
    const TorsionParameter v = v_in.reduced();
    if (v.is_lattice_point()) {
        throw std::invalid_argument("torsion parameter is integral; the Siegel function vanishes there");
    }
    const Rational v1 = v.v1;
    const Rational v2 = v.v2;
    const CyclotomicNumber zt = CyclotomicNumber::zeta(static_cast<long>(rat_den(v1)), rat_num(v1));
    const CyclotomicNumber zti = zt.inverse();

    const Rational shift = bernoulli2(v2) / 2;
    const Rational rel = order - shift;
    // v2 > 0: prefactor e^{pi i v1 (1-v2)}; v2 = 0: -e^{-pi i v1} = e^{pi i (1-v1)}.
    const CyclotomicNumber pre = CyclotomicNumber::from_exact_angle(
        v2 > 0 ? ExactAngle{v1 * (Rational(1) - v2)} : ExactAngle{Rational(1) - v1});

    QSeries s = QSeries::monomial(Rational(0), pre, rel);
    if (v2 > 0) {
        if (v2 < rel) s = s * QSeries::one_plus(v2, zti.negated(), rel);
        for (Rational e = Rational(1) - v2; e < rel; e += 1) {
            s = s * QSeries::one_plus(e, zt.negated(), rel);
        }
        for (Rational e = Rational(1) + v2; e < rel; e += 1) {
            s = s * QSeries::one_plus(e, zti.negated(), rel);
        }
    } else {
        s = s.scaled(CyclotomicNumber(Rational(1)) - zt);
        for (Rational e = 1; e < rel; e += 1) {
            s = s * QSeries::one_plus(e, zt.negated(), rel);
            s = s * QSeries::one_plus(e, zti.negated(), rel);
        }
    }
    return s.shifted(shift);
}

// Expansion of Si^v raised to an integer power.
inline QSeries qexp_siegel_power(const TorsionParameter& v, const BigInt& e, const Rational& order)
{
    if (e == 0) return QSeries::monomial(Rational(0), CyclotomicNumber(Rational(1)), order);
    // Compute the base to enough precision that the power still reaches
    // `order`: relative precision is preserved by powers and inverses.
    const TorsionParameter w = v.reduced();
    const Rational lead = bernoulli2(w.v2) / 2;
    const Rational base_order = order - (Rational(e) - 1) * lead;
    if (base_order <= lead) {
        // The power leads at e*lead >= order; nothing is visible below order.
        return QSeries::zero(order);
    }
    return qexp_siegel(v, base_order).pow(e).truncated(order);
}

// Product prod_i Si^{v_i}^{e_i}, truncated at `order`.
inline QSeries qexp_siegel_product(const std::vector<std::pair<TorsionParameter, BigInt>>& factors,
                                   const Rational& order)
{
    // Uniform relative precision R = order - (total leading exponent): every
    // factor carries relative precision R, so the product reaches `order`.
    Rational lead_total(0);
    for (const auto& [v, e] : factors) {
        lead_total += bernoulli2(v.reduced().v2) / 2 * Rational(e);
    }
    const Rational rel = order - lead_total;
    if (rel <= 0) return QSeries::zero(order);
    QSeries acc = QSeries::monomial(Rational(0), CyclotomicNumber(Rational(1)), rel);
    for (const auto& [v, e] : factors) {
        const Rational lead = bernoulli2(v.reduced().v2) / 2 * Rational(e);
        acc = acc * qexp_siegel_power(v, e, lead + rel);
    }
    return acc;
}

}  // namespace ellu
