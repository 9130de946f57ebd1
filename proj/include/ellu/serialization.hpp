// ellu: JSON wire formats.
//
//   rational            "p/q" string
//   complex             [re, im]
//   torsion parameter   {"v1": "p/q", "v2": "p/q"}
//   group               {"r": int, "torsion": [ints]}
//   group element       {"free": [ints], "tors": [ints]}
//   divisor             {"group": ..., "terms": [{"free", "tors", "coeff"}]}
//   certificate         {"group": ..., "entries": [{"kind", "a", "b"?, "N"?, "multiplier"}]}
//   curve instance      {"tau": [re, im], "points": [{"z": [re,im] | {"v1","v2"}, "coeff": "p/q"}]}
//   5x5 matrices        row-major; complex entries as [re, im], exact entries as "p/q"
//   q-series            {"N": int, "order": "p/q", "terms": [{"k", "coeffs", "conductor"}]}
//   cyclotomic number   {"conductor": m, "coeffs": ["p/q", ...]}
//
// Serializing a curve instance realizes every term: pure-torsion terms keep
// their exact parameters, terms with a free component are written as the
// concrete complex point.  Parsing rebuilds the canonical shadow (one free
// generator per complex point, all torsion in one (Z/N)^2 factor), so a
// round trip preserves the analytic content but normalizes the group model.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cyclotomic.hpp"
#include "divisor.hpp"
#include "lattice.hpp"
#include "polylog_matrix.hpp"
#include "qseries.hpp"
#include "rational.hpp"
#include "units.hpp"

namespace ellu {

using nlohmann::json;

// --- scalars ---------------------------------------------------------------

inline json rational_to_json(const Rational& r) { return json(rat_str(r)); }

inline Rational rational_from_json(const json& j)
{
    if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
    return parse_rational(j.get<std::string>());
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex values serialize as [re, im]");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

// --- torsion parameters ------------------------------------------------------

inline void to_json(json& j, const TorsionParameter& v)
{
    j = json{{"v1", rat_str(v.v1)}, {"v2", rat_str(v.v2)}};
}

inline void from_json(const json& j, TorsionParameter& v)
{
    v = TorsionParameter(rational_from_json(j.at("v1")), rational_from_json(j.at("v2")));
}

// --- groups, elements, divisors ----------------------------------------------

inline void to_json(json& j, const AbelianGroup& g)
{
    j = json{{"r", g.rank}, {"torsion", g.torsion_orders}};
}

inline void from_json(const json& j, AbelianGroup& g)
{
    g.rank = j.at("r").get<int>();
    g.torsion_orders = j.at("torsion").get<std::vector<long>>();
}

inline void to_json(json& j, const GroupElement& e)
{
    std::vector<long long> fr;
    fr.reserve(e.free_part.size());
    for (const auto& x : e.free_part) fr.push_back(to_long(x));
    j = json{{"free", fr}, {"tors", e.torsion_part}};
}

inline void from_json(const json& j, GroupElement& e)
{
    e.free_part.clear();
    for (const auto& x : j.at("free")) e.free_part.emplace_back(x.get<long long>());
    e.torsion_part = j.at("tors").get<std::vector<long>>();
}

inline json divisor_to_json(const Divisor& s)
{
    json terms = json::array();
    for (const auto& [e, q] : s.terms()) {
        json t = e;
        t["coeff"] = rat_str(q);
        terms.push_back(std::move(t));
    }
    return json{{"group", s.group()}, {"terms", std::move(terms)}};
}

inline Divisor divisor_from_json(const json& j)
{
    const AbelianGroup g = j.at("group").get<AbelianGroup>();
    Divisor s(g);
    for (const auto& t : j.at("terms")) {
        GroupElement raw = t.get<GroupElement>();
        const GroupElement e = make_element(g, raw.free_part, raw.torsion_part);
        s.add(e, rational_from_json(t.at("coeff")));
    }
    return s;
}

// --- certificates --------------------------------------------------------------

inline json certificate_to_json(const GeneratorCertificate& c)
{
    json entries = json::array();
    for (const auto& en : c.entries) {
        json e{{"kind", generator_tag(en.gen.kind)}, {"a", en.gen.a},
               {"multiplier", rat_str(en.multiplier)}};
        if (en.gen.kind == GeneratorKind::TorsionTranslate ||
            en.gen.kind == GeneratorKind::Parallelogram) {
            e["b"] = en.gen.b;
        }
        if (en.gen.kind == GeneratorKind::Distribution) {
            e["N"] = to_long(en.gen.n);
        }
        entries.push_back(std::move(e));
    }
    return json{{"group", c.group}, {"entries", std::move(entries)}};
}

inline GeneratorCertificate certificate_from_json(const json& j)
{
    const AbelianGroup g = j.at("group").get<AbelianGroup>();
    GeneratorCertificate cert{g, {}};
    for (const auto& e : j.at("entries")) {
        const GeneratorKind kind = generator_kind_from_tag(e.at("kind").get<std::string>());
        GroupElement raw_a = e.at("a").get<GroupElement>();
        const GroupElement a = make_element(g, raw_a.free_part, raw_a.torsion_part);
        Generator gen{kind, a, zero_element(g), 1};
        switch (kind) {
            case GeneratorKind::TorsionSymbol:
                gen = Generator::torsion_symbol(g, a);
                break;
            case GeneratorKind::TorsionTranslate: {
                GroupElement raw_b = e.at("b").get<GroupElement>();
                gen = Generator::torsion_translate(
                    g, a, make_element(g, raw_b.free_part, raw_b.torsion_part));
                break;
            }
            case GeneratorKind::Distribution:
                gen = Generator::distribution(g, a, BigInt(e.at("N").get<long long>()));
                break;
            case GeneratorKind::Parallelogram: {
                GroupElement raw_b = e.at("b").get<GroupElement>();
                gen = Generator::parallelogram(
                    g, a, make_element(g, raw_b.free_part, raw_b.torsion_part));
                break;
            }
        }
        cert.entries.push_back(CertificateEntry{gen, rational_from_json(e.at("multiplier"))});
    }
    return cert;
}

// --- curve divisor instances -----------------------------------------------------

inline json instance_to_json(const CurveDivisorInstance& inst)
{
    json points = json::array();
    for (const auto& [e, q] : inst.terms) {
        json p;
        if (e.free_is_zero()) {
            p["z"] = json(inst.torsion_parameter(e));
        } else {
            p["z"] = complex_to_json(inst.realize(e));
        }
        p["coeff"] = rat_str(q);
        points.push_back(std::move(p));
    }
    return json{{"tau", complex_to_json(inst.tau.tau)}, {"points", std::move(points)}};
}

inline CurveDivisorInstance instance_from_json(const json& j)
{
    const HalfPlanePoint h(complex_from_json(j.at("tau")));
    std::vector<std::pair<std::optional<TorsionParameter>, Complex>> points;
    std::vector<Rational> coeffs;
    for (const auto& p : j.at("points")) {
        const json& zj = p.at("z");
        if (zj.is_object()) {
            points.emplace_back(zj.get<TorsionParameter>(), Complex(0.0, 0.0));
        } else {
            points.emplace_back(std::nullopt, complex_from_json(zj));
        }
        coeffs.push_back(rational_from_json(p.at("coeff")));
    }
    return make_instance_from_points(h, points, coeffs);
}

// --- matrices -------------------------------------------------------------------

inline json matrix_to_json(const Mat5<Complex>& m)
{
    json rows = json::array();
    for (int i = 0; i < 5; ++i) {
        json row = json::array();
        for (int k = 0; k < 5; ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json matrix_to_json(const Mat5<Rational>& m)
{
    json rows = json::array();
    for (int i = 0; i < 5; ++i) {
        json row = json::array();
        for (int k = 0; k < 5; ++k) row.push_back(rat_str(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat5<Rational> rational_matrix_from_json(const json& j)
{
    Mat5<Rational> m = Mat5<Rational>::zero();
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 5; ++k) {
            m(i, k) = rational_from_json(j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)));
        }
    }
    return m;
}

// --- cyclotomic numbers and q-series ----------------------------------------------

inline void to_json(json& j, const CyclotomicNumber& c)
{
    std::vector<std::string> coeffs;
    coeffs.reserve(c.coefficients().size());
    for (const auto& r : c.coefficients()) coeffs.push_back(rat_str(r));
    j = json{{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

// QSeries wire format: exponents are rescaled to a common denominator N so
// that every term exponent is the integer k with e = k/N.  Coefficients ride
// along as cyclotomic coordinate vectors with their conductor.
inline json qseries_to_json(const QSeries& s)
{
    BigInt den = rat_den(s.order());
    for (const auto& [e, c] : s.terms()) {
        den = big_lcm(den, rat_den(e));
    }
    const Rational scale(den);
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) {
        json t = c;
        t["k"] = to_long(rat_num(e * scale));
        terms.push_back(std::move(t));
    }
    return json{{"N", to_long(den)}, {"order", rat_str(s.order())}, {"terms", std::move(terms)}};
}

}  // namespace ellu
