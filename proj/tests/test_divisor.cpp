// Divisors on a finitely generated abelian group: group arithmetic, the
// quadratic map d, the four generator families, and the certificate
// decomposition of kernel divisors.

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

#include "ellu/divisor.hpp"

using namespace ellu;

namespace {

const AbelianGroup G{2, {3, 4}};           // Z^2 x Z/3 x Z/4
const AbelianGroup G0{0, {4, 4}};          // pure torsion
const AbelianGroup Gfree{2, {}};           // free of rank two

GroupElement el(const AbelianGroup& g, std::vector<BigInt> fr, std::vector<long> to = {})
{
    if (to.empty()) to.assign(g.torsion_orders.size(), 0);
    return make_element(g, std::move(fr), std::move(to));
}

}  // namespace

TEST_CASE("element construction normalizes torsion coordinates", "[divisor]")
{
    const GroupElement e = make_element(G, {BigInt(1), BigInt(-2)}, {7, -3});
    REQUIRE(e.torsion_part == std::vector<long>{1, 1});
    REQUIRE(e.free_part == std::vector<BigInt>{BigInt(1), BigInt(-2)});
    REQUIRE_THROWS_AS(make_element(G, {BigInt(1)}, {0, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(make_element(G, {BigInt(1), BigInt(0)}, {0}), std::invalid_argument);
}

TEST_CASE("group arithmetic", "[divisor]")
{
    const GroupElement a = make_element(G, {BigInt(2), BigInt(-1)}, {2, 3});
    const GroupElement b = make_element(G, {BigInt(1), BigInt(4)}, {2, 2});
    REQUIRE(g_add(G, a, b) == make_element(G, {BigInt(3), BigInt(3)}, {1, 1}));
    REQUIRE(g_neg(G, a) == make_element(G, {BigInt(-2), BigInt(1)}, {1, 1}));
    REQUIRE(g_sub(G, a, a).is_zero());
    REQUIRE(g_scale(G, BigInt(5), a) == make_element(G, {BigInt(10), BigInt(-5)}, {1, 3}));
    REQUIRE(torsion_shadow(G, a) == make_element(G, {BigInt(0), BigInt(0)}, {2, 3}));
    REQUIRE(free_shadow(G, a) == make_element(G, {BigInt(2), BigInt(-1)}, {0, 0}));
    REQUIRE(g_neg(G, zero_element(G)).is_zero());
}

TEST_CASE("divisor term bookkeeping", "[divisor]")
{
    Divisor d(G);
    const GroupElement a = el(G, {BigInt(1), BigInt(0)});
    REQUIRE_THROWS_AS(d.add(zero_element(G), Rational(1)), std::invalid_argument);
    d.add(a, Rational(0));
    REQUIRE(d.empty());
    d.add(a, Rational(3, 2));
    d.add(a, Rational(1, 2));
    REQUIRE(d.coefficient(a) == Rational(2));
    d.add(a, Rational(-2));
    REQUIRE(d.empty());

    d.add(a, Rational(1));
    const Divisor twice = d.scaled(Rational(2));
    REQUIRE(twice.coefficient(a) == Rational(2));
    REQUIRE((d - d).empty());
    REQUIRE_THROWS_AS(d + Divisor(G0), std::invalid_argument);
    REQUIRE(d == d);
    REQUIRE(d != twice);
}

TEST_CASE("the quadratic map and kernel membership", "[divisor]")
{
    // d({a}) = f(a) f(a)^T on free coordinates
    Divisor s(Gfree);
    s.add(el(Gfree, {BigInt(1), BigInt(1)}), Rational(1, 2));
    const auto m = d_map(s);
    REQUIRE(m[0][0] == Rational(1, 2));
    REQUIRE(m[0][1] == Rational(1, 2));
    REQUIRE(m[1][0] == Rational(1, 2));
    REQUIRE(m[1][1] == Rational(1, 2));
    REQUIRE_FALSE(kernel_member(s));

    // a single free symbol is never in the kernel
    Divisor one(Gfree);
    one.add(el(Gfree, {BigInt(1), BigInt(0)}), Rational(1));
    REQUIRE_FALSE(kernel_member(one));

    // the empty divisor and pure-torsion divisors are
    REQUIRE(kernel_member(Divisor(G)));
    Divisor t(G);
    t.add(make_element(G, {BigInt(0), BigInt(0)}, {1, 2}), Rational(7));
    REQUIRE(kernel_member(t));

    // every generator expansion is
    const GroupElement a = el(G, {BigInt(2), BigInt(-1)});
    const GroupElement b = make_element(G, {BigInt(1), BigInt(3)}, {0, 2});
    REQUIRE(kernel_member(Generator::parallelogram(G, a, b).expand(G)));
    REQUIRE(kernel_member(Generator::distribution(G, a, BigInt(3)).expand(G)));
    REQUIRE(kernel_member(
        Generator::torsion_translate(G, a, make_element(G, {BigInt(0), BigInt(0)}, {1, 0}))
            .expand(G)));
}

TEST_CASE("generator factories validate their side conditions", "[divisor]")
{
    const GroupElement tors = make_element(G, {BigInt(0), BigInt(0)}, {1, 2});
    const GroupElement mixed = make_element(G, {BigInt(1), BigInt(0)}, {1, 0});

    REQUIRE_THROWS_AS(Generator::torsion_symbol(G, mixed), std::invalid_argument);
    REQUIRE_THROWS_AS(Generator::torsion_symbol(G, zero_element(G)), std::invalid_argument);

    REQUIRE_THROWS_AS(Generator::torsion_translate(G, mixed, mixed), std::invalid_argument);
    REQUIRE_THROWS_AS(Generator::torsion_translate(G, tors, tors), std::invalid_argument);
    REQUIRE_THROWS_AS(Generator::torsion_translate(G, zero_element(G), tors),
                      std::invalid_argument);

    REQUIRE_THROWS_AS(Generator::distribution(G, mixed, BigInt(0)), std::invalid_argument);
    // 3 * (3-torsion) = 0
    const GroupElement three = make_element(G, {BigInt(0), BigInt(0)}, {1, 0});
    REQUIRE_THROWS_AS(Generator::distribution(G, three, BigInt(3)), std::invalid_argument);

    REQUIRE_THROWS_AS(Generator::parallelogram(G, mixed, mixed), std::invalid_argument);
    REQUIRE_THROWS_AS(Generator::parallelogram(G, mixed, g_neg(G, mixed)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(Generator::parallelogram(G, mixed, zero_element(G)),
                      std::invalid_argument);
}

TEST_CASE("generator expansions list the expected symbols", "[divisor]")
{
    const GroupElement a = make_element(G, {BigInt(1), BigInt(-2)}, {2, 1});
    const GroupElement t = make_element(G, {BigInt(0), BigInt(0)}, {1, 3});

    const Divisor tr = Generator::torsion_translate(G, a, t).expand(G);
    REQUIRE(tr.terms().size() == 2);
    REQUIRE(tr.coefficient(a) == Rational(1));
    REQUIRE(tr.coefficient(g_sub(G, a, t)) == Rational(-1));

    const Divisor di = Generator::distribution(G, a, BigInt(3)).expand(G);
    REQUIRE(di.terms().size() == 2);
    REQUIRE(di.coefficient(g_scale(G, BigInt(3), a)) == Rational(1));
    REQUIRE(di.coefficient(a) == Rational(-9));

    const GroupElement b = make_element(G, {BigInt(0), BigInt(1)}, {0, 2});
    const Divisor pa = Generator::parallelogram(G, a, b).expand(G);
    REQUIRE(pa.terms().size() == 4);
    REQUIRE(pa.coefficient(g_add(G, a, b)) == Rational(1));
    REQUIRE(pa.coefficient(g_sub(G, a, b)) == Rational(1));
    REQUIRE(pa.coefficient(a) == Rational(-2));
    REQUIRE(pa.coefficient(b) == Rational(-2));

    const Divisor sy = Generator::torsion_symbol(G, t).expand(G);
    REQUIRE(sy.terms().size() == 1);
    REQUIRE(sy.coefficient(t) == Rational(1));
}

TEST_CASE("generator tags round trip", "[divisor]")
{
    for (const GeneratorKind k :
         {GeneratorKind::TorsionSymbol, GeneratorKind::TorsionTranslate,
          GeneratorKind::Distribution, GeneratorKind::Parallelogram}) {
        REQUIRE(generator_kind_from_tag(generator_tag(k)) == k);
    }
    REQUIRE(generator_tag(GeneratorKind::TorsionSymbol) == "o");
    REQUIRE(generator_tag(GeneratorKind::Parallelogram) == "ii");
    REQUIRE_THROWS_AS(generator_kind_from_tag("iii"), std::invalid_argument);
}

TEST_CASE("decomposition round trips kernel divisors", "[divisor]")
{
    const GroupElement a = make_element(G, {BigInt(1), BigInt(0)}, {1, 0});
    const GroupElement b = make_element(G, {BigInt(0), BigInt(1)}, {0, 2});
    const GroupElement t = make_element(G, {BigInt(0), BigInt(0)}, {2, 3});

    // single torsion symbol
    Divisor s1(G);
    s1.add(t, Rational(1));
    const GeneratorCertificate c1 = decompose(s1);
    REQUIRE(c1.group == G);
    REQUIRE(c1.expand() == s1);

    // a parallelogram expansion
    const Divisor s2 = Generator::parallelogram(G, a, b).expand(G);
    REQUIRE(decompose(s2).expand() == s2);

    // a distribution expansion with larger coordinates
    const GroupElement big = make_element(G, {BigInt(5), BigInt(-7)}, {2, 1});
    const Divisor s3 = Generator::distribution(G, big, BigInt(3)).expand(G);
    REQUIRE(decompose(s3).expand() == s3);

    // a rational combination of all four families
    const Divisor s4 = Generator::parallelogram(G, big, a).expand(G).scaled(Rational(1, 2)) +
                       Generator::distribution(G, b, BigInt(2)).expand(G).scaled(Rational(-3)) +
                       Generator::torsion_translate(G, a, t).expand(G).scaled(Rational(5, 3)) +
                       Generator::torsion_symbol(G, t).expand(G);
    REQUIRE(kernel_member(s4));
    REQUIRE(decompose(s4).expand() == s4);

    // negative-leading free coordinates force the sign-normalization path
    const GroupElement na = el(G, {BigInt(-3), BigInt(1)});
    const GroupElement nb = el(G, {BigInt(1), BigInt(-2)});
    const Divisor s5 = Generator::parallelogram(G, na, nb).expand(G);
    REQUIRE(decompose(s5).expand() == s5);

    // pure torsion divisor in a rank-zero group
    Divisor s6(G0);
    s6.add(make_element(G0, {}, {1, 0}), Rational(3, 2));
    s6.add(make_element(G0, {}, {0, 3}), Rational(-2));
    s6.add(make_element(G0, {}, {2, 2}), Rational(1));
    const GeneratorCertificate c6 = decompose(s6);
    REQUIRE(c6.expand() == s6);
    for (const auto& e : c6.entries) {
        REQUIRE(e.gen.kind == GeneratorKind::TorsionSymbol);
    }

    // the empty divisor decomposes into the empty certificate
    const GeneratorCertificate c7 = decompose(Divisor(Gfree));
    REQUIRE(c7.entries.empty());
    REQUIRE(c7.expand() == Divisor(Gfree));
}

TEST_CASE("decomposition rejects non-kernel divisors", "[divisor]")
{
    Divisor s(Gfree);
    s.add(el(Gfree, {BigInt(1), BigInt(0)}), Rational(1));
    REQUIRE_THROWS_AS(decompose(s), std::domain_error);

    Divisor u(G);
    u.add(make_element(G, {BigInt(2), BigInt(1)}, {0, 0}), Rational(1));
    u.add(make_element(G, {BigInt(-2), BigInt(-1)}, {0, 0}), Rational(1));
    REQUIRE_FALSE(kernel_member(u));  // d is even: {a} + {-a} doubles the matrix
    REQUIRE_THROWS_AS(decompose(u), std::domain_error);
}
