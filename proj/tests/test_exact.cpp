#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "ecover/cover.hpp"

using namespace ecover;

namespace {

const Int d5(5);

FieldElement fe(long p, long q) { return FieldElement(Rat(p), Rat(q), d5); }

FieldElement random_fe(std::mt19937& rng) {
    std::uniform_int_distribution<int> numer(-9, 9);
    std::uniform_int_distribution<int> denom(1, 4);
    return FieldElement(Rat(numer(rng), denom(rng)), Rat(numer(rng), denom(rng)), d5);
}

} // namespace

TEST_CASE("golden ratio identities") {
    FieldElement eps(Rat(1, 2), Rat(1, 2), d5);
    CHECK(eps * eps == eps + fe(1, 0));
    CHECK(eps.pow(6) == fe(9, 4));
    CHECK(fe(9, 4) * fe(9, -4) == fe(1, 0));
    CHECK(field_arith(eps, eps, '*') == eps + fe(1, 0));
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 500; ++trial) {
        FieldElement a = random_fe(rng), b = random_fe(rng), c = random_fe(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == fe(0, 0));
        if (!a.is_zero()) CHECK(a * a.inverse() == fe(1, 0));
        CHECK((a * b).norm() == a.norm() * b.norm());
    }
}

TEST_CASE("field error paths") {
    CHECK_THROWS_AS(fe(0, 0).inverse(), DivisionByZero);
    FieldElement other(Rat(1), Rat(1), Int(7));
    CHECK_THROWS_AS(fe(1, 0) + other, FieldMismatch);
    CHECK_THROWS_AS(field_arith(fe(1, 0), fe(1, 0), '?'), DomainError);
}

TEST_CASE("square roots in the field") {
    auto s = field_sqrt(fe(9, 4));  // (2 + sqrt(5))^2 = 9 + 4*sqrt(5)
    REQUIRE(s.has_value());
    CHECK(*s * *s == fe(9, 4));
    CHECK_FALSE(field_sqrt(fe(2, 0)).has_value());
    CHECK(field_sqrt(fe(5, 0)) == FieldElement::sqrt_d(d5));
    CHECK(field_sqrt(fe(0, 0)) == fe(0, 0));
}

TEST_CASE("polynomial basics") {
    Poly x = Poly::x(d5);
    Poly x5 = x * x * x * x * x;
    Poly expect = Poly::constant(fe(5, 0)) * (x * x * x * x);
    CHECK(x5.derivative() == expect);

    Poly a = x * x - Poly::constant(fe(1, 0));
    Poly b = (x - Poly::constant(fe(1, 0))) * (x - Poly::constant(fe(1, 0)));
    CHECK(poly_gcd(a, b) == x - Poly::constant(fe(1, 0)));

    auto [q, r] = Poly::divmod(x5, a);
    CHECK(q * a + r == x5);
    CHECK(r.degree() < a.degree());
    CHECK_THROWS_AS(Poly::divmod(x5, Poly(d5)), DivisionByZero);
}

TEST_CASE("the kappa-family quintic expands with x^4 coefficient -5 kappa") {
    MapCoefficients mc = theorem1_map();
    Poly q = mc.quintic();
    CHECK(q.degree() == 5);
    CHECK(q.is_monic());
    // roots 0 + 1 + kappa + (2 kappa - 1) + 2 kappa sum to 5 kappa
    CHECK(q.coeff(4) == -(fe(5, 0) * mc.kappa));
    CHECK(q.coeff(4) == fe(-405, -180));
    CHECK(q.coeff(0).is_zero());  // x divides q
}

TEST_CASE("cover identity on the certified coefficients") {
    MapCoefficients mc = theorem1_map();
    RatFunc g = mc.g(), h1 = mc.h1();
    CHECK(verify_cover_identity(g, h1, mc.quintic(), mc.twist()));

    auto pc = pullback_constant(g, h1);
    REQUIRE(pc.has_value());
    CHECK_FALSE(pc->is_zero());
    CHECK(*pc == fe(-1140, -510));
}

TEST_CASE("identity cover of the target curve by itself") {
    Poly x = Poly::x(d5);
    Poly q = x * x * x - x;
    RatFunc g = RatFunc::x(d5);
    RatFunc one = RatFunc::constant(fe(1, 0));
    CHECK(verify_cover_identity(g, one, q, fe(1, 0)));
    CHECK(pullback_constant(g, one) == fe(1, 0));
    CHECK_FALSE(pullback_constant(RatFunc(x * x), one).has_value());
}

TEST_CASE("single-coefficient perturbations break the identity") {
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> slot(0, 13);
    std::uniform_int_distribution<int> bump(1, 5);
    for (int trial = 0; trial < 10; ++trial) {
        MapCoefficients mc = theorem1_map();
        int s = slot(rng);
        FieldElement delta = fe(bump(rng), 0);
        if (s < 5) mc.a[s] += delta;
        else if (s < 8) mc.b[s - 5] += delta;
        else mc.c[s - 8] += delta;
        CHECK_FALSE(verify_cover_identity(mc.g(), mc.h1(), mc.quintic(), mc.twist()));
    }
}

TEST_CASE("exact square roots of rational functions") {
    Poly x = Poly::x(d5);
    RatFunc F(x * x);
    CHECK(exact_sqrt_ratfunc(F) == RatFunc(x));

    Poly num = x * x + Poly::constant(fe(2, 0)) * x + Poly::constant(fe(1, 0));
    RatFunc G(num, x * x);
    auto s = exact_sqrt_ratfunc(G);
    REQUIRE(s.has_value());
    CHECK(*s == RatFunc(x + Poly::constant(fe(1, 0)), x));

    RatFunc nonsq(x * x * x);
    CHECK_FALSE(exact_sqrt_ratfunc(nonsq).has_value());
    CHECK_THROWS_AS(exact_sqrt_ratfunc(RatFunc(Poly(d5), x)), DomainError);
}

TEST_CASE("square roots of random squares recover the input up to sign") {
    std::mt19937 rng(909);
    std::uniform_int_distribution<int> deg(0, 3);
    int done = 0;
    while (done < 100) {
        int dn = deg(rng), dd = deg(rng) % 3;
        std::vector<FieldElement> nc, dc;
        for (int k = 0; k <= dn; ++k) nc.push_back(random_fe(rng));
        for (int k = 0; k <= dd; ++k) dc.push_back(random_fe(rng));
        Poly pn(nc, d5), pd(dc, d5);
        if (pn.is_zero() || pd.is_zero()) continue;
        RatFunc S(pn, pd);
        if (S.is_zero()) continue;
        auto root = exact_sqrt_ratfunc(S * S);
        REQUIRE(root.has_value());
        CHECK((*root == S || *root == -S));
        ++done;
    }
}

TEST_CASE("coefficient homogeneity under the fundamental unit") {
    MapCoefficients mc = theorem1_map();
    CHECK(check_homogeneity(mc.g()));

    Poly x = Poly::x(d5);
    RatFunc plain(x, x - Poly::constant(fe(1, 0)));
    CHECK(check_homogeneity(plain));

    RatFunc mixed(x + Poly::constant(fe(1, 1)));
    CHECK_FALSE(check_homogeneity(mixed));
}

TEST_CASE("serialization round-trips and matches the golden format") {
    MapCoefficients mc = theorem1_map();
    std::string text = serialize_map(mc);
    std::istringstream in(text);
    MapCoefficients back = parse_map(in);
    CHECK(serialize_map(back) == text);
    CHECK(back.kappa == mc.kappa);
    CHECK(back.d_coeff == mc.d_coeff);
    for (int i = 0; i < 5; ++i) CHECK(back.a[i] == mc.a[i]);
    for (int i = 0; i < 3; ++i) CHECK(back.b[i] == mc.b[i]);
    for (int i = 0; i < 6; ++i) CHECK(back.c[i] == mc.c[i]);

    CHECK(parse_field_element("-405 + -180*sqrt(5)") == fe(-405, -180));
    CHECK_THROWS_AS(parse_field_element("garbage"), DomainError);
    std::istringstream bad("kappa = nonsense\n");
    CHECK_THROWS_AS(parse_map(bad), DomainError);
}
