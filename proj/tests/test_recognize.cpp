#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ecover/recognize.hpp"
#include "oracles.hpp"

using namespace ecover;

namespace {

Real real_of(const Rat& r, unsigned digits) {
    PrecisionScope scope(digits);
    return Real(num(r).str()) / Real(den(r).str());
}

Real surd_value(const Rat& p, const Rat& q, const Int& d, unsigned digits) {
    PrecisionScope scope(digits);
    return real_of(p, digits) + real_of(q, digits) * sqrt(Real(d.str()));
}

// Determinant of a small integer matrix by cofactor expansion; enough to
// check that lattice reduction is volume-preserving.
Int det(const std::vector<std::vector<Int>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Int d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Int>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Int> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Int term = m[0][j] * det(minor);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

Int norm2(const std::vector<Int>& v) {
    Int s = 0;
    for (const Int& x : v) s += x * x;
    return s;
}

} // namespace

TEST_CASE("continued fraction of the truncated 81/43 decimal") {
    Real r;
    {
        // the decimal itself is the data; parse it exactly
        PrecisionScope scope(30u);
        r = Real("1.88372093");
    }
    auto cf = cf_expand(r, 7);
    REQUIRE(cf.terms.size() == 7);
    CHECK(cf.terms == std::vector<Int>{1, 1, 7, 1, 1, 2, 2325581});

    auto rat = detect_rational(cf);
    REQUIRE(rat.has_value());
    CHECK(*rat == Rat(81, 43));
}

TEST_CASE("convergents satisfy the standard recurrence") {
    auto cf = cf_expand(surd_value(Rat(0), Rat(1), Int(2), 40), 12);
    // sqrt(2) = [1; 2, 2, 2, ...]; convergents 1, 3/2, 7/5, 17/12, 41/29
    CHECK(cf.convergent(0) == Rat(1));
    CHECK(cf.convergent(1) == Rat(3, 2));
    CHECK(cf.convergent(2) == Rat(7, 5));
    CHECK(cf.convergent(3) == Rat(17, 12));
    CHECK(cf.convergent(4) == Rat(41, 29));
}

TEST_CASE("periodic expansion of the 45 + 6*sqrt(11) decimal") {
    Real r;
    {
        // 45 + 6*sqrt(11) rounded to 15 significant digits
        PrecisionScope scope(30u);
        r = Real("64.8997487421324");
    }
    auto cf = cf_expand(r, 13);
    REQUIRE(cf.terms.size() == 13);
    std::vector<Int> expect{64, 1, 8, 1, 38, 1, 8, 1, 38, 1, 8, 1, 42};
    CHECK(cf.terms == expect);

    // the corrupt tail term 42 (truly 38) is discounted by design
    auto surd = detect_quadratic(cf);
    REQUIRE(surd.has_value());
    CHECK(surd->p == Rat(45));
    CHECK(surd->q == Rat(6));
    CHECK(surd->d == Int(11));

    // no giant term: rational detection declines
    auto short_cf = cf_expand(r, 7);
    CHECK_FALSE(detect_rational(short_cf).has_value());
}

TEST_CASE("exact rational round-trips through the giant-term detector") {
    Real third = real_of(Rat(1, 3), 30);
    auto cf = cf_expand(third, 40);
    auto rat = detect_rational(cf);
    if (!rat) {
        // exact termination instead of a giant term: take the last convergent
        rat = cf.convergent(cf.terms.size() - 1);
    }
    REQUIRE(rat.has_value());
    CHECK(*rat == Rat(1, 3));
}

TEST_CASE("kappa's expansion is [161; 2, 160 repeating]") {
    Real kappa = surd_value(Rat(81), Rat(36), Int(5), 80);
    auto cf = cf_expand(kappa, 30);
    REQUIRE(cf.terms.size() >= 9);
    CHECK(cf.terms[0] == 161);
    for (std::size_t i = 1; i + 1 < 9; i += 2) {
        CHECK(cf.terms[i] == 2);
        CHECK(cf.terms[i + 1] == 160);
    }
    auto surd = detect_quadratic(cf);
    REQUIRE(surd.has_value());
    CHECK(*surd == QuadraticSurd{Rat(81), Rat(36), Int(5)});
}

TEST_CASE("sqrt(43): period 10 needs enough digits to surface") {
    {
        Real r;
        {
            PrecisionScope scope(50);
            r = sqrt(Real(43));
        }
        auto cf = cf_expand(r, 40);
        auto surd = detect_quadratic(cf);
        REQUIRE(surd.has_value());
        CHECK(*surd == QuadraticSurd{Rat(0), Rat(1), Int(43)});
    }
    {
        Real r;
        {
            PrecisionScope scope(12);
            r = sqrt(Real(43));
        }
        auto cf = cf_expand(r, 40);
        CHECK(cf.precision_exhausted);
        bool detected = false;
        if (cf.terms.size() >= 8) detected = detect_quadratic(cf).has_value();
        CHECK_FALSE(detected);
    }
}

TEST_CASE("random rational round-trips") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> coef(1, 10000);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
        long a = coef(rng) * (sign(rng) ? 1 : -1);
        long b = coef(rng);
        Rat target(a, b);
        auto cf = cf_expand(real_of(target, 30), 60);
        bool found = false;
        auto rat = detect_rational(cf);
        if (rat && *rat == target) found = true;
        for (std::size_t k = 0; !found && k < cf.terms.size(); ++k)
            if (cf.convergent(k) == target) found = true;
        CHECK(found);
    }
}

TEST_CASE("random surd round-trips at 50 digits") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> pnum(-6, 6), qnum(1, 4), denom(1, 2), dpick(0, 4);
    const Int ds[5] = {2, 3, 5, 7, 11};
    int done = 0;
    while (done < 200) {
        Rat p(pnum(rng), denom(rng));
        Rat q(qnum(rng), denom(rng));
        Int d = ds[dpick(rng)];
        auto cf = cf_expand(surd_value(p, q, d, 50), 40);
        if (cf.terms.size() < 8) continue;
        auto surd = detect_quadratic(cf);
        REQUIRE(surd.has_value());
        CHECK(surd->p == p);
        CHECK(surd->q == q);
        CHECK(surd->d == d);
        ++done;
    }
}

TEST_CASE("lattice reduction basics") {
    std::vector<std::vector<Int>> id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(lll_reduce(id3) == id3);

    Int k(1000000);
    std::vector<std::vector<Int>> tall = {{1, 0, 0}, {0, 1, 0}, {k, k, 1}};
    auto reduced = lll_reduce(tall);
    Int in_max = 0, out_max = 0;
    for (const auto& row : tall) in_max = std::max(in_max, norm2(row));
    for (const auto& row : reduced) out_max = std::max(out_max, norm2(row));
    CHECK(out_max <= in_max);
    CHECK(abs(det(reduced)) == abs(det(tall)));

    CHECK_THROWS_AS(lll_reduce(id3, Rat(1, 4)), DomainError);
    CHECK_THROWS_AS(lll_reduce(id3, Rat(1)), DomainError);
    std::vector<std::vector<Int>> ragged = {{1, 0}, {1, 0, 0}};
    CHECK_THROWS_AS(lll_reduce(ragged), DomainError);
    std::vector<std::vector<Int>> dependent = {{1, 2, 3}, {2, 4, 6}, {0, 0, 1}};
    CHECK_THROWS_AS(lll_reduce(dependent), RankDeficient);
}

TEST_CASE("reduced bases stay short and span the same lattice") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> entry(-50, 50);
    int done = 0;
    while (done < 25) {
        std::vector<std::vector<Int>> basis(4, std::vector<Int>(4));
        for (auto& row : basis)
            for (auto& v : row) v = entry(rng);
        Int d0 = det(basis);
        if (d0 == 0) continue;
        auto reduced = lll_reduce(basis);
        CHECK(abs(det(reduced)) == abs(d0));
        // LLL first-vector bound: |b1|^2 <= 2^(n-1) * lambda1^2
        Int lambda2 = oracles::brute_force_svp(basis);
        CHECK(norm2(reduced[0]) <= 8 * lambda2);
        ++done;
    }
}

TEST_CASE("digit budget heuristic") {
    CHECK(required_digits(2, 2) == 9);
    CHECK(required_digits(1, 1) == 4);
    CHECK(required_digits(4, 10) == 55);
    CHECK_THROWS_AS(required_digits(0, 1), DomainError);
    CHECK_THROWS_AS(required_digits(1, 0), DomainError);
}

TEST_CASE("minimal polynomials of the worked surds") {
    {
        PrecisionContext ctx(25);
        Real kappa = surd_value(Rat(81), Rat(36), Int(5), 60);
        auto poly = min_poly(kappa, 2, ctx);
        REQUIRE(poly.has_value());
        CHECK(poly->coeffs == std::vector<Int>{81, -162, 1});
    }
    {
        PrecisionContext ctx(20);
        Real r = surd_value(Rat(45), Rat(6), Int(11), 60);
        auto poly = min_poly(r, 2, ctx);
        REQUIRE(poly.has_value());
        CHECK(poly->coeffs == std::vector<Int>{1629, -90, 1});
    }
    PrecisionContext ctx(20);
    CHECK_THROWS_AS(min_poly(Real(2), 0, ctx), DomainError);
}

TEST_CASE("min_poly finds an annihilator for random integer polynomials") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coef(-20, 20);
    std::uniform_int_distribution<int> deg_pick(2, 4);
    int done = 0;
    while (done < 100) {
        int deg = deg_pick(rng);
        std::vector<Int> c(deg + 1);
        for (auto& v : c) v = coef(rng);
        if (c[deg] == 0) continue;

        // locate a real root by sign change and refine by bisection
        auto eval = [&](const Real& x) -> Real {
            Real v = 0;
            for (int k = deg; k >= 0; --k) v = v * x + Real(c[k].str());
            return v;
        };
        PrecisionScope scope(120);
        Real lo, hi;
        bool found = false;
        Real prev_x(-30), prev_v = eval(prev_x);
        for (int step = 1; step <= 240 && !found; ++step) {
            Real x = Real(-30) + Real(step) / 4;
            Real v = eval(x);
            if (v == 0) { lo = hi = x; found = true; break; }
            if ((prev_v < 0) != (v < 0)) { lo = prev_x; hi = x; found = true; }
            prev_x = x; prev_v = v;
        }
        if (!found) continue;
        for (int it = 0; it < 400 && lo < hi; ++it) {
            Real mid = (lo + hi) / 2;
            Real v = eval(mid);
            if (v == 0) { lo = hi = mid; break; }
            if ((v < 0) == (eval(lo) < 0)) lo = mid; else hi = mid;
        }
        Real root = (lo + hi) / 2;

        PrecisionContext ctx(90);
        auto poly = min_poly(root, deg, ctx);
        REQUIRE(poly.has_value());
        CHECK(poly->degree() <= deg);
        Real v = 0;
        for (int k = poly->degree(); k >= 0; --k) v = v * root + Real(poly->coeffs[k].str());
        CHECK(abs(v) < Real("1e-40"));
        ++done;
    }
}

TEST_CASE("recognition inside a fixed quadratic field") {
    PrecisionContext ctx(40);
    {
        // -45*(9 + 4*sqrt(5)) = -405 - 180*sqrt(5)
        Real r = surd_value(Rat(-405), Rat(-180), Int(5), 60);
        auto pq = recognize_in_field(r, Int(5), ctx);
        REQUIRE(pq.has_value());
        CHECK(pq->first == Rat(-405));
        CHECK(pq->second == Rat(-180));
    }
    {
        auto pq = recognize_in_field(real_of(Rat(2, 3), 60), Int(5), ctx);
        REQUIRE(pq.has_value());
        CHECK(pq->first == Rat(2, 3));
        CHECK(pq->second == Rat(0));
    }
    {
        auto pq = recognize_in_field(Real(0), Int(7), ctx);
        REQUIRE(pq.has_value());
        CHECK(pq->first == Rat(0));
        CHECK(pq->second == Rat(0));
    }
    CHECK_THROWS_AS(recognize_in_field(Real(1), Int(-5), ctx), DomainError);
}
