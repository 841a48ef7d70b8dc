#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include <boost/math/constants/constants.hpp>

#include "ecover/quadrature.hpp"
#include "oracles.hpp"

using namespace ecover;

namespace {

Real pi_at(unsigned digits) {
    PrecisionScope scope(digits + 10);
    return boost::math::constants::pi<Real>();
}

} // namespace

TEST_CASE("closed-form integrals with endpoint singularities") {
    PrecisionContext ctx(40);
    Real pi = pi_at(40);

    auto beta = tanh_sinh_integrate(
        [](const Real& x) -> Real { return 1 / sqrt(x * (1 - x)); }, Real(0), Real(1), ctx);
    CHECK(abs(beta.value - pi) < tolerance(ctx, 5));
    CHECK(beta.est_error < tolerance(ctx, 5));

    auto atan4 = tanh_sinh_integrate(
        [](const Real& x) -> Real { return 4 / (1 + x * x); }, Real(0), Real(1), ctx);
    CHECK(abs(atan4.value - pi) < tolerance(ctx, 5));

    // half of the real period of y^2 = x^3 - x; closed form via Gamma(1/4)
    auto lem = tanh_sinh_integrate(
        [](const Real& x) -> Real { return 1 / sqrt(x - x * x * x); }, Real(0), Real(1), ctx);
    double g14 = std::tgamma(0.25);
    double half_period = g14 * g14 / std::sqrt(2.0 * std::acos(-1.0)) / 2.0;
    CHECK(std::abs(lem.value.convert_to<double>() - half_period) < 1e-13);
    CHECK(abs(lem.value - Real("2.62205755")) < Real("1e-8"));
}

TEST_CASE("agreement with an independent double-precision integrator") {
    PrecisionContext ctx(30);
    auto f = [](const Real& x) -> Real { return log(1 + x) / (1 + x * x); };
    auto r = tanh_sinh_integrate(f, Real(0), Real(1), ctx);
    double oracle = oracles::gk_integrate(
        [](double x) { return std::log(1 + x) / (1 + x * x); }, 0.0, 1.0);
    CHECK(std::abs(r.value.convert_to<double>() - oracle) < 1e-11);
}

TEST_CASE("linearity in the integrand") {
    PrecisionContext ctx(30);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(1.0, 10.0);
    for (int trial = 0; trial < 5; ++trial) {
        Real c(dist(rng));
        auto base = tanh_sinh_integrate(
            [](const Real& x) -> Real { return exp(-x) * sqrt(x); }, Real(0), Real(2), ctx);
        auto scaled = tanh_sinh_integrate(
            [&](const Real& x) -> Real { return c * exp(-x) * sqrt(x); }, Real(0), Real(2),
            ctx);
        CHECK(abs(scaled.value - c * base.value) < tolerance(ctx, 6));
    }
}

TEST_CASE("interval additivity on a smooth integrand") {
    PrecisionContext ctx(30);
    auto f = [](const Real& x) -> Real { return 1 / (2 + cos(x)); };
    auto whole = tanh_sinh_integrate(f, Real(0), Real(3), ctx);
    auto left = tanh_sinh_integrate(f, Real(0), Real(1), ctx);
    auto right = tanh_sinh_integrate(f, Real(1), Real(3), ctx);
    CHECK(abs(whole.value - (left.value + right.value)) < tolerance(ctx, 6));
}

TEST_CASE("est_error over-reports the true error on closed forms") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<unsigned> digit_dist(20, 60);
    int covered = 0;
    const int runs = 20;
    for (int trial = 0; trial < runs; ++trial) {
        unsigned digits = digit_dist(rng);
        PrecisionContext ctx(digits);
        Real pi = pi_at(digits);
        QuadratureResult r;
        if (trial % 2 == 0) {
            r = tanh_sinh_integrate(
                [](const Real& x) -> Real { return 1 / sqrt(x * (1 - x)); }, Real(0), Real(1),
                ctx);
        } else {
            r = tanh_sinh_integrate(
                [](const Real& x) -> Real { return 4 / (1 + x * x); }, Real(0), Real(1), ctx);
        }
        if (abs(r.value - pi) <= r.est_error) ++covered;
    }
    CHECK(covered * 100 >= 95 * runs);
}

TEST_CASE("precision scaling: more digits, no worse accuracy") {
    Real pi = pi_at(80);
    Real err_low, err_high;
    int levels_low, levels_high;
    {
        PrecisionContext ctx(20);
        auto r = tanh_sinh_integrate(
            [](const Real& x) -> Real { return 4 / (1 + x * x); }, Real(0), Real(1), ctx);
        err_low = abs(r.value - pi);
        levels_low = r.levels_used;
    }
    {
        PrecisionContext ctx(70);
        auto r = tanh_sinh_integrate(
            [](const Real& x) -> Real { return 4 / (1 + x * x); }, Real(0), Real(1), ctx);
        err_high = abs(r.value - pi);
        levels_high = r.levels_used;
    }
    CHECK(err_high < err_low);
    CHECK(levels_high >= levels_low);
}

TEST_CASE("domain and evaluation errors") {
    PrecisionContext ctx(20);
    auto f = [](const Real& x) -> Real { return x; };
    CHECK_THROWS_AS(tanh_sinh_integrate(f, Real(1), Real(1), ctx), DomainError);
    CHECK_THROWS_AS(tanh_sinh_integrate(f, Real(2), Real(1), ctx), DomainError);
    CHECK_THROWS_AS(tanh_sinh_integrate([](const Real& x) -> Real { return sqrt(x - 10); },
                                        Real(0), Real(1), ctx),
                    EvaluationError);
}

TEST_CASE("signed-sqrt integration: sign pattern and branch") {
    PrecisionContext ctx(30);
    auto q5 = [](const Real& x) -> Real {
        return x * (x - 1) * (x - 2) * (x - 3) * (x - 4);
    };

    // q > 0 on (0,1): real result
    auto r01 = integrate_signed_sqrt(q5, Real(0), Real(1), ctx);
    CHECK(r01.value.im == 0);
    CHECK(r01.value.re > 0);

    // q < 0 on (1,2): purely imaginary result
    auto r12 = integrate_signed_sqrt(q5, Real(1), Real(2), ctx);
    CHECK(r12.value.re == 0);
    CHECK(r12.value.im > 0);

    // full real period of y^2 = x^3 - x over (0,1)
    auto lem = integrate_signed_sqrt([](const Real& x) -> Real { return x - x * x * x; },
                                     Real(0), Real(1), ctx);
    CHECK(abs(lem.value.re - Real("5.2441151")) < Real("1e-7"));

    // sign change inside the interval is rejected
    CHECK_THROWS_AS(integrate_signed_sqrt(q5, Real(0), Real(2), ctx), SignError);
    CHECK_THROWS_AS(integrate_signed_sqrt(q5, Real(1), Real(1), ctx), DomainError);
}
