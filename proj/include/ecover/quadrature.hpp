#ifndef ECOVER_QUADRATURE_HPP
#define ECOVER_QUADRATURE_HPP

#include <functional>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>

#include "ecover/precision.hpp"

namespace ecover {

struct QuadratureResult {
    Real value;
    Real est_error;  // |value - previous-level value|
    int levels_used = 1;
};

struct ComplexQuadratureResult {
    Complex value;
    Real est_error;
    int levels_used = 1;
};

namespace detail {

// One tanh-sinh abscissa/weight pair. The abscissa is produced at boosted
// precision and expressed as an offset from the nearer endpoint, so that
// b - x stays meaningful even when tanh saturates; integrands with an
// inverse-square-root blowup at an endpoint then lose no accuracy.
struct TanhSinhNode {
    Real x;
    Real weight;
    bool underflowed = false;  // offset no longer representable; skip
};

inline TanhSinhNode tanh_sinh_node(const Real& t, const Real& a, const Real& b,
                                   const Real& half_pi, unsigned node_digits) {
    PrecisionScope scope(node_digits);
    Real w = (b - a) / 2;
    Real u = half_pi * sinh(t);
    Real au = abs(u);
    Real e2u = exp(2 * au);
    Real offset = w * 2 / (e2u + 1);  // w * (1 - tanh|u|)
    TanhSinhNode node;
    node.x = (t >= 0) ? Real(b - offset) : Real(a + offset);
    if (offset == 0 || node.x == a || node.x == b) {
        node.underflowed = true;  // abscissa rounds onto the endpoint
        return node;
    }
    Real ch = cosh(u);
    node.weight = w * half_pi * cosh(t) / (ch * ch);
    return node;
}

} // namespace detail

/// Tanh-sinh (double-exponential) quadrature of f over (a,b).
///
/// Nodes are x = (a+b)/2 + (b-a)/2 * tanh((pi/2) sinh t) on a uniform
/// t-grid whose step h is halved per level; endpoint singularities of
/// order < 1 are admissible because f is never evaluated at a or b.
/// Converged when two consecutive levels agree to the context tolerance.
template <class F>
QuadratureResult tanh_sinh_integrate(F&& f, const Real& a, const Real& b,
                                     const PrecisionContext& ctx,
                                     int max_levels = 12) {
    if (!(a < b)) throw DomainError("tanh_sinh_integrate: requires a < b");
    PrecisionScope scope(ctx);

    const unsigned node_digits = 2 * ctx.working_digits() + 20;
    Real half_pi;
    {
        // pi/2 enters the abscissa map; it has to carry node precision or
        // the node/weight pairing degrades near the endpoints.
        PrecisionScope node_scope(node_digits);
        half_pi = boost::math::constants::half_pi<Real>();
    }
    const Real term_cutoff = pow10(-static_cast<long>(ctx.working_digits()) - 3);
    const Real level_tol = tolerance(ctx, 2);

    auto eval = [&](const Real& t) -> Real {
        auto node = detail::tanh_sinh_node(t, a, b, half_pi, node_digits);
        if (node.underflowed) return Real(0);
        Real v = f(node.x);
        if (!boost::math::isfinite(v))
            throw EvaluationError("tanh_sinh_integrate: integrand non-finite at x=" +
                                  node.x.str(20));
        return v * node.weight;
    };

    Real sum = eval(Real(0));
    Real h = 1;
    Real prev = 0;
    Real value = 0;
    Real est_error = 0;

    for (int level = 0; level <= max_levels; ++level) {
        // Level 0 walks every multiple of h; later levels add the odd ones.
        long step = (level == 0) ? 1 : 2;
        long k = (level == 0) ? 1 : 1;
        int small_streak = 0;
        Real scale = abs(sum) + 1;
        while (true) {
            Real t = k * h;
            Real term = eval(t) + eval(-t);
            sum += term;
            if (abs(term) <= term_cutoff * scale) {
                if (++small_streak >= 2) break;
            } else {
                small_streak = 0;
                scale = abs(sum) + 1;
            }
            k += step;
            if (k > 100000)
                throw NoConvergence("tanh_sinh_integrate: node budget exhausted");
        }

        value = h * sum;
        if (level > 0) {
            est_error = abs(value - prev);
            if (est_error <= level_tol * (abs(value) + 1)) {
                // the level difference can dip below the roundoff accumulated
                // over the node sum, so floor the estimate at that noise level
                Real floor = pow10(4 - static_cast<long>(ctx.working_digits())) *
                             (abs(value) + 1);
                if (est_error < floor) est_error = floor;
                return {value, est_error, level + 1};
            }
        }
        prev = value;
        h /= 2;
    }
    throw NoConvergence("tanh_sinh_integrate: no agreement after " +
                        std::to_string(max_levels) + " levels");
}

/// 2 * integral of dx/sqrt(q(x)) over (a,b), where q keeps one sign there.
/// If q < 0 the principal branch sqrt(q) = i sqrt|q| makes the result
/// purely imaginary.
template <class Q>
ComplexQuadratureResult integrate_signed_sqrt(Q&& q, const Real& a, const Real& b,
                                              const PrecisionContext& ctx,
                                              int max_levels = 12) {
    if (!(a < b)) throw DomainError("integrate_signed_sqrt: requires a < b");
    PrecisionScope scope(ctx);

    Real mid = (a + b) / 2;
    Real qm = q(mid);
    if (qm == 0) throw SignError("integrate_signed_sqrt: q vanishes inside (a,b)");
    bool negative = qm < 0;
    for (int j = 1; j <= 9; ++j) {
        Real x = a + (b - a) * j / 10;
        Real v = q(x);
        if (v == 0 || (v < 0) != negative)
            throw SignError("integrate_signed_sqrt: q changes sign inside (a,b)");
    }

    auto integrand = [&](const Real& x) -> Real { return 1 / sqrt(abs(q(x))); };
    QuadratureResult r = tanh_sinh_integrate(integrand, a, b, ctx, max_levels);
    Real v = 2 * r.value;
    Complex value = negative ? Complex(Real(0), v) : Complex(v);
    return {value, 2 * r.est_error, r.levels_used};
}

} // namespace ecover

#endif
