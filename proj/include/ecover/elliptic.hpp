#ifndef ECOVER_ELLIPTIC_HPP
#define ECOVER_ELLIPTIC_HPP

#include <vector>

#include "ecover/periods.hpp"

namespace ecover {

/// The square period lattice omega*Z[i] of y^2 = x^3 - x.
struct SquareLattice {
    Real omega;

    explicit SquareLattice(Real w) : omega(std::move(w)) {
        if (!(omega > 0)) throw DomainError("SquareLattice: omega must be positive");
    }
};

struct EllipticPoint {
    Complex X;
    Complex Y;
    bool at_infinity = false;
};

/// Representative of z modulo the lattice with real and imaginary parts
/// in [0, omega).
inline Complex reduce_mod_lattice(const Complex& z, const SquareLattice& L) {
    Real re = z.re - L.omega * floor(z.re / L.omega);
    Real im = z.im - L.omega * floor(z.im / L.omega);
    if (re >= L.omega) re -= L.omega;  // guard against roundoff at the seam
    if (im >= L.omega) im -= L.omega;
    return {re, im};
}

namespace detail {

// Laurent coefficients of wp around 0 for g2 = 4, g3 = 0:
// wp(z) = z^-2 + sum_{k>=2} c_k z^(2k-2), c_2 = g2/20, c_3 = g3/28,
// c_k = 3/((2k+1)(k-3)) * sum_{m=2}^{k-2} c_m c_{k-m}.
inline std::vector<Real> wp_series_coeffs(int count) {
    std::vector<Real> c(count + 1, Real(0));
    if (count >= 2) c[2] = Real(1) / 5;  // g2/20 with g2 = 4
    if (count >= 3) c[3] = 0;            // g3/28 with g3 = 0
    for (int k = 4; k <= count; ++k) {
        Real s = 0;
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3 * s / ((2 * k + 1) * (k - 3));
    }
    return c;
}

// (wp, wp') from the Laurent series; valid well inside the lattice cell.
inline std::pair<Complex, Complex> wp_series(const Complex& z, const std::vector<Real>& c) {
    Complex z2 = z * z;
    Complex inv_z2 = Complex(Real(1)) / z2;
    Complex wp = inv_z2;
    Complex wp_d = Complex(Real(-2)) / (z2 * z);
    Complex zpow = Complex(Real(1));  // z^(2k-4) term tracker
    for (std::size_t k = 2; k < c.size(); ++k) {
        // term: c_k z^(2k-2); derivative: (2k-2) c_k z^(2k-3)
        Complex zk = zpow * z2;  // z^(2k-2)
        wp += c[k] * zk;
        wp_d += (Real(2 * (long)k - 2) * c[k]) * (zpow * z);
        zpow = zk;
    }
    return {wp, wp_d};
}

} // namespace detail

/// Weierstrass pair (P(z), P'(z)) attached to the lattice omega*Z[i],
/// normalized so that P'^2 = 4 P^3 - 4 P (g2 = 4, g3 = 0), P has poles
/// exactly on the lattice, and P(omega/2) = 1.
///
/// The classical wp with those invariants lives on the half lattice
/// (omega/2)*Z[i]; the pair above is that wp evaluated at z/2, which is
/// what makes (P, P'/2) invert the integral of dX/Y on Y^2 = X^3 - X
/// with period lattice omega*Z[i].
///
/// Strategy: reduce to the cell centered at 0, halve the argument until
/// the Laurent series converges fast, then walk back up with the curve's
/// doubling formula.
inline std::pair<Complex, Complex> weierstrass_p(const Complex& z, const SquareLattice& L,
                                                 const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    Real w = L.omega / 2;  // fundamental period of the classical wp
    Complex u = z / Real(2);

    // center: parts in [-w/2, w/2)
    Complex zc = reduce_mod_lattice(u, SquareLattice(w));
    if (zc.re >= w / 2) zc.re -= w;
    if (zc.im >= w / 2) zc.im -= w;
    if (abs(zc) < tolerance(ctx) * w)
        throw PoleError("weierstrass_p: z is on (or too near) the lattice");

    int halvings = 0;
    Complex zs = zc;
    Real small = Real(35) * w / 100;
    while (abs(zs) > small && halvings < 4) {
        zs = zs / Real(2);
        ++halvings;
    }

    // |zs| <= 0.354*omega; terms shrink at least ~8x per k. Budget with
    // a margin on top of the working digits.
    int terms = static_cast<int>(ctx.working_digits() * 1.2) + 20;
    auto coeffs = detail::wp_series_coeffs(terms);
    // series is for the unit-normalized lattice Z[i] scaled by omega:
    // wp_{omega Z[i]}(z) has coefficients tied to g2=4, g3=0 directly,
    // so no rescaling is needed here.
    auto [x, y] = detail::wp_series(zs, coeffs);

    for (int h = 0; h < halvings; ++h) {
        // doubling on y^2 = 4x^3 - 4x: slope m = (12x^2 - 4)/(2y)
        Complex m = (Real(12) * (x * x) - Complex(Real(4))) / (Real(2) * y);
        Complex x2 = m * m / Real(4) - x - x;
        Complex y2 = -(y + m * (x2 - x));
        x = x2;
        y = y2;
    }
    return {x, y};
}

/// z -> (wp(z), wp'(z)/2), which satisfies Y^2 = X^3 - X. Lattice points
/// map to the point at infinity.
inline EllipticPoint uniformize(const Complex& z, const SquareLattice& L,
                                const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    Complex zc = reduce_mod_lattice(z, L);
    if (zc.re >= L.omega / 2) zc.re -= L.omega;
    if (zc.im >= L.omega / 2) zc.im -= L.omega;
    if (abs(zc) < tolerance(ctx) * L.omega) return {Complex(), Complex(), true};
    auto [wp, wp_d] = weierstrass_p(z, L, ctx);
    return {wp, wp_d / Real(2), false};
}

/// Abel map of the genus-2 curve y^2 = q(x) (q the kappa-family quintic):
/// branch * integral of dx/sqrt(q) from -infinity to x_target along the
/// real axis, one segment per branch-point gap, with the fixed principal
/// branch sqrt(q) = i sqrt|q| where q < 0. Results are meaningful modulo
/// the curve's period lattice.
inline Complex abel_map_C(const Real& x_target, int branch, const Real& kappa,
                          const PrecisionContext& ctx) {
    if (branch != 1 && branch != -1)
        throw DomainError("abel_map_C: branch must be +1 or -1");
    BranchPoints bp = branch_points_for(kappa);
    PrecisionScope scope(ctx);

    auto q = [&](const Real& x) { return bp.quintic(x); };
    auto segment = [&](const Real& a, const Real& b) -> Complex {
        Real mid = (a + b) / 2;
        bool negative = q(mid) < 0;
        auto r = tanh_sinh_integrate(
            [&](const Real& x) -> Real { return 1 / sqrt(abs(q(x))); }, a, b, ctx);
        return negative ? Complex(Real(0), r.value) : Complex(r.value);
    };

    Complex total;

    // Tail (-inf, min(r1, x_target)]: substitute x = -1/w on (-inf, -1),
    // where q(-1/w) = -w^-5 (1+w)(1+k w)(1+(2k-1) w)(1+2k w); the
    // transformed integrand w^(1/2) / sqrt(product) is tanh-sinh friendly.
    Real cut = -1;
    if (x_target <= cut) cut = x_target - 1;
    {
        auto tail = tanh_sinh_integrate(
            [&](const Real& w) -> Real {
                Real prod = (1 + w) * (1 + kappa * w) * (1 + (2 * kappa - 1) * w) *
                            (1 + 2 * kappa * w);
                return sqrt(w) / sqrt(prod);
            },
            Real(0), -1 / cut, ctx);
        total += Complex(Real(0), tail.value);  // q < 0 left of r1
    }
    if (x_target <= cut) return branch == 1 ? total : -total;
    if (cut < bp.r[0] && x_target > cut) {
        Real upper = x_target < bp.r[0] ? x_target : bp.r[0];
        if (upper > cut) total += segment(cut, upper);
    }
    if (x_target <= bp.r[0]) return branch == 1 ? total : -total;

    for (int j = 0; j < 5; ++j) {
        Real lo = bp.r[j];
        Real hi = (j < 4) ? bp.r[j + 1] : x_target;
        if (j < 4 && x_target < hi) hi = x_target;
        if (hi > lo) total += segment(lo, hi);
        if (j < 4 && x_target <= bp.r[j + 1]) break;
    }
    return branch == 1 ? total : -total;
}

/// K = I1/omega, the homothety with Lambda_C = K * (omega Z[i]).
inline Complex homothety_constant(const PeriodVector& pv, const SquareLattice& L) {
    return pv.I[0] / L.omega;
}

} // namespace ecover

#endif
