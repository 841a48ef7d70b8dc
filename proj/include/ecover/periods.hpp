#ifndef ECOVER_PERIODS_HPP
#define ECOVER_PERIODS_HPP

#include <array>

#include "ecover/quadrature.hpp"

namespace ecover {

/// The five finite Weierstrass x-coordinates of y^2 = q(x), q quintic.
/// The sixth Weierstrass point sits at infinity.
struct BranchPoints {
    std::array<Real, 5> r;

    explicit BranchPoints(std::array<Real, 5> roots) : r(std::move(roots)) {
        for (int j = 0; j + 1 < 5; ++j)
            if (!(r[j] < r[j + 1]))
                throw DomainError("BranchPoints: roots must be strictly increasing");
    }

    /// r1+r5 = r2+r4 = 2 r3, the symmetry that forces I4 = i I1, I2 = i I3.
    bool symmetric_form(const Real& tol) const {
        Real s = 2 * r[2];
        return abs(r[0] + r[4] - s) <= tol && abs(r[1] + r[3] - s) <= tol;
    }

    /// Monic quintic with these roots, evaluated in factored form so the
    /// value keeps full relative accuracy next to a branch point.
    Real quintic(const Real& x) const {
        Real v = x - r[0];
        for (int j = 1; j < 5; ++j) v *= x - r[j];
        return v;
    }
};

/// Branch points {0, 1, s, 2s-1, 2s} of the one-parameter family; needs
/// s > 1 so the roots are distinct and ordered.
inline BranchPoints branch_points_for(const Real& s) {
    if (!(s > 1)) throw DomainError("branch_points_for: requires s > 1");
    return BranchPoints({Real(0), Real(1), s, 2 * s - 1, 2 * s});
}

/// The four consecutive-gap periods I1..I4 of dx/y together with the
/// multipliers m = (1, 3i, 3, i) they must realize (up to one complex K)
/// on the target curve.
struct PeriodVector {
    std::array<Complex, 4> I;
    static std::array<Complex, 4> multipliers() {
        return {Complex(Real(1)), Complex(Real(0), Real(3)), Complex(Real(3)),
                Complex(Real(0), Real(1))};
    }
};

/// pi1(s) = integral over (0,1) of dx/sqrt(q_s(x)), as a positive real.
inline Real pi1(const Real& s, const PrecisionContext& ctx) {
    BranchPoints bp = branch_points_for(s);
    PrecisionScope scope(ctx);
    auto r = integrate_signed_sqrt([&](const Real& x) { return bp.quintic(x); },
                                   bp.r[0], bp.r[1], ctx);
    return abs(r.value) / 2;
}

/// pi3(s) = integral over (s, 2s-1), as a positive real.
inline Real pi3(const Real& s, const PrecisionContext& ctx) {
    BranchPoints bp = branch_points_for(s);
    PrecisionScope scope(ctx);
    auto r = integrate_signed_sqrt([&](const Real& x) { return bp.quintic(x); },
                                   bp.r[2], bp.r[3], ctx);
    return abs(r.value) / 2;
}

/// rho(s) = pi3(s)/pi1(s), the ratio driven to an integer by the solver.
inline Real rho(const Real& s, const PrecisionContext& ctx) {
    return pi3(s, ctx) / pi1(s, ctx);
}

/// I_j = 2 * integral over (r_j, r_{j+1}) of dx/sqrt(q), j = 1..4, with the
/// principal branch i*sqrt|q| on the intervals where q < 0.
inline PeriodVector period_vector(const BranchPoints& bp, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    PeriodVector pv;
    for (int j = 0; j < 4; ++j) {
        auto r = integrate_signed_sqrt([&](const Real& x) { return bp.quintic(x); },
                                       bp.r[j], bp.r[j + 1], ctx);
        pv.I[j] = r.value;
    }
    return pv;
}

/// The real period of y^2 = x^3 - x: 2 * integral over (0,1) of
/// dx/sqrt(x - x^3). Its lattice is the square lattice omega*Z[i].
inline Real elliptic_real_period(const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    auto r = integrate_signed_sqrt([](const Real& x) -> Real { return x - x * x * x; },
                                   Real(0), Real(1), ctx);
    return r.value.re;
}

} // namespace ecover

#endif
