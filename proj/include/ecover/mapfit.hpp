#ifndef ECOVER_MAPFIT_HPP
#define ECOVER_MAPFIT_HPP

#include <sstream>
#include <vector>

#include "ecover/cover.hpp"
#include "ecover/elliptic.hpp"
#include "ecover/recognize.hpp"
#include "ecover/solver.hpp"

namespace ecover {

/// One transcendental sample of the cover: x on the genus-2 curve, X the
/// corresponding first coordinate on the target curve.
struct SamplePoint {
    Real x;
    Complex X;
};

/// Unit of Z[i] applied to the homothety K before dividing. The two
/// orientations differ by z -> iz on the target, which negates X; only
/// one of them lands on a map defined over the real field, and the sign
/// test in fit_map_numeric picks it.
enum class HomothetyUnit { One, I };

/// Composes x -> z_C (Abel map) -> z_E = z_C / (unit * K) -> X (Weierstrass
/// value). Every sample must stay away from the branch points.
inline std::vector<SamplePoint> sample_map(const std::vector<Real>& xs, const Real& kappa,
                                           const PrecisionContext& ctx,
                                           HomothetyUnit unit = HomothetyUnit::One) {
    PrecisionScope scope(ctx);
    BranchPoints bp = branch_points_for(kappa);
    SquareLattice L(elliptic_real_period(ctx));
    PeriodVector pv = period_vector(bp, ctx);
    Complex K = homothety_constant(pv, L);
    if (unit == HomothetyUnit::I) K = i_times(K);

    std::vector<SamplePoint> out;
    out.reserve(xs.size());
    for (const Real& x : xs) {
        for (const Real& r : bp.r)
            if (abs(x - r) < tolerance(ctx, 8))
                throw PoleError("sample_map: x too close to a branch point: x=" + x.str(20));
        Complex z_C = abel_map_C(x, 1, kappa, ctx);
        Complex z_E = z_C / K;
        auto [X, Xd] = weierstrass_p(z_E, L, ctx);
        out.push_back({x, X});
    }
    return out;
}

/// Numeric coefficients of g = (x^5 + a4 x^4 + ... + a0)/(b2 x^2 + b1 x + b0),
/// stored as (a4, a3, a2, a1, a0, b2, b1, b0).
struct NumericFit {
    std::array<Real, 8> coeff;
    Real held_out_residual;
};

namespace detail {

/// Solves the 8x8 complex linear system by Gaussian elimination with
/// partial pivoting.
inline std::array<Complex, 8> solve8(std::array<std::array<Complex, 9>, 8> m,
                                     const Real& pivot_floor) {
    for (int col = 0; col < 8; ++col) {
        int best = col;
        for (int r = col + 1; r < 8; ++r)
            if (abs(m[r][col]) > abs(m[best][col])) best = r;
        if (abs(m[best][col]) < pivot_floor)
            throw SingularSystem("fit_g: sample matrix is numerically singular");
        std::swap(m[col], m[best]);
        for (int r = 0; r < 8; ++r) {
            if (r == col) continue;
            Complex f = m[r][col] / m[col][col];
            for (int c = col; c < 9; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::array<Complex, 8> u;
    for (int r = 0; r < 8; ++r) u[r] = m[r][8] / m[r][r];
    return u;
}

/// Residual of the fit equation at one sample, relative to its scale.
inline Real fit_residual(const std::array<Real, 8>& c, const SamplePoint& s) {
    Real x = s.x;
    Real num = ((((x + c[0]) * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
    Complex den = s.X * Real((c[5] * x + c[6]) * x + c[7]);
    Real scale = abs(Real(x * x * x * x * x)) + abs(den) + 1;
    return abs(Complex(num) - den) / scale;
}

} // namespace detail

/// Linear fit of g's eight unknown coefficients from the first 8 samples;
/// the rest are held out and score the fit. The equation per sample is
/// x^5 + a4 x^4 + ... + a0 - X (b2 x^2 + b1 x + b0) = 0.
inline NumericFit fit_g(const std::vector<SamplePoint>& samples, const PrecisionContext& ctx) {
    if (samples.size() < 9)
        throw SingularSystem("fit_g: needs at least 9 samples (8 unknowns + 1 held out)");
    PrecisionScope scope(ctx);

    std::array<std::array<Complex, 9>, 8> m;
    for (int r = 0; r < 8; ++r) {
        const auto& s = samples[r];
        Real x = s.x;
        Real x2 = x * x, x3 = x2 * x, x4 = x3 * x;
        m[r][0] = Complex(x4);
        m[r][1] = Complex(x3);
        m[r][2] = Complex(x2);
        m[r][3] = Complex(x);
        m[r][4] = Complex(Real(1));
        m[r][5] = -(s.X * x2);
        m[r][6] = -(s.X * x);
        m[r][7] = -s.X;
        m[r][8] = Complex(-x4 * x);
    }
    auto u = detail::solve8(m, tolerance(ctx));

    // a real map is required; the imaginary parts are fit noise, judged
    // against the scale of the whole coefficient vector (a single exact
    // zero like b0 carries the same absolute noise as its neighbors)
    NumericFit fit;
    Real scale = 1;
    for (int k = 0; k < 8; ++k)
        if (abs(u[k]) > scale) scale = abs(u[k]);
    Real imag_tol = tolerance(ctx, 12) * scale;
    for (int k = 0; k < 8; ++k) {
        if (abs(u[k].im) > imag_tol)
            throw BadResidual("fit_g: coefficient " + std::to_string(k) +
                              " has a non-negligible imaginary part");
        fit.coeff[k] = u[k].re;
    }

    fit.held_out_residual = 0;
    for (std::size_t i = 8; i < samples.size(); ++i) {
        Real r = detail::fit_residual(fit.coeff, samples[i]);
        if (r > fit.held_out_residual) fit.held_out_residual = r;
    }
    if (fit.held_out_residual > tolerance(ctx, 12))
        throw BadResidual("fit_g: held-out residual " + fit.held_out_residual.str(6) +
                          " exceeds tolerance");
    return fit;
}

/// Turns the numeric coefficient vector into exact elements of Q(sqrt(5)).
/// Values below the recognition floor are taken as exact zero (the fitted
/// b0 of the target cover).
inline MapCoefficients algebraize_g(const NumericFit& fit, const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    Int d5(5);
    Real zero_floor = pow10(-static_cast<long>(ctx.decimal_digits) / 2);

    auto recognize1 = [&](const Real& v, const char* name) -> FieldElement {
        if (abs(v) < zero_floor) return FieldElement::rational(Rat(0), d5);
        auto pq = recognize_in_field(v, d5, ctx);
        if (!pq)
            throw RecognitionFailure(std::string("algebraize_g: coefficient ") + name +
                                     " not recognized in Q(sqrt(5))");
        return FieldElement(pq->first, pq->second, d5);
    };

    MapCoefficients mc;
    static const char* names[8] = {"a4", "a3", "a2", "a1", "a0", "b2", "b1", "b0"};
    for (int k = 0; k < 5; ++k) mc.a[4 - k] = recognize1(fit.coeff[k], names[k]);
    for (int k = 0; k < 3; ++k) mc.b[2 - k] = recognize1(fit.coeff[5 + k], names[5 + k]);
    return mc;
}

/// Exact square root h1 of twist * (g^3 - g)/q, brought to the normal form
/// (monic degree-6 numerator) / (d * x^2 (x - 2 kappa)^2); fills in the c
/// and d entries of mc. The general overload takes q and twist directly.
inline RatFunc derive_h_core(const RatFunc& g, const Poly& q, const FieldElement& twist) {
    RatFunc F = RatFunc(Poly::constant(twist)) * (g * g * g - g) / RatFunc(q);
    if (F.is_zero()) throw NotAPerfectSquare("derive_h: g^3 - g vanishes identically");
    auto h1 = exact_sqrt_ratfunc(F);
    if (!h1)
        throw NotAPerfectSquare("derive_h: twist*(g^3-g)/q is not a square in Q(sqrt(d))(x)");
    return *h1;
}

inline void derive_h(MapCoefficients& mc) {
    RatFunc g = mc.g();
    RatFunc h1 = derive_h_core(g, mc.quintic(), mc.twist());

    if (h1.num.degree() != 6)
        throw NotAPerfectSquare("derive_h: numerator degree " +
                                std::to_string(h1.num.degree()) + ", expected 6");
    Poly x = Poly::x(mc.field_d());
    Poly shifted = x - Poly::constant(mc.kappa + mc.kappa);
    if (!(h1.den == x * x * shifted * shifted))
        throw NotAPerfectSquare("derive_h: denominator is not x^2 (x - 2 kappa)^2");

    // canonical h1 has a monic denominator, so num = (1/d) * (x^6 + ...)
    FieldElement lead = h1.num.lead();
    mc.d_coeff = lead.inverse();
    Poly monic_num = h1.num.monic();
    for (int k = 0; k < 6; ++k) mc.c[k] = monic_num.coeff(k);
}

/// Full numeric map recovery for a solved kappa: picks the homothety
/// orientation by the sign of twist*(g^3-g)/q at the first sample (the
/// wrong unit negates X, and the negated map has no real square root),
/// then fits and returns the numeric coefficients.
inline std::pair<NumericFit, HomothetyUnit> fit_map_numeric(const Real& kappa,
                                                            const PrecisionContext& ctx) {
    PrecisionScope scope(ctx);
    std::vector<Real> xs;
    for (int j = 0; j < 12; ++j) xs.push_back(2 * kappa + 10 + 15 * j);

    NumericFit best;
    for (int u = 0; u < 2; ++u) {
        HomothetyUnit unit = u ? HomothetyUnit::I : HomothetyUnit::One;
        std::vector<SamplePoint> samples;
        try {
            samples = sample_map(xs, kappa, ctx, unit);
            best = fit_g(samples, ctx);
        } catch (const BadResidual&) {
            continue;
        }
        // sign test: h1^2 = -sqrt(5)(g^3-g)/q must be positive at a real
        // sample to the right of the branch points (where q > 0)
        const Real& x0 = xs[0];
        Real gx = best.coeff[4];
        {
            Real num = x0, den = 0;
            for (int k = 0; k < 5; ++k) num = num * x0 + best.coeff[k];
            den = (best.coeff[5] * x0 + best.coeff[6]) * x0 + best.coeff[7];
            gx = num / den;
        }
        Real h1sq = -sqrt(Real(5)) * (gx * gx * gx - gx);
        if (h1sq > 0) return {best, unit};
    }
    throw BadResidual("fit_map_numeric: neither homothety orientation yields a real map "
                      "with positive square");
}

/// Everything the pipeline proved, in one structured text block.
struct Certificate {
    std::vector<std::string> lines;
    bool all_green = true;

    void record(const std::string& line) { lines.push_back(line); }
    std::string text() const {
        std::ostringstream os;
        for (const auto& l : lines) os << l << "\n";
        os << (all_green ? "certificate: all checks passed" : "certificate: INCOMPLETE")
           << "\n";
        return os.str();
    }
};

struct EndToEndResult {
    Real kappa_numeric;
    std::optional<QuadraticSurd> kappa_exact;
    std::optional<IntegerPolynomial> kappa_min_poly;
    std::optional<MapCoefficients> map;
    Certificate certificate;
};

/// Solver -> recognition -> sampling/fit -> algebraization -> exact square
/// root -> exact verification. A quadratic kappa runs the whole chain; a
/// kappa of higher degree stops after its minimal polynomial (the exact
/// stage only has quadratic arithmetic).
inline EndToEndResult end_to_end(const NewtonConfig& cfg, const PrecisionContext& ctx) {
    EndToEndResult result;

    try {
        auto [root, trace] = find_kappa(cfg, ctx);
        result.kappa_numeric = root;
        result.certificate.record("solver: converged in " +
                                  std::to_string(trace.iterates.size()) + " iterates, |rho-" +
                                  cfg.target.str(6) + "| = " +
                                  Real(abs(trace.residuals.back())).str(4));
    } catch (const Error& e) {
        throw StageFailure("solver", e.what());
    }

    bool quadratic = false;
    try {
        // the solver guarantees ~(digits-10) correct digits; hand the
        // recognizer a value whose carried precision says so, or the
        // expansion trusts corrupt tail terms
        Real k_trim = result.kappa_numeric;
        k_trim.precision(std::max(30u, ctx.decimal_digits - 15));
        auto cf = cf_expand(k_trim, 200);
        auto surd = detect_quadratic(cf);
        if (surd) {
            result.kappa_exact = *surd;
            quadratic = true;
            result.certificate.record("recognize: kappa = " + surd->p.str() + " + " +
                                      surd->q.str() + "*sqrt(" + surd->d.str() + ")");
        }
        int deg = quadratic ? 2 : 4;
        auto mp = min_poly(result.kappa_numeric, deg, ctx);
        if (!mp) throw RecognitionFailure("no minimal polynomial found up to degree " +
                                          std::to_string(deg));
        result.kappa_min_poly = *mp;
        std::ostringstream os;
        os << "recognize: min poly coefficients (ascending):";
        for (const Int& c : mp->coeffs) os << " " << c.str();
        result.certificate.record(os.str());
    } catch (const Error& e) {
        throw StageFailure("recognize", e.what());
    }

    if (!quadratic || result.kappa_exact->d != 5) {
        result.certificate.record("mapfit: skipped (kappa not in Q(sqrt(5)))");
        return result;
    }

    MapCoefficients mc;
    try {
        auto [fit, unit] = fit_map_numeric(result.kappa_numeric, ctx);
        result.certificate.record("mapfit: held-out residual " +
                                  fit.held_out_residual.str(4) + ", homothety unit " +
                                  (unit == HomothetyUnit::I ? "i" : "1"));
        mc = algebraize_g(fit, ctx);
        mc.kappa = FieldElement(result.kappa_exact->p, result.kappa_exact->q, Int(5));
    } catch (const Error& e) {
        throw StageFailure("mapfit", e.what());
    }

    try {
        derive_h(mc);
        result.certificate.record("exact: h1 derived, d = " + mc.d_coeff.to_string());
    } catch (const Error& e) {
        throw StageFailure("exact-sqrt", e.what());
    }

    try {
        RatFunc g = mc.g(), h1 = mc.h1();
        if (!verify_cover_identity(g, h1, mc.quintic(), mc.twist()))
            throw BadResidual("cover identity h1^2 q/twist == g^3 - g failed");
        result.certificate.record("verify: h1^2 * (q/twist) == g^3 - g (exact)");
        auto pc = pullback_constant(g, h1);
        if (!pc) throw BadResidual("g'/h1 is not a nonzero constant");
        result.certificate.record("verify: g'/h1 == " + pc->to_string() + " (exact)");
    } catch (const Error& e) {
        throw StageFailure("verify", e.what());
    }

    result.map = mc;
    return result;
}

} // namespace ecover

#endif
