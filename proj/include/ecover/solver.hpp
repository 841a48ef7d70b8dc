#ifndef ECOVER_SOLVER_HPP
#define ECOVER_SOLVER_HPP

#include <algorithm>
#include <vector>

#include "ecover/periods.hpp"

namespace ecover {

/// Settings for the one-dimensional Newton solve of rho(s) = target.
struct NewtonConfig {
    Real seed;
    Real target;
    Real fd_epsilon;
    Real tol;
    int max_iter = 40;

    /// Defaults per working precision: epsilon = 10^(-min(10, digits/3)),
    /// tol = 10^(-digits+10). A fixed epsilon caps attainable accuracy, so
    /// it scales with the digit budget.
    static NewtonConfig defaults(const PrecisionContext& ctx, Real seed = Real(2),
                                 Real target = Real(3)) {
        NewtonConfig cfg;
        cfg.seed = std::move(seed);
        cfg.target = std::move(target);
        long e = std::min<long>(10, ctx.decimal_digits / 3);
        cfg.fd_epsilon = pow10(-e);
        cfg.tol = tolerance(ctx, 10);
        return cfg;
    }

    void validate() const {
        if (!(fd_epsilon > 0) || !(tol > 0) || max_iter < 1)
            throw DomainError("NewtonConfig: fd_epsilon, tol must be > 0 and max_iter >= 1");
    }
};

struct SolveTrace {
    std::vector<Real> iterates;   // s_0, s_1, ...
    std::vector<Real> residuals;  // rho(s_n) - target
    bool converged = false;
};

/// Newton iteration s_{n+1} = s_n - (rho(s_n) - target)/rho'(s_n), with the
/// derivative approximated by the forward difference
/// (rho(s_n + eps) - rho(s_n))/eps.
inline std::pair<Real, SolveTrace> find_kappa(const NewtonConfig& cfg,
                                              const PrecisionContext& ctx) {
    cfg.validate();
    PrecisionScope scope(ctx);

    SolveTrace trace;
    Real s = cfg.seed;
    for (int n = 0; n <= cfg.max_iter; ++n) {
        if (!(s > 1))
            throw DomainError("find_kappa: iterate left the domain (1, inf): s=" +
                              s.str(10));
        Real res = rho(s, ctx) - cfg.target;
        trace.iterates.push_back(s);
        trace.residuals.push_back(res);
        if (abs(res) < cfg.tol) {
            trace.converged = true;
            return {s, trace};
        }
        if (n == cfg.max_iter) break;

        Real fd = (rho(s + cfg.fd_epsilon, ctx) - (res + cfg.target)) / cfg.fd_epsilon;
        if (fd == 0)
            throw DerivativeVanished("find_kappa: finite difference underflowed at s=" +
                                     s.str(10));
        s = s - res / fd;
    }
    throw NoConvergence("find_kappa: no convergence after " +
                        std::to_string(cfg.max_iter) + " iterations");
}

/// Reruns the Newton solve at each precision in the schedule, seeding each
/// stage with the previous result. The result carries the last precision.
inline Real refine_at_precision(const Real& s_coarse, const Real& target,
                                const std::vector<unsigned>& schedule) {
    if (schedule.empty())
        throw DomainError("refine_at_precision: empty precision schedule");
    Real s = s_coarse;
    for (unsigned digits : schedule) {
        PrecisionContext ctx(digits);
        NewtonConfig cfg = NewtonConfig::defaults(ctx, s, target);
        // Scale the forward-difference step with the stage precision so the
        // derivative stays usable deep into the refinement.
        long e = std::min<long>(static_cast<long>(digits) / 3, static_cast<long>(digits) - 5);
        cfg.fd_epsilon = pow10(-std::max<long>(10, e));
        auto [root, trace] = find_kappa(cfg, ctx);
        s = root;
    }
    return s;
}

} // namespace ecover

#endif
