#ifndef ECOVER_RECOGNIZE_HPP
#define ECOVER_RECOGNIZE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ecover/precision.hpp"
#include "ecover/rationals.hpp"

namespace ecover {

struct ContinuedFraction {
    std::vector<Int> terms;
    /// Set when expansion stopped because the remaining digits could not
    /// support another reliable term (not an error; the tail term before
    /// the stop may already be corrupt).
    bool precision_exhausted = false;

    /// Convergent p_k/q_k of terms[0..k].
    Rat convergent(std::size_t k) const {
        Int p_prev = 1, p_cur = terms.at(0);
        Int q_prev = 0, q_cur = 1;
        for (std::size_t i = 1; i <= k; ++i) {
            Int p_next = terms[i] * p_cur + p_prev;
            Int q_next = terms[i] * q_cur + q_prev;
            p_prev = p_cur; p_cur = p_next;
            q_prev = q_cur; q_cur = q_next;
        }
        return Rat(p_cur, q_cur);
    }
};

/// p + q*sqrt(d) with d squarefree; satisfies x^2 - 2px + (p^2 - q^2 d) = 0.
struct QuadraticSurd {
    Rat p, q;
    Int d;

    bool operator==(const QuadraticSurd& o) const {
        return p == o.p && q == o.q && d == o.d;
    }
};

/// Primitive integer polynomial, coefficients ascending, leading > 0.
struct IntegerPolynomial {
    std::vector<Int> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    void normalize() {
        while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
        Int g = 0;
        for (const Int& c : coeffs) g = gcd(g, c);
        if (g > 1)
            for (Int& c : coeffs) c /= g;
        if (!coeffs.empty() && coeffs.back() < 0)
            for (Int& c : coeffs) c = -c;
    }

    bool operator==(const IntegerPolynomial& o) const { return coeffs == o.coeffs; }
};

/// Standard continued fraction expansion of r, driven by the precision r
/// itself carries. Expansion stops at max_terms, at an exact termination,
/// or once the convergent denominators outrun the digit budget (flagged).
inline ContinuedFraction cf_expand(const Real& r, int max_terms) {
    if (max_terms < 1) throw DomainError("cf_expand: max_terms >= 1 required");
    if (!boost::math::isfinite(r)) throw DomainError("cf_expand: r must be finite");

    unsigned digits = static_cast<unsigned>(r.precision());
    PrecisionScope scope(digits + 5);
    Int budget = pow(Int(10), digits);

    ContinuedFraction cf;
    Real x = r;
    Int q_prev = 0, q_cur = 1;
    for (int i = 0; i < max_terms; ++i) {
        Real fl = floor(x);
        Int a = fl.convert_to<Int>();
        cf.terms.push_back(a);
        Real frac = x - fl;

        if (i > 0) {
            Int q_next = a * q_cur + q_prev;
            q_prev = q_cur;
            q_cur = q_next;
            if (q_cur * q_cur > budget) {
                cf.precision_exhausted = true;
                break;
            }
        }
        if (frac == 0) break;
        x = 1 / frac;
    }
    return cf;
}

/// If some term dwarfs everything before it (default: 1e5 x the running
/// median), the number is likely the rational convergent truncated just
/// before that term.
inline std::optional<Rat> detect_rational(const ContinuedFraction& cf,
                                          const Int& giant_factor = Int(100000)) {
    if (cf.terms.empty()) throw DomainError("detect_rational: empty continued fraction");
    std::vector<Int> prior;
    for (std::size_t i = 0; i < cf.terms.size(); ++i) {
        if (i >= 1) {
            std::vector<Int> sorted = prior;
            std::sort(sorted.begin(), sorted.end());
            Int median = sorted[sorted.size() / 2];
            if (median < 1) median = 1;
            if (cf.terms[i] > giant_factor * median)
                return cf.convergent(i - 1);
        }
        prior.push_back(abs(cf.terms[i]));
    }
    return std::nullopt;
}

namespace detail {

// Exact arithmetic on p + q*sqrt(d), enough for Moebius transforms.
struct SurdValue {
    Rat p, q;
    Int d;

    friend SurdValue operator+(const SurdValue& a, const Rat& r) {
        return {a.p + r, a.q, a.d};
    }
    friend SurdValue operator*(const Rat& r, const SurdValue& a) {
        return {r * a.p, r * a.q, a.d};
    }
    SurdValue inverse() const {
        Rat n = p * p - q * q * d;
        if (n == 0) throw DivisionByZero("surd inverse of zero");
        return {p / n, -q / n, d};
    }
};

} // namespace detail

/// Detects an eventually periodic continued fraction and solves the
/// periodic fixed point exactly. The final term is discounted (it is the
/// one most likely corrupted by the digit budget), and at least two full
/// periods must be visible among the remaining terms.
inline std::optional<QuadraticSurd> detect_quadratic(const ContinuedFraction& cf) {
    if (cf.terms.size() < 8)
        throw DomainError("detect_quadratic: needs at least 8 terms");
    const auto& t = cf.terms;

    // the corruption at the digit-budget boundary usually lands in the last
    // term, but a perturbed term can also split into several spurious ones;
    // retry with more dropped before giving up
    for (std::size_t drop = 1; drop <= 3; ++drop) {
    const std::size_t n = cf.terms.size() - drop;

    for (std::size_t period = 1; 2 * period <= n; ++period) {
        for (std::size_t pre = 0; pre + 2 * period <= n; ++pre) {
            // the periodic tail must dominate the expansion; otherwise any
            // accidental repeat among the last few terms would pass as a
            // period and every noisy tail would "detect" some surd
            if (2 * pre >= n) continue;
            bool ok = true;
            for (std::size_t i = pre; i < n && ok; ++i)
                ok = (t[i] == t[pre + (i - pre) % period]);
            if (!ok) continue;
            for (std::size_t i = pre; i < pre + period; ++i)
                if (i > 0 && t[i] < 1) { ok = false; break; }
            if (!ok) continue;

            // y = [t_pre; ..., t_{pre+period-1}, y]:
            // with M the product of the term matrices over one period,
            // M10 y^2 + (M11 - M00) y - M01 = 0, positive root wanted.
            Int m00 = 1, m01 = 0, m10 = 0, m11 = 1;
            for (std::size_t i = pre; i < pre + period; ++i) {
                Int n00 = t[i] * m00 + m01, n10 = t[i] * m10 + m11;
                m01 = m00; m11 = m10;
                m00 = n00; m10 = n10;
            }
            if (m10 == 0) continue;
            Int b = m11 - m00;
            Int disc = b * b + 4 * m10 * m01;
            if (disc <= 0) continue;
            Int e, d;
            squarefree_decompose(disc, e, d);
            if (d == 1) continue;  // rational fixed point, not a surd

            detail::SurdValue y{Rat(-b, 2 * m10), Rat(e, 2 * m10), d};
            detail::SurdValue x = y;
            for (std::size_t i = pre; i-- > 0;)
                x = x.inverse() + Rat(t[i]);
            if (x.q == 0) continue;
            return QuadraticSurd{x.p, x.q, x.d};
        }
    }
    }
    return std::nullopt;
}

/// Exact-rational LLL reduction with the Lovasz parameter delta.
/// Rows are the basis vectors; the returned rows span the same lattice.
inline std::vector<std::vector<Int>> lll_reduce(std::vector<std::vector<Int>> basis,
                                                const Rat& delta = Rat(99, 100)) {
    if (!(delta > Rat(1, 4) && delta < 1))
        throw DomainError("lll_reduce: delta must lie in (1/4, 1)");
    const std::size_t k = basis.size();
    if (k == 0) return basis;
    const std::size_t ncols = basis[0].size();
    for (const auto& row : basis)
        if (row.size() != ncols) throw DomainError("lll_reduce: ragged basis");

    auto dot = [](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<std::vector<Rat>> mu(k, std::vector<Rat>(k, 0));
    std::vector<Rat> B(k, 0);  // squared Gram-Schmidt norms

    auto gram_schmidt = [&]() {
        std::vector<std::vector<Rat>> star(k, std::vector<Rat>(ncols));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < ncols; ++c) star[i][c] = Rat(basis[i][c]);
            for (std::size_t j = 0; j < i; ++j) {
                Rat num = 0;
                for (std::size_t c = 0; c < ncols; ++c) num += Rat(basis[i][c]) * star[j][c];
                if (B[j] == 0) throw RankDeficient("lll_reduce: dependent basis rows");
                mu[i][j] = num / B[j];
                for (std::size_t c = 0; c < ncols; ++c) star[i][c] -= mu[i][j] * star[j][c];
            }
            Rat nrm = 0;
            for (std::size_t c = 0; c < ncols; ++c) nrm += star[i][c] * star[i][c];
            B[i] = nrm;
            if (B[i] == 0) throw RankDeficient("lll_reduce: dependent basis rows");
        }
        (void)dot;
    };

    gram_schmidt();
    std::size_t i = 1;
    while (i < k) {
        for (std::size_t j = i; j-- > 0;) {
            Rat m = mu[i][j];
            Int r = (2 * num(m) + den(m)) / (2 * den(m));  // round to nearest
            if (m < 0) r = -((2 * -num(m) + den(m)) / (2 * den(m)));
            if (r != 0) {
                for (std::size_t c = 0; c < ncols; ++c)
                    basis[i][c] -= r * basis[j][c];
            }
        }
        gram_schmidt();
        if (i >= 1 && B[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
            std::swap(basis[i], basis[i - 1]);
            gram_schmidt();
            i = (i > 1) ? i - 1 : 1;
        } else {
            ++i;
        }
    }
    return basis;
}

/// Minimum digit budget (d+1)(n+1) before a degree-n, d-digit-coefficient
/// recognition should be trusted.
inline long required_digits(long n, long d) {
    if (n < 1 || d < 1) throw DomainError("required_digits: n, d >= 1 required");
    return (d + 1) * (n + 1);
}

namespace detail {

inline Int round_to_int(const Real& x) {
    Real r = floor(x + Real(1) / 2);
    return r.convert_to<Int>();
}

} // namespace detail

/// Candidate minimal polynomial of r of degree <= max_deg, found by
/// reducing the lattice whose columns embed 10^digits * r^k alongside the
/// identity. Absence is a value; the result is not factored.
inline std::optional<IntegerPolynomial> min_poly(const Real& r, int max_deg,
                                                 const PrecisionContext& ctx) {
    if (max_deg < 1) throw DomainError("min_poly: max_deg >= 1 required");
    const long D = ctx.decimal_digits;
    PrecisionScope scope(2 * ctx.working_digits() + 40);

    const int n = max_deg;
    Real scale = pow10(D);
    std::vector<std::vector<Int>> basis(n + 1, std::vector<Int>(n + 2, 0));
    Real rk = 1;
    for (int kk = 0; kk <= n; ++kk) {
        basis[kk][kk] = 1;
        basis[kk][n + 1] = detail::round_to_int(scale * rk);
        rk *= r;
    }

    auto reduced = lll_reduce(basis);
    std::sort(reduced.begin(), reduced.end(),
              [](const std::vector<Int>& a, const std::vector<Int>& b) {
                  Int na = 0, nb = 0;
                  for (const Int& v : a) na += v * v;
                  for (const Int& v : b) nb += v * v;
                  return na < nb;
              });

    Real accept = pow10(-D / 2);
    for (const auto& row : reduced) {
        IntegerPolynomial poly;
        poly.coeffs.assign(row.begin(), row.begin() + n + 1);
        poly.normalize();
        if (poly.degree() < 1) continue;
        Real value = 0;
        for (int kk = poly.degree(); kk >= 0; --kk)
            value = value * r + Real(poly.coeffs[kk].str());
        if (abs(value) < accept) return poly;
    }
    return std::nullopt;
}

/// Finds rationals p, q with r = p + q*sqrt(d) via a 3-vector integer
/// relation lattice. Returns nothing when no relation passes the residual
/// threshold at the available digits.
inline std::optional<std::pair<Rat, Rat>> recognize_in_field(const Real& r, const Int& d,
                                                             const PrecisionContext& ctx) {
    if (d <= 0) throw DomainError("recognize_in_field: d must be positive");
    const long D = ctx.decimal_digits;
    PrecisionScope scope(2 * ctx.working_digits() + 40);
    if (r == 0) return std::make_pair(Rat(0), Rat(0));

    Real scale = pow10(D);
    Real sq = sqrt(Real(d.str()));
    std::vector<std::vector<Int>> basis = {
        {1, 0, 0, detail::round_to_int(scale * r)},
        {0, 1, 0, detail::round_to_int(scale)},
        {0, 0, 1, detail::round_to_int(scale * sq)},
    };
    auto reduced = lll_reduce(basis);
    std::sort(reduced.begin(), reduced.end(),
              [](const std::vector<Int>& a, const std::vector<Int>& b) {
                  Int na = 0, nb = 0;
                  for (const Int& v : a) na += v * v;
                  for (const Int& v : b) nb += v * v;
                  return na < nb;
              });

    Real accept = pow10(-D / 2);
    for (const auto& row : reduced) {
        const Int& A = row[0];
        const Int& B = row[1];
        const Int& C = row[2];
        if (A == 0) continue;
        Real resid = Real(A.str()) * r + Real(B.str()) + Real(C.str()) * sq;
        Real size = Real(Int(abs(A)).str()) + Real(Int(abs(B)).str()) + Real(Int(abs(C)).str());
        if (abs(resid) < accept * size)
            return std::make_pair(Rat(-B, A), Rat(-C, A));
    }
    return std::nullopt;
}

} // namespace ecover

#endif
