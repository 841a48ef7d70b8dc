#ifndef ECOVER_FIELD_HPP
#define ECOVER_FIELD_HPP

#include <optional>
#include <string>

#include "ecover/errors.hpp"
#include "ecover/precision.hpp"
#include "ecover/rationals.hpp"

namespace ecover {

/// Exact element p + q*sqrt(d) of the real quadratic field Q(sqrt(d)).
/// Elements carrying different d never mix arithmetically.
struct FieldElement {
    Rat p{0};
    Rat q{0};
    Int d{5};

    FieldElement() = default;
    FieldElement(Rat p_, Rat q_, Int d_) : p(std::move(p_)), q(std::move(q_)), d(std::move(d_)) {}

    static FieldElement rational(Rat r, Int d_) { return {std::move(r), Rat(0), std::move(d_)}; }
    static FieldElement sqrt_d(Int d_) { return {Rat(0), Rat(1), d_}; }

    bool is_zero() const { return p == 0 && q == 0; }
    bool is_rational() const { return q == 0; }

    FieldElement conj() const { return {p, -q, d}; }
    Rat norm() const { return p * p - q * q * d; }

    static void check(const FieldElement& a, const FieldElement& b) {
        if (a.d != b.d)
            throw FieldMismatch("field elements over sqrt(" + a.d.str() + ") and sqrt(" +
                                b.d.str() + ") cannot mix");
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.p + b.p, a.q + b.q, a.d};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.p - b.p, a.q - b.q, a.d};
    }
    FieldElement operator-() const { return {-p, -q, d}; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return {a.p * b.p + a.q * b.q * Rat(a.d), a.p * b.q + a.q * b.p, a.d};
    }
    FieldElement inverse() const {
        Rat n = norm();
        if (n == 0) throw DivisionByZero("FieldElement: division by zero");
        return {p / n, -q / n, d};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        check(a, b);
        return a * b.inverse();
    }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.d == b.d && a.p == b.p && a.q == b.q;
    }

    FieldElement pow(long e) const {
        FieldElement base = *this;
        if (e < 0) {
            base = base.inverse();
            e = -e;
        }
        FieldElement acc = rational(Rat(1), d);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Numeric value at the context's working precision.
    Real to_real(const PrecisionContext& ctx) const {
        PrecisionScope scope(ctx);
        Real pr = Real(num(p).str()) / Real(den(p).str());
        Real qr = Real(num(q).str()) / Real(den(q).str());
        return pr + qr * sqrt(Real(d.str()));
    }

    /// Canonical text form "p + q*sqrt(d)".
    std::string to_string() const {
        return p.str() + " + " + q.str() + "*sqrt(" + d.str() + ")";
    }
};

/// Square root in Q(sqrt(d)), when one exists.
inline std::optional<FieldElement> field_sqrt(const FieldElement& a) {
    auto rat_sqrt = [](const Rat& r) -> std::optional<Rat> {
        if (r < 0) return std::nullopt;
        Int n, m;
        if (!is_perfect_square(num(r), &n) || !is_perfect_square(den(r), &m))
            return std::nullopt;
        return Rat(n, m);
    };

    if (a.is_zero()) return FieldElement::rational(Rat(0), a.d);
    if (a.q == 0) {
        if (auto s = rat_sqrt(a.p)) return FieldElement::rational(*s, a.d);
        // p might be d times a rational square: sqrt(p) = v*sqrt(d)
        if (auto v = rat_sqrt(a.p / Rat(a.d))) return FieldElement(Rat(0), *v, a.d);
        return std::nullopt;
    }
    // (u + v sqrt(d))^2 = a: u^2 + d v^2 = p, 2uv = q. Then u^2 and d v^2
    // are the roots of t^2 - p t + d q^2/4, so the discriminant p^2 - d q^2
    // (the norm of a) must be a rational square.
    auto w = rat_sqrt(a.norm());
    if (!w) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
        Rat u2 = (a.p + (sign ? -*w : *w)) / 2;
        auto u = rat_sqrt(u2);
        if (!u || *u == 0) continue;
        Rat v = a.q / (2 * *u);
        FieldElement s(*u, v, a.d);
        if (s * s == a) return s;
    }
    return std::nullopt;
}

/// Exact arithmetic dispatch used by the CLI and tests.
inline FieldElement field_arith(const FieldElement& a, const FieldElement& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: throw DomainError(std::string("field_arith: unknown op '") + op + "'");
    }
}

} // namespace ecover

#endif
