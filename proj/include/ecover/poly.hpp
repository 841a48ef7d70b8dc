#ifndef ECOVER_POLY_HPP
#define ECOVER_POLY_HPP

#include <optional>
#include <sstream>
#include <vector>

#include "ecover/field.hpp"

namespace ecover {

/// Dense polynomial over Q(sqrt(d)), coefficients ascending, canonical
/// (no trailing zeros; empty = zero polynomial).
struct Poly {
    std::vector<FieldElement> c;
    Int d{5};

    Poly() = default;
    explicit Poly(Int d_) : d(std::move(d_)) {}
    Poly(std::vector<FieldElement> coeffs, Int d_) : c(std::move(coeffs)), d(std::move(d_)) {
        for (const auto& x : c)
            if (x.d != d) throw FieldMismatch("Poly: coefficient from a different field");
        trim();
    }

    static Poly constant(FieldElement v) {
        Int d = v.d;
        return Poly({std::move(v)}, d);
    }
    static Poly x(Int d) {
        return Poly({FieldElement::rational(Rat(0), d), FieldElement::rational(Rat(1), d)}, d);
    }
    /// Monic product of (x - r) over the given roots.
    static Poly from_roots(const std::vector<FieldElement>& roots, Int d) {
        Poly p = constant(FieldElement::rational(Rat(1), d));
        for (const auto& r : roots)
            p = p * Poly({-r, FieldElement::rational(Rat(1), d)}, d);
        return p;
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    FieldElement lead() const {
        if (is_zero()) throw DomainError("Poly: zero polynomial has no leading coefficient");
        return c.back();
    }
    FieldElement coeff(int k) const {
        if (k < 0 || k > degree()) return FieldElement::rational(Rat(0), d);
        return c[k];
    }
    bool is_monic() const { return !is_zero() && lead() == FieldElement::rational(Rat(1), d); }

    static void check(const Poly& a, const Poly& b) {
        if (a.d != b.d) throw FieldMismatch("Poly: mixing fields");
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check(a, b);
        Poly r(a.d);
        r.c.resize(std::max(a.c.size(), b.c.size()), FieldElement::rational(Rat(0), a.d));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] += a.c[i];
            if (i < b.c.size()) r.c[i] += b.c[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check(a, b);
        if (a.is_zero() || b.is_zero()) return Poly(a.d);
        Poly r(a.d);
        r.c.assign(a.c.size() + b.c.size() - 1, FieldElement::rational(Rat(0), a.d));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const FieldElement& s, const Poly& a) {
        Poly r = a;
        for (auto& x : r.c) x = s * x;
        r.trim();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.d == b.d && a.c == b.c;
    }

    /// Euclidean division: returns (quotient, remainder).
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        check(a, b);
        if (b.is_zero()) throw DivisionByZero("Poly: division by zero polynomial");
        Poly q(a.d), r = a;
        FieldElement inv_lead = b.lead().inverse();
        q.c.assign(std::max(0, a.degree() - b.degree() + 1),
                   FieldElement::rational(Rat(0), a.d));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            FieldElement f = r.lead() * inv_lead;
            q.c[k] = f;
            for (int i = 0; i <= b.degree(); ++i)
                r.c[k + i] -= f * b.c[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    Poly derivative() const {
        Poly r(d);
        for (int k = 1; k <= degree(); ++k)
            r.c.push_back(FieldElement::rational(Rat(k), d) * c[k]);
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return lead().inverse() * *this;
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement v = FieldElement::rational(Rat(0), d);
        for (int k = degree(); k >= 0; --k) v = v * x + c[k];
        return v;
    }

    /// this(g(x)) by Horner over polynomials.
    Poly compose(const Poly& g) const {
        check(*this, g);
        Poly v(d);
        for (int k = degree(); k >= 0; --k)
            v = v * g + constant(c[k]);
        return v;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        for (int k = 0; k <= degree(); ++k) {
            if (k) os << "; ";
            os << c[k].to_string();
        }
        return os.str();
    }
};

inline Poly poly_gcd(Poly a, Poly b) {
    Poly::check(a, b);
    while (!b.is_zero()) {
        auto [q, r] = Poly::divmod(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

/// Reduced rational function num/den with monic denominator; equality is
/// coefficientwise.
struct RatFunc {
    Poly num, den;

    RatFunc() = default;
    explicit RatFunc(Poly n) : num(std::move(n)), den(Poly::constant(FieldElement::rational(Rat(1), num.d))) {}
    RatFunc(Poly n, Poly de) : num(std::move(n)), den(std::move(de)) {
        Poly::check(num, den);
        canonicalize();
    }

    static RatFunc x(Int d) { return RatFunc(Poly::x(d)); }
    static RatFunc constant(FieldElement v) { return RatFunc(Poly::constant(std::move(v))); }

    void canonicalize() {
        if (den.is_zero()) throw DivisionByZero("RatFunc: zero denominator");
        if (num.is_zero()) {
            den = Poly::constant(FieldElement::rational(Rat(1), den.d));
            return;
        }
        Poly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = Poly::divmod(num, g).first;
            den = Poly::divmod(den, g).first;
        }
        FieldElement inv = den.lead().inverse();
        num = inv * num;
        den = inv * den;
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.degree() <= 0 && den.degree() == 0; }
    FieldElement constant_value() const {
        if (!is_constant()) throw DomainError("RatFunc: not constant");
        if (num.is_zero()) return FieldElement::rational(Rat(0), num.d);
        return num.c[0];
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("RatFunc: division by zero");
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    RatFunc operator-() const { return RatFunc(-num, den); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num == b.num && a.den == b.den;
    }

    RatFunc derivative() const {
        return RatFunc(num.derivative() * den - num * den.derivative(), den * den);
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement dv = den.eval(x);
        if (dv.is_zero()) throw DivisionByZero("RatFunc: evaluation at a pole");
        return num.eval(x) / dv;
    }
};

/// Square root of a polynomial by top-down coefficient matching; the
/// verification S*S == p at the end is what decides squareness.
inline std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly(p.d);
    if (p.degree() % 2 != 0) return std::nullopt;
    auto lead_root = field_sqrt(p.lead());
    if (!lead_root) return std::nullopt;

    int m = p.degree() / 2;
    Poly s(p.d);
    s.c.assign(m + 1, FieldElement::rational(Rat(0), p.d));
    s.c[m] = *lead_root;
    FieldElement two_lead = s.c[m] + s.c[m];
    for (int k = m - 1; k >= 0; --k) {
        // coefficient of x^(k+m) in s^2 must match p
        FieldElement acc = FieldElement::rational(Rat(0), p.d);
        for (int i = k + 1; i < m; ++i) {
            int j = k + m - i;
            if (j > m || j <= k) continue;
            acc += s.c[i] * s.c[j];
        }
        s.c[k] = (p.coeff(k + m) - acc) / two_lead;
    }
    s.trim();
    if (s * s == p) return s;
    return std::nullopt;
}

/// Square root in the rational function field, if F is a perfect square.
/// The sign is fixed by giving the numerator's leading coefficient a
/// positive rational part (positive sqrt(d)-part when the rational part
/// vanishes).
inline std::optional<RatFunc> exact_sqrt_ratfunc(const RatFunc& F) {
    if (F.is_zero()) throw DomainError("exact_sqrt_ratfunc: F must be nonzero");
    auto sn = poly_sqrt(F.num);
    auto sd = poly_sqrt(F.den);
    if (!sn || !sd) return std::nullopt;
    RatFunc S(*sn, *sd);
    FieldElement lead = S.num.lead();
    bool flip = lead.p != 0 ? lead.p < 0 : lead.q < 0;
    if (flip) S = -S;
    return S;
}

} // namespace ecover

#endif
