#ifndef ECOVER_COVER_HPP
#define ECOVER_COVER_HPP

#include <array>
#include <istream>

#include "ecover/poly.hpp"

namespace ecover {

/// Checks h1(x)^2 * (q(x)/twist) == g(x)^3 - g(x) exactly. This is the
/// statement that (g(x), h1(x) y) lands on Y^2 = X^3 - X whenever
/// twist * y^2 = q(x).
inline bool verify_cover_identity(const RatFunc& g, const RatFunc& h1, const Poly& q,
                                  const FieldElement& twist) {
    if (g.num.d != h1.num.d || g.num.d != q.d || g.num.d != twist.d)
        throw FieldMismatch("verify_cover_identity: mixed fields");
    if (twist.is_zero()) throw DivisionByZero("verify_cover_identity: zero twist");
    RatFunc lhs = h1 * h1 * RatFunc(twist.inverse() * q);
    RatFunc rhs = g * g * g - g;
    return lhs == rhs;
}

/// The pullback of dX/Y under (g, h1*y) is (g'/h1) * dx/y; the cover is
/// branched only over infinity exactly when that ratio is a nonzero
/// constant, which this returns.
inline std::optional<FieldElement> pullback_constant(const RatFunc& g, const RatFunc& h1) {
    if (h1.is_zero()) throw DomainError("pullback_constant: h1 must be nonzero");
    RatFunc ratio = g.derivative() / h1;
    if (!ratio.is_constant()) return std::nullopt;
    FieldElement c = ratio.constant_value();
    if (c.is_zero()) return std::nullopt;
    return c;
}

/// Homogeneity of the map over Q(sqrt(5)) with the fundamental unit
/// eps = (1+sqrt(5))/2: every coefficient of g must be a pure value
/// (zero sqrt(5)-part or zero rational part) times eps^(6k) for some
/// integer k, so that the substitution x -> eps^6 x clears the unit.
inline bool check_homogeneity(const RatFunc& g) {
    if (g.num.d != 5) throw FieldMismatch("check_homogeneity: map must live over Q(sqrt(5))");
    FieldElement eps(Rat(1, 2), Rat(1, 2), Int(5));
    FieldElement eps6 = eps.pow(6);
    FieldElement inv6 = eps6.inverse();

    auto pure_times_unit = [&](const FieldElement& c) {
        if (c.is_zero()) return true;
        FieldElement v = c;
        for (int k = 0; k <= 24; ++k) {
            if (v.p == 0 || v.q == 0) return true;
            v = v * inv6;
        }
        v = c;
        for (int k = 0; k <= 24; ++k) {
            if (v.p == 0 || v.q == 0) return true;
            v = v * eps6;
        }
        return false;
    };

    for (const auto& c : g.num.c)
        if (!pure_times_unit(c)) return false;
    for (const auto& c : g.den.c)
        if (!pure_times_unit(c)) return false;
    return true;
}

/// The exact coefficient tables of the certified degree-5 cover:
/// g = (x^5 + a4 x^4 + ... + a0)/(b2 x^2 + b1 x + b0),
/// h = (x^6 + c5 x^5 + ... + c0) y / (d x^2 (x - 2 kappa)^2).
struct MapCoefficients {
    std::array<FieldElement, 5> a;  // a0..a4
    std::array<FieldElement, 3> b;  // b0..b2
    std::array<FieldElement, 6> c;  // c0..c5
    FieldElement d_coeff;
    FieldElement kappa;

    Int field_d() const { return kappa.d; }

    RatFunc g() const {
        Int fd = field_d();
        std::vector<FieldElement> numc(a.begin(), a.end());
        numc.push_back(FieldElement::rational(Rat(1), fd));
        std::vector<FieldElement> denc(b.begin(), b.end());
        return RatFunc(Poly(numc, fd), Poly(denc, fd));
    }

    RatFunc h1() const {
        Int fd = field_d();
        std::vector<FieldElement> numc(c.begin(), c.end());
        numc.push_back(FieldElement::rational(Rat(1), fd));
        FieldElement two_kappa = kappa + kappa;
        Poly x = Poly::x(fd);
        Poly shifted = x - Poly::constant(two_kappa);
        Poly den = Poly::constant(d_coeff) * x * x * shifted * shifted;
        return RatFunc(Poly(numc, fd), den);
    }

    /// The quintic x(x-1)(x-kappa)(x-2kappa+1)(x-2kappa).
    Poly quintic() const {
        Int fd = field_d();
        FieldElement zero = FieldElement::rational(Rat(0), fd);
        FieldElement one = FieldElement::rational(Rat(1), fd);
        return Poly::from_roots({zero, one, kappa, kappa + kappa - one, kappa + kappa}, fd);
    }

    /// The twist constant: the curve is -sqrt(5) y^2 = quintic(x).
    FieldElement twist() const { return FieldElement(Rat(0), Rat(-1), field_d()); }
};

/// Built-in certified coefficient set (see data/theorem1_map.txt for the
/// same table in serialized form).
inline MapCoefficients theorem1_map() {
    Int d5(5);
    auto mk = [&](long m, long u, long v) {
        // m*(u + v*sqrt(5))
        return FieldElement(Rat(m) * u, Rat(m) * v, d5);
    };
    auto mk_sqrt5 = [&](long m, long u, long v) {
        // m*sqrt(5)*(u + v*sqrt(5)) = m*5*v + m*u*sqrt(5)
        return FieldElement(Rat(m) * 5 * v, Rat(m) * u, d5);
    };

    MapCoefficients mc;
    mc.kappa = FieldElement(Rat(81), Rat(36), d5);
    mc.a[4] = mk(-45, 9, 4);
    mc.a[3] = mk(660, 161, 72);
    mc.a[2] = mk(-3240, 2889, 1292);
    mc.a[1] = mk(1980, 51841, 23184);
    mc.a[0] = mk(-324, 930249, 416020);
    mc.b[2] = mk_sqrt5(-100, 2889, 1292);
    mc.b[1] = mk_sqrt5(1800, 51841, 23184);
    mc.b[0] = FieldElement::rational(Rat(0), d5);
    mc.c[5] = mk(-54, 9, 4);
    mc.c[4] = mk(1030, 161, 72);
    mc.c[3] = mk(-7920, 2889, 1292);
    mc.c[2] = mk(18780, 51841, 23184);
    mc.c[1] = mk(216, 930249, 416020);
    mc.c[0] = mk(-1944, 16692641, 7465176);
    mc.d_coeff = mk_sqrt5(1000, 219602, 98209);
    return mc;
}

/// Parses the canonical "p + q*sqrt(d)" form of a field element.
inline FieldElement parse_field_element(const std::string& text) {
    auto plus = text.find(" + ");
    auto star = text.find("*sqrt(");
    auto close = text.find(')', star);
    if (plus == std::string::npos || star == std::string::npos || close == std::string::npos)
        throw DomainError("parse_field_element: malformed element '" + text + "'");
    Rat p(text.substr(0, plus));
    Rat q(text.substr(plus + 3, star - plus - 3));
    Int d(text.substr(star + 6, close - star - 6));
    return {p, q, d};
}

/// Inverse of serialize_map; whitespace-exact on the value side.
inline MapCoefficients parse_map(std::istream& in) {
    MapCoefficients mc;
    std::string line;
    auto next = [&](const std::string& key) {
        if (!std::getline(in, line))
            throw DomainError("parse_map: missing line for '" + key + "'");
        std::string prefix = key + " = ";
        if (line.rfind(prefix, 0) != 0)
            throw DomainError("parse_map: expected '" + key + " = ...', got '" + line + "'");
        return parse_field_element(line.substr(prefix.size()));
    };
    mc.kappa = next("kappa");
    for (int i = 4; i >= 0; --i) mc.a[i] = next("a" + std::to_string(i));
    for (int i = 2; i >= 0; --i) mc.b[i] = next("b" + std::to_string(i));
    for (int i = 5; i >= 0; --i) mc.c[i] = next("c" + std::to_string(i));
    mc.d_coeff = next("d");
    return mc;
}

/// Canonical serialization of the coefficient table (golden-file format).
inline std::string serialize_map(const MapCoefficients& mc) {
    std::ostringstream os;
    os << "kappa = " << mc.kappa.to_string() << "\n";
    for (int i = 4; i >= 0; --i) os << "a" << i << " = " << mc.a[i].to_string() << "\n";
    for (int i = 2; i >= 0; --i) os << "b" << i << " = " << mc.b[i].to_string() << "\n";
    for (int i = 5; i >= 0; --i) os << "c" << i << " = " << mc.c[i].to_string() << "\n";
    os << "d = " << mc.d_coeff.to_string() << "\n";
    return os.str();
}

} // namespace ecover

#endif
