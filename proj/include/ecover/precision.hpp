#ifndef ECOVER_PRECISION_HPP
#define ECOVER_PRECISION_HPP

#include <boost/multiprecision/mpfr.hpp>

#include "ecover/errors.hpp"

namespace ecover {

/// Arbitrary-precision real scalar (MPFR backend, dynamic precision).
using Real = boost::multiprecision::mpfr_float;

/// Working-precision settings shared by all numeric routines.
///
/// decimal_digits is the precision the caller asks for; guard_digits are
/// added internally so that results are good to decimal_digits after
/// roundoff. Contexts are immutable and cheap to copy.
struct PrecisionContext {
    unsigned decimal_digits;
    unsigned guard_digits;

    explicit PrecisionContext(unsigned digits = 50, unsigned guard = 10)
        : decimal_digits(digits), guard_digits(guard) {
        if (digits < 15)
            throw DomainError("PrecisionContext: decimal_digits must be >= 15");
    }

    unsigned working_digits() const { return decimal_digits + guard_digits; }

    PrecisionContext with_digits(unsigned digits) const {
        return PrecisionContext(digits, guard_digits);
    }
};

/// Sets the thread-default MPFR precision for the lifetime of the scope.
/// Every routine taking a PrecisionContext opens one of these at entry, so
/// temporaries inside expressions are carried at working precision.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx)
        : saved_(Real::default_precision()) {
        Real::default_precision(ctx.working_digits());
    }
    explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

inline Real pow10(long e) { return pow(Real(10), e); }

/// 10^(-ctx.decimal_digits + shift), the standard tolerance shape used
/// throughout ("below 10^(-digits+k)").
inline Real tolerance(const PrecisionContext& ctx, int shift = 0) {
    return pow10(-static_cast<long>(ctx.decimal_digits) + shift);
}

/// Complex scalar over Real. std::complex is not specified for
/// user-defined scalar types, so we carry our own minimal one.
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex operator-() const { return {-re, -im}; }
    Complex conj() const { return {re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) {
        return {s * a.re, s * a.im};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return s * a; }
    friend Complex operator/(const Complex& a, const Real& s) {
        return {a.re / s, a.im / s};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re * b.re + b.im * b.im;
        if (n == 0) throw DivisionByZero("complex division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline Real abs(const Complex& z) { return sqrt(z.re * z.re + z.im * z.im); }

inline Complex i_times(const Complex& z) { return {-z.im, z.re}; }

} // namespace ecover

#endif
