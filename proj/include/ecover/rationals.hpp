#ifndef ECOVER_RATIONALS_HPP
#define ECOVER_RATIONALS_HPP

#include <boost/multiprecision/gmp.hpp>

namespace ecover {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

/// True iff n = m^2 for some integer m; m is written to *root when given.
inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

/// Writes n = square * squarefree_part, with the squarefree part found by
/// trial division over small primes. Inputs here stay modest (continued
/// fraction discriminants, recognition radicands).
inline void squarefree_decompose(const Int& n, Int& square_root, Int& squarefree) {
    Int m = n;
    square_root = 1;
    for (Int p = 2; p * p <= m && p < 100000; ++p) {
        Int p2 = p * p;
        while (m % p2 == 0) {
            m /= p2;
            square_root *= p;
        }
    }
    Int r;
    if (is_perfect_square(m, &r)) {
        square_root *= r;
        m = 1;
    }
    squarefree = m;
}

} // namespace ecover

#endif
