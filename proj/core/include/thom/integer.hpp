#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace thom {

/// Exact arbitrary-precision integer. Every arithmetic value in the library
/// is one of these; there is no floating point anywhere.
using Integer = mpz_class;

using index_t = std::int64_t;

inline Integer int_abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// g = s*a + t*b
struct ExtGcd {
    Integer g, s, t;
};

inline ExtGcd int_gcdext(const Integer& a, const Integer& b) {
    ExtGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(),
               a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Quotient of a by b rounded to nearest (ties toward zero); used to keep
/// remainders small during elimination.
inline Integer div_round(const Integer& a, const Integer& b) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * int_abs(r) > int_abs(b)) q += (b > 0 ? 1 : -1);
    return q;
}

/// Exact division; b must divide a.
inline Integer div_exact(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Integer& d, const Integer& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Non-negative residue of a mod m (m > 0).
inline Integer mod_nonneg(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::string to_decimal(const Integer& a) { return a.get_str(); }

}  // namespace thom
