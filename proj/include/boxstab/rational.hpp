#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace boxstab {

// Exact arithmetic backbone. Cardinalities that can exceed 64 bits (projection
// products, box volumes) live in Int; probabilities, hole-weights and trim
// thresholds live in Rat. Reals derived from logarithms use long double
// (x87 extended, 64-bit mantissa).
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Accurate to one ulp of the 64-bit mantissa even for values beyond 2^64:
// takes the top 64 bits and rescales.
inline long double to_long_double(const Int& z) {
    const int sgn = mpz_sgn(z.get_mpz_t());
    if (sgn == 0) return 0.0L;
    const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    long double mag;
    if (bits <= 64) {
        unsigned long long lo = mpz_get_ui(z.get_mpz_t());
        if (bits > 8 * sizeof(unsigned long)) {  // non-LP64 fallback
            mag = std::fabs(static_cast<long double>(z.get_d()));
        } else {
            mag = static_cast<long double>(lo);
        }
    } else {
        Int top;
        mpz_tdiv_q_2exp(top.get_mpz_t(), z.get_mpz_t(), bits - 64);
        mpz_abs(top.get_mpz_t(), top.get_mpz_t());
        mag = std::ldexp(static_cast<long double>(mpz_get_ui(top.get_mpz_t())),
                          static_cast<int>(bits - 64));
    }
    return sgn < 0 ? -mag : mag;
}

inline long double to_long_double(const Rat& q) {
    return to_long_double(Int(q.get_num())) / to_long_double(Int(q.get_den()));
}

// log2 of a positive integer, exact when the integer is a power of two.
inline long double log2_ld(const Int& z) {
    if (mpz_sgn(z.get_mpz_t()) <= 0) throw std::domain_error("log2_ld: nonpositive argument");
    const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (bits <= 64) return std::log2(to_long_double(z));
    Int top;
    mpz_tdiv_q_2exp(top.get_mpz_t(), z.get_mpz_t(), bits - 64);
    return std::log2(static_cast<long double>(mpz_get_ui(top.get_mpz_t()))) +
           static_cast<long double>(bits - 64);
}

inline long double log2_ld(const Rat& q) {
    return log2_ld(Int(q.get_num())) - log2_ld(Int(q.get_den()));
}

inline Rat make_rat(long long num, long long den) {
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

}  // namespace boxstab
