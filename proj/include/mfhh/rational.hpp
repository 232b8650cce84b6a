#ifndef MFHH_RATIONAL_HPP
#define MFHH_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

#include "mfhh/errors.hpp"

namespace mfhh {

// All arithmetic in the library is exact.  Int/Rat are GMP-backed
// arbitrary-precision types; no floating point appears anywhere.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

// Euclidean floor division / modulo (result of mod in [0, |b|)).
Int floor_div(const Int& a, const Int& b);
Int pos_mod(const Int& a, const Int& b);

// Fractional part in [0,1).
Rat frac_part(const Rat& q);

// Parse "p/q" or "p" (decimal-string rationals in the JSON schemas).
Rat parse_rational(const std::string& s);
std::string rational_string(const Rat& q);

// Small deterministic PRNG for property tests (xorshift64*); seeded
// explicitly so failures reproduce.
struct Rng {
    unsigned long long state;
    explicit Rng(unsigned long long seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    unsigned long long next() {
        unsigned long long x = state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state = x;
        return x * 0x2545f4914f6cdd1dull;
    }
    // uniform in [lo, hi] inclusive
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
};

}  // namespace mfhh

#endif
