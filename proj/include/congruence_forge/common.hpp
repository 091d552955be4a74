#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cforge {

using Int = mpz_class;
using Rat = mpq_class;

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Canonical rational with positive denominator and gcd-reduced terms.
inline Rat make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int to_int(u64 v) { return Int(static_cast<unsigned long>(v)); }

inline Int rat_num(const Rat& x) { return x.get_num(); }
inline Int rat_den(const Rat& x) { return x.get_den(); }

// Stays canonical: gcd(n,d) = 1 implies gcd(n^e, d^e) = 1.
inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline u64 u64_pow(u64 base, unsigned e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod_u64(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline void require_prime(u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

}  // namespace cforge
