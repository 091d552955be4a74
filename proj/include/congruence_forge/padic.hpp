#pragma once

// p-adic valuations, congruences mod p^K, and binomial coefficient kernels
// (exact and prime-power modular).

#include <algorithm>
#include <utility>
#include <vector>

#include "congruence_forge/common.hpp"

namespace cforge {

/// Valuation nu_p(x); `infinite` marks the valuation of 0.
struct PValuation {
    u64 p = 0;
    long value = 0;
    bool infinite = false;

    static PValuation infinity(u64 p) { return {p, 0, true}; }
    static PValuation finite(u64 p, long v) { return {p, v, false}; }

    bool at_least(long bound) const { return infinite || value >= bound; }
    bool equals(long v) const { return !infinite && value == v; }

    std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

inline bool operator==(const PValuation& a, const PValuation& b) {
    return a.p == b.p && a.infinite == b.infinite && (a.infinite || a.value == b.value);
}

inline PValuation vp(const Int& x, u64 p) {
    require_prime(p);
    if (x == 0) return PValuation::infinity(p);
    Int rest;
    Int pz(static_cast<unsigned long>(p));
    mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    return PValuation::finite(p, static_cast<long>(v));
}

// nu_p(a/b) = nu_p(a) - nu_p(b)
inline PValuation vp(const Rat& x, u64 p) {
    require_prime(p);
    if (x == 0) return PValuation::infinity(p);
    PValuation num = vp(Int(x.get_num()), p);
    PValuation den = vp(Int(x.get_den()), p);
    return PValuation::finite(p, num.value - den.value);
}

struct CongruenceCheck {
    bool holds = false;
    PValuation attained;
};

/// a == b (mod p^K) for rationals whose denominators are coprime to p.
inline CongruenceCheck congruent_mod_pk(const Rat& a, const Rat& b, u64 p, long K) {
    require_prime(p);
    if (K < 0) throw std::invalid_argument("negative congruence exponent");
    if (mpz_divisible_ui_p(a.get_den().get_mpz_t(), p) ||
        mpz_divisible_ui_p(b.get_den().get_mpz_t(), p))
        throw std::domain_error("congruence mod p^K undefined: denominator divisible by p");
    PValuation v = vp(Rat(a - b), p);
    return {v.at_least(K), v};
}

inline CongruenceCheck congruent_mod_pk(const Int& a, const Int& b, u64 p, long K) {
    return congruent_mod_pk(Rat(a), Rat(b), p, K);
}

/// Legendre: nu_p(n!) = sum_{i>=1} floor(n/p^i).
inline long factorial_valuation(u64 n, u64 p) {
    require_prime(p);
    long v = 0;
    while (n) {
        n /= p;
        v += static_cast<long>(n);
    }
    return v;
}

/// Exact binomial coefficient; 0 when k < 0 or k > n.
inline Int binomial_exact(u64 n, i64 k) {
    if (k < 0 || static_cast<u64>(k) > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

/// Kummer: number of carries when adding k and n-k in base p, equal to
/// nu_p(binom(n, k)).
inline long carry_count_base_p(u64 n, u64 k, u64 p) {
    if (k > n) return 0;
    u64 a = k, b = n - k;
    long carries = 0;
    u64 carry = 0;
    while (a || b || carry) {
        u64 s = a % p + b % p + carry;
        carry = s >= p ? 1 : 0;
        carries += static_cast<long>(carry);
        a /= p;
        b /= p;
    }
    return carries;
}

// Binomial coefficients mod p^K through factorials with their p-part removed
// (generalized Wilson/Lucas). The context caches prefix products of
// (m!)_p = prod_{j<=m, p-coprime j} j mod p^K so repeated queries against one
// modulus are cheap.
class BinomialModContext {
public:
    BinomialModContext(u64 p, unsigned K, u64 table_limit = 0) : p_(p), K_(K) {
        require_prime(p);
        if (K == 0) throw std::invalid_argument("modulus exponent K must be positive");
        // q = p^K must fit in 63 bits so mulmod can use 128-bit intermediates.
        q_ = 1;
        for (unsigned i = 0; i < K; ++i) {
            if (q_ > (u64(1) << 62) / p) throw std::invalid_argument("p^K exceeds residue width");
            q_ *= p;
        }
        // Product of all p-coprime residues mod p^K: -1 except for p = 2, K >= 3.
        wilson_ = (p == 2 && K >= 3) ? 1 : q_ - 1;
        u64 limit = std::min(q_ - 1, table_limit);
        prefix_.reserve(static_cast<size_t>(limit) + 1);
        prefix_.push_back(1);
        u64 acc = 1;
        for (u64 j = 1; j <= limit; ++j) {
            if (j % p_ != 0) acc = mulmod_u64(acc, j % q_, q_);
            prefix_.push_back(acc);
        }
    }

    u64 p() const { return p_; }
    unsigned K() const { return K_; }
    u64 modulus() const { return q_; }

    /// binom(n, k) mod p^K; 0 when k < 0 or k > n.
    u64 binomial(u64 n, i64 k) const {
        if (k < 0 || static_cast<u64>(k) > n) return 0;
        u64 kk = static_cast<u64>(k);
        long c = carry_count_base_p(n, kk, p_);
        if (c >= static_cast<long>(K_)) return 0;
        u64 unit = 1;
        u64 nn = n, ka = kk, kb = n - kk;
        while (nn) {
            unit = mulmod_u64(unit, removed_factorial(nn), q_);
            unit = mulmod_u64(unit, inv_unit(mulmod_u64(removed_factorial(ka), removed_factorial(kb), q_)), q_);
            nn /= p_;
            ka /= p_;
            kb /= p_;
        }
        u64 pc = 1;
        for (long i = 0; i < c; ++i) pc *= p_;
        return mulmod_u64(pc % q_, unit, q_);
    }

private:
    // (m!)_p mod q via full-block Wilson sign and the partial-block product.
    u64 removed_factorial(u64 m) const {
        u64 blocks = m / q_;
        u64 rest = m % q_;
        u64 r = (blocks & 1) ? wilson_ : 1;
        if (rest < prefix_.size()) return mulmod_u64(r, prefix_[rest], q_);
        for (u64 j = 1; j <= rest; ++j)
            if (j % p_ != 0) r = mulmod_u64(r, j, q_);
        return r;
    }

    u64 inv_unit(u64 a) const {
        // extended Euclid; a is coprime to q by construction
        i64 t = 0, nt = 1;
        i64 r = static_cast<i64>(q_), nr = static_cast<i64>(a % q_);
        while (nr != 0) {
            i64 quo = r / nr;
            t = std::exchange(nt, t - quo * nt);
            r = std::exchange(nr, r - quo * nr);
        }
        if (r != 1) throw std::domain_error("not invertible mod p^K");
        return static_cast<u64>(t < 0 ? t + static_cast<i64>(q_) : t);
    }

    u64 p_;
    unsigned K_;
    u64 q_;
    u64 wilson_;
    std::vector<u64> prefix_;
};

/// One-shot binom(n, k) mod p^K. For bulk queries construct a
/// BinomialModContext once and reuse it.
inline u64 binomial_mod_prime_power(u64 n, i64 k, u64 p, unsigned K) {
    BinomialModContext ctx(p, K, n);
    return ctx.binomial(n, k);
}

}  // namespace cforge
