#pragma once

// The combinatorial kernel behind the supercongruence proofs: the products
// g_AB(X, k) = prod_{i<=k} (1 - X/i)^A (1 + X/i)^B, their p-coprime variants
// g*_AB, the partial power sums S_j(k), and the identities tying them to
// binomial coefficients.

#include <tuple>
#include <vector>

#include "congruence_forge/common.hpp"
#include "congruence_forge/padic.hpp"
#include "congruence_forge/witness.hpp"

namespace cforge {

// Incremental evaluator for g products; advance() appends the factor at the
// next index i, skipping multiples of skip_p when set. Per-step gcd reduction
// comes free with canonical rationals.
class GProduct {
public:
    GProduct(unsigned A, unsigned B, Int X, u64 skip_p = 0)
        : A_(A), B_(B), X_(std::move(X)), skip_p_(skip_p), value_(1) {}

    void advance() {
        ++i_;
        if (skip_p_ != 0 && i_ % skip_p_ == 0) return;
        Rat x_over_i = make_rational(X_, Int(static_cast<unsigned long>(i_)));
        if (A_ > 0) value_ *= rat_pow(Rat(1 - x_over_i), A_);
        if (B_ > 0) value_ *= rat_pow(Rat(1 + x_over_i), B_);
    }

    void advance_to(u64 k) {
        while (i_ < k) advance();
    }

    u64 index() const { return i_; }
    const Rat& value() const { return value_; }

private:
    unsigned A_, B_;
    Int X_;
    u64 skip_p_;
    u64 i_ = 0;
    Rat value_;
};

inline Rat g(unsigned A, unsigned B, const Int& X, u64 k) {
    GProduct prod(A, B, X);
    prod.advance_to(k);
    return prod.value();
}

inline Rat g_star(unsigned A, unsigned B, u64 p, const Int& X, u64 k) {
    require_prime(p);
    GProduct prod(A, B, X, p);
    prod.advance_to(k);
    return prod.value();
}

/// S_j(k) = sum_{i<=k, p coprime} 1/i^j.
inline Rat harmonic_S(unsigned j, u64 p, u64 k) {
    if (j < 1) throw std::invalid_argument("power j must be >= 1");
    require_prime(p);
    Rat sum = 0;
    for (u64 i = 1; i <= k; ++i) {
        if (i % p == 0) continue;
        sum += make_rational(Int(1), int_pow(Int(static_cast<unsigned long>(i)), j));
    }
    return sum;
}

// Coefficients of X^0 .. X^(nterms-1) of g*_AB(X, k) as a polynomial in a
// formal X. nterms = (A+B)k + 1 recovers the full polynomial; the proposition
// checks only need the window below X^3.
inline std::vector<Rat> gstar_x_series(unsigned A, unsigned B, u64 p, u64 k, size_t nterms) {
    require_prime(p);
    std::vector<Rat> acc(nterms, Rat(0));
    if (nterms == 0) return acc;
    acc[0] = 1;
    std::vector<Rat> factor(nterms), next(nterms);
    for (u64 i = 1; i <= k; ++i) {
        if (i % p == 0) continue;
        // (1 - X/i)^A (1 + X/i)^B, coefficient of X^d
        for (auto& c : factor) c = 0;
        size_t top = std::min(nterms - 1, static_cast<size_t>(A) + B);
        Rat inv_i = make_rational(Int(1), Int(static_cast<unsigned long>(i)));
        for (size_t d = 0; d <= top; ++d) {
            Int coeff = 0;
            for (size_t a = 0; a <= std::min<size_t>(d, A); ++a) {
                size_t b = d - a;
                if (b > B) continue;
                Int term = binomial_exact(A, static_cast<i64>(a)) * binomial_exact(B, static_cast<i64>(b));
                if (a % 2 == 1) term = -term;
                coeff += term;
            }
            factor[d] = Rat(coeff) * rat_pow(inv_i, d);
        }
        for (auto& c : next) c = 0;
        for (size_t da = 0; da < nterms; ++da) {
            if (acc[da] == 0) continue;
            for (size_t db = 0; db <= top && da + db < nterms; ++db)
                next[da + db] += acc[da] * factor[db];
        }
        acc.swap(next);
    }
    return acc;
}

/// Prop (1): binom(n,k)^A binom(n+k,k)^B = (-1)^(Ak) (n/(n-k))^A g_AB(n, k).
/// The identity has a pole at n = k, which is a domain error here.
inline bool prop1_check(u64 n, u64 k, unsigned A, unsigned B) {
    if (n == k) throw std::domain_error("prop1 excludes n = k");
    Rat lhs(int_pow(binomial_exact(n, static_cast<i64>(k)), A) *
            int_pow(binomial_exact(n + k, static_cast<i64>(k)), B));
    Rat scale = rat_pow(make_rational(Int(static_cast<unsigned long>(n)),
                                      Int(static_cast<unsigned long>(n)) - Int(static_cast<unsigned long>(k))),
                        A);
    Rat rhs = scale * g(A, B, Int(static_cast<unsigned long>(n)), k);
    if ((static_cast<u64>(A) * k) % 2 == 1) rhs = -rhs;
    return lhs == rhs;
}

/// Prop (2): g_AB(pX, k) = g*_AB(pX, k) g_AB(X, floor(k/p)).
inline bool prop2_check(unsigned A, unsigned B, u64 p, const Int& X, u64 k) {
    Int pX = Int(static_cast<unsigned long>(p)) * X;
    return g(A, B, pX, k) == g_star(A, B, p, pX, k) * g(A, B, X, k / p);
}

/// Prop (3): the X^0, X^1, X^2 coefficients of g*_AB(X, k) are
/// 1, (B-A) S_1(k), and ((A-B)^2 S_1(k)^2 - (A+B) S_2(k)) / 2.
inline bool prop3_check(unsigned A, unsigned B, u64 p, u64 k) {
    auto coeffs = gstar_x_series(A, B, p, k, 3);
    Rat s1 = harmonic_S(1, p, k);
    Rat s2 = harmonic_S(2, p, k);
    Rat c1 = (Rat(B) - Rat(A)) * s1;
    Rat c2 = (rat_pow(Rat(A) - Rat(B), 2) * s1 * s1 - (Rat(A) + Rat(B)) * s2) / 2;
    return coeffs[0] == 1 && coeffs[1] == c1 && coeffs[2] == c2;
}

struct Prop4Result {
    PValuation valuation;      // nu_p(S_j(m p^r))
    bool pass = false;         // >= r
    bool strong_applicable = false;  // j == 1
    bool strong_pass = false;  // >= 2r, the bound the reduction lemma needs
};

/// Prop (4): nu_p(S_j(m p^r)) >= r for j not divisible by p-1, plus the
/// strengthened j = 1 bound >= 2r.
inline Prop4Result prop4_check(unsigned j, u64 p, u64 m, unsigned r) {
    require_prime(p);
    if (j < 1 || m < 1 || r < 1) throw std::invalid_argument("prop4 needs j, m, r >= 1");
    if (j % (p - 1) == 0) throw std::invalid_argument("prop4 requires j not divisible by p - 1");
    Rat s = harmonic_S(j, p, m * u64_pow(p, r));
    Prop4Result res;
    res.valuation = vp(s, p);
    res.pass = res.valuation.at_least(static_cast<long>(r));
    res.strong_applicable = (j == 1);
    res.strong_pass = res.strong_applicable && res.valuation.at_least(2L * r);
    return res;
}

/// binom(2mp^r, mp^r) = binom(2mp^(r-1), mp^(r-1)) mod p^(3r).
inline CongruenceWitness lemma_reduce_check(u64 p, u64 m, unsigned r) {
    require_prime(p);
    if (p <= 3 || r < 1) throw std::invalid_argument("lemma needs p > 3 and r >= 1");
    u64 n_hi = m * u64_pow(p, r);
    u64 n_lo = m * u64_pow(p, r - 1);
    CongruenceWitness w;
    w.statement = StatementId::lemma_reduce;
    w.p = p;
    w.m = m;
    w.r = r;
    w.lhs = binomial_exact(2 * n_hi, static_cast<i64>(n_hi));
    w.rhs = binomial_exact(2 * n_lo, static_cast<i64>(n_lo));
    w.difference = w.lhs - w.rhs;
    w.required_valuation = 3L * r;
    w.attained = vp(w.difference, p);
    w.finalize();
    return w;
}

/// The factorization used to prove the reduction lemma:
/// binom(mp^r, k) = binom(mp^(r-1), k/p) g*_10(mp^r, k) for p | k.
inline bool lemma_proof_identity_check(u64 p, u64 m, unsigned r, u64 k) {
    require_prime(p);
    if (r < 1) throw std::invalid_argument("lemma identity needs r >= 1");
    if (k % p != 0) throw std::invalid_argument("lemma identity requires p | k");
    u64 n = m * u64_pow(p, r);
    if (k > n) throw std::invalid_argument("lemma identity requires k <= m p^r");
    Rat lhs(binomial_exact(n, static_cast<i64>(k)));
    Rat rhs = Rat(binomial_exact(m * u64_pow(p, r - 1), static_cast<i64>(k / p))) *
              g_star(1, 0, p, Int(static_cast<unsigned long>(n)), k);
    return lhs == rhs;
}

}  // namespace cforge
