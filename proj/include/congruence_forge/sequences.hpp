#pragma once

// Binomial-sum sequences: B(n) from the zeta(2) irrationality proof, the
// two-exponent family C(n, A, B), and integral solutions of the
// (a, b, lambda) three-term recurrence, with exact and mod-p^K paths.

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "congruence_forge/common.hpp"
#include "congruence_forge/padic.hpp"

namespace cforge {

/// Exponent pair selecting a C(., A, B) family.
struct SequenceParams {
    unsigned A = 2;
    unsigned B = 1;

    SequenceParams(unsigned a, unsigned b) : A(a), B(b) {
        if (A < 1) throw std::invalid_argument("sequence exponent A must be >= 1");
    }
};

/// Rational recurrence parameters; b must be nonzero.
struct ZagierTriple {
    Rat a, b, lambda;

    ZagierTriple(Rat a_, Rat b_, Rat lambda_)
        : a(std::move(a_)), b(std::move(b_)), lambda(std::move(lambda_)) {
        if (b == 0) throw std::invalid_argument("recurrence parameter b must be nonzero");
    }
};

/// B(n) = sum_j binom(n+j, j) binom(n, j)^2 by direct summation.
inline Int apery_B(u64 n) {
    Int sum = 0;
    for (u64 j = 0; j <= n; ++j) {
        Int t = binomial_exact(n + j, static_cast<i64>(j));
        Int c = binomial_exact(n, static_cast<i64>(j));
        t *= c;
        t *= c;
        sum += t;
    }
    return sum;
}

/// (n+1)^2 B(n+1) = (11n^2 + 11n + 3) B(n) + n^2 B(n-1) against summation
/// values, for 1 <= n < nmax.
inline bool apery_B_recurrence_check(u64 nmax) {
    if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
    Int prev = apery_B(0), cur = apery_B(1);
    for (u64 n = 1; n < nmax; ++n) {
        Int next = apery_B(n + 1);
        Int lhs = Int(n + 1) * Int(n + 1) * next;
        Int rhs = Int(11 * n * n + 11 * n + 3) * cur + Int(n * n) * prev;
        if (lhs != rhs) return false;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return true;
}

/// C(n, A, B) = sum_k binom(n, k)^A binom(2k, k)^B, exact. An optional
/// central-binomial table (binom(2k, k) at index k) avoids recomputation
/// across cells; entries beyond the table are computed directly.
inline Int sequence_C(u64 n, const SequenceParams& params, const std::vector<Int>* central = nullptr) {
    Int sum = 0;
    Int row = 1;  // binom(n, k), stepped multiplicatively
    for (u64 k = 0; k <= n; ++k) {
        if (k > 0) {
            row *= static_cast<unsigned long>(n - k + 1);
            mpz_divexact_ui(row.get_mpz_t(), row.get_mpz_t(), static_cast<unsigned long>(k));
        }
        Int term = params.A == 1 ? row : int_pow(row, params.A);
        if (params.B > 0) {
            Int cb = (central && k < central->size()) ? (*central)[k]
                                                      : binomial_exact(2 * k, static_cast<i64>(k));
            term *= params.B == 1 ? cb : int_pow(cb, params.B);
        }
        sum += term;
    }
    return sum;
}

/// C(n, A, B) mod p^K via the prime-power binomial kernel.
inline u64 sequence_C_mod(u64 n, const SequenceParams& params, u64 p, unsigned K) {
    BinomialModContext ctx(p, K, 2 * n);
    const u64 q = ctx.modulus();
    u64 sum = 0;
    for (u64 k = 0; k <= n; ++k) {
        u64 term = powmod_u64(ctx.binomial(n, static_cast<i64>(k)), params.A, q);
        if (params.B > 0)
            term = mulmod_u64(term, powmod_u64(ctx.binomial(2 * k, static_cast<i64>(k)), params.B, q), q);
        sum = (sum + term) % q;
    }
    return sum;
}

/// B(n) mod p^K.
inline u64 apery_B_mod(u64 n, u64 p, unsigned K) {
    BinomialModContext ctx(p, K, 2 * n);
    const u64 q = ctx.modulus();
    u64 sum = 0;
    for (u64 j = 0; j <= n; ++j) {
        u64 c = ctx.binomial(n, static_cast<i64>(j));
        u64 term = mulmod_u64(ctx.binomial(n + j, static_cast<i64>(j)), mulmod_u64(c, c, q), q);
        sum = (sum + term) % q;
    }
    return sum;
}

/// u(0..nmax) of b(n+1)^2 u(n+1) + (an^2 + an - lambda) u(n) + n^2 u(n-1) = 0
/// with u(0) = 1; the n = 0 instance forces u(1) = lambda / b.
inline std::vector<Rat> zagier_u_range(const ZagierTriple& t, u64 nmax) {
    std::vector<Rat> u;
    u.reserve(nmax + 1);
    u.emplace_back(1);
    for (u64 n = 0; n < nmax; ++n) {
        Rat mid = (t.a * Rat(static_cast<unsigned long>(n * n + n)) - t.lambda) * u[n];
        if (n >= 1) mid += Rat(static_cast<unsigned long>(n * n)) * u[n - 1];
        Rat den = t.b * Rat(static_cast<unsigned long>((n + 1) * (n + 1)));
        u.push_back(Rat(-mid / den));
    }
    return u;
}

inline Rat zagier_u(const ZagierTriple& t, u64 n) { return zagier_u_range(t, n).back(); }

/// Smallest n <= nmax with non-integral u(n), if any.
inline std::optional<u64> zagier_integrality_scan(const ZagierTriple& t, u64 nmax) {
    auto u = zagier_u_range(t, nmax);
    for (u64 n = 0; n <= nmax; ++n)
        if (!is_integer(u[n])) return n;
    return std::nullopt;
}

// Shared memo for the heavyweight exact sequences. The central-binomial table
// is built single-threaded (prepare_central) and read-only afterwards; value
// memos are mutex-guarded and safe for concurrent scan workers. Counters make
// recomputation observable for cache tests.
class SequenceStore {
public:
    using CKey = std::tuple<unsigned, unsigned, u64>;

    void prepare_central(u64 max_k) {
        for (u64 k = central_.size(); k <= max_k; ++k)
            central_.push_back(binomial_exact(2 * k, static_cast<i64>(k)));
    }

    Int C(u64 n, const SequenceParams& params) {
        CKey key{params.A, params.B, n};
        {
            std::lock_guard lock(mu_);
            auto it = c_memo_.find(key);
            if (it != c_memo_.end()) {
                ++hits_;
                return it->second;
            }
        }
        ++evaluations_;
        Int value = sequence_C(n, params, &central_);
        std::lock_guard lock(mu_);
        return c_memo_.emplace(key, std::move(value)).first->second;
    }

    Int B(u64 n) {
        {
            std::lock_guard lock(mu_);
            auto it = b_memo_.find(n);
            if (it != b_memo_.end()) {
                ++hits_;
                return it->second;
            }
        }
        ++evaluations_;
        Int value = apery_B(n);
        std::lock_guard lock(mu_);
        return b_memo_.emplace(n, std::move(value)).first->second;
    }

    void preload_C(unsigned A, unsigned B, u64 n, Int value) {
        std::lock_guard lock(mu_);
        c_memo_.emplace(CKey{A, B, n}, std::move(value));
    }

    void preload_B(u64 n, Int value) {
        std::lock_guard lock(mu_);
        b_memo_.emplace(n, std::move(value));
    }

    template <typename Fn>
    void for_each_C(Fn&& fn) const {
        std::lock_guard lock(mu_);
        for (const auto& [key, value] : c_memo_)
            fn(std::get<0>(key), std::get<1>(key), std::get<2>(key), value);
    }

    template <typename Fn>
    void for_each_B(Fn&& fn) const {
        std::lock_guard lock(mu_);
        for (const auto& [n, value] : b_memo_) fn(n, value);
    }

    size_t size() const {
        std::lock_guard lock(mu_);
        return c_memo_.size() + b_memo_.size();
    }

    u64 evaluations() const { return evaluations_.load(); }
    u64 cache_hits() const { return hits_.load(); }
    void reset_counters() {
        evaluations_ = 0;
        hits_ = 0;
    }

private:
    mutable std::mutex mu_;
    std::vector<Int> central_;
    std::map<CKey, Int> c_memo_;
    std::map<u64, Int> b_memo_;
    std::atomic<u64> evaluations_{0};
    std::atomic<u64> hits_{0};
};

}  // namespace cforge
