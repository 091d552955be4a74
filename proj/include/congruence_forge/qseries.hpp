#pragma once

// Truncated formal q-series with exact rational coefficients: eta quotients,
// Eisenstein series with character, composition, and the logarithmic
// derivative ratio. Everything is formal in q; nothing is ever evaluated on
// the upper half-plane.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congruence_forge/character.hpp"
#include "congruence_forge/common.hpp"
#include "congruence_forge/sequences.hpp"

namespace cforge {

// q^offset * sum c[i] q^i, with coefficients exact through absolute order
// offset + size - 1. Arithmetic tracks how far results stay exact, so a
// too-short operand narrows the window instead of silently corrupting tails.
class PowerSeries {
public:
    PowerSeries(long offset, std::vector<Rat> coeffs) : offset_(offset), c_(std::move(coeffs)) {}

    static PowerSeries constant(const Rat& value, size_t window) {
        std::vector<Rat> c(window, Rat(0));
        if (window > 0) c[0] = value;
        return {0, std::move(c)};
    }

    long offset() const { return offset_; }
    size_t size() const { return c_.size(); }
    long known_through() const { return offset_ + static_cast<long>(c_.size()) - 1; }

    const Rat& rel(size_t i) const { return c_[i]; }
    Rat& rel(size_t i) { return c_[i]; }

    /// Coefficient of q^order; zero below the offset, range error past the window.
    Rat coefficient(long order) const {
        if (order > known_through())
            throw std::out_of_range("coefficient beyond series truncation");
        if (order < offset_) return Rat(0);
        return c_[static_cast<size_t>(order - offset_)];
    }

    /// Dense coefficients of q^0 .. q^(n-1).
    std::vector<Rat> dense(size_t n) const {
        std::vector<Rat> out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) out.push_back(coefficient(static_cast<long>(i)));
        return out;
    }

    // strips leading zero coefficients into the offset
    PowerSeries normalized() const {
        size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        return {offset_ + static_cast<long>(lead), std::vector<Rat>(c_.begin() + lead, c_.end())};
    }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    PowerSeries truncated(long through) const {
        long len = through - offset_ + 1;
        if (len < 0) len = 0;
        if (static_cast<size_t>(len) >= c_.size()) return *this;
        return {offset_, std::vector<Rat>(c_.begin(), c_.begin() + len)};
    }

private:
    long offset_;
    std::vector<Rat> c_;
};

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    long off = std::min(a.offset(), b.offset());
    long through = std::min(a.known_through(), b.known_through());
    long len = std::max<long>(0, through - off + 1);
    std::vector<Rat> c(static_cast<size_t>(len), Rat(0));
    for (long i = 0; i < len; ++i) {
        long order = off + i;
        if (order >= a.offset() && order <= a.known_through()) c[i] += a.rel(order - a.offset());
        if (order >= b.offset() && order <= b.known_through()) c[i] += b.rel(order - b.offset());
    }
    return {off, std::move(c)};
}

inline PowerSeries operator*(const Rat& s, const PowerSeries& a) {
    std::vector<Rat> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = s * a.rel(i);
    return {a.offset(), std::move(c)};
}

inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + Rat(-1) * b; }

inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    size_t len = std::min(a.size(), b.size());
    std::vector<Rat> c(len, Rat(0));
    for (size_t i = 0; i < len; ++i) {
        if (a.rel(i) == 0) continue;
        for (size_t j = 0; i + j < len; ++j) {
            if (b.rel(j) == 0) continue;
            c[i + j] += a.rel(i) * b.rel(j);
        }
    }
    return {a.offset() + b.offset(), std::move(c)};
}

/// Multiplicative inverse; requires a nonzero leading coefficient after
/// offset normalization.
inline PowerSeries invert(const PowerSeries& a) {
    PowerSeries n = a.normalized();
    if (n.size() == 0 || n.rel(0) == 0)
        throw std::domain_error("cannot invert a series with no visible nonzero term");
    std::vector<Rat> b(n.size(), Rat(0));
    Rat lead_inv = Rat(1) / n.rel(0);
    b[0] = lead_inv;
    for (size_t k = 1; k < n.size(); ++k) {
        Rat acc(0);
        for (size_t i = 1; i <= k; ++i) acc += n.rel(i) * b[k - i];
        b[k] = -acc * lead_inv;
    }
    return {-n.offset(), std::move(b)};
}

/// q d/dq: multiplies the coefficient of q^n by n.
inline PowerSeries q_dq(const PowerSeries& a) {
    std::vector<Rat> c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = Rat(a.offset() + static_cast<long>(i)) * a.rel(i);
    return {a.offset(), std::move(c)};
}

/// q -> q^m substitution.
inline PowerSeries substitute_power(const PowerSeries& a, unsigned m) {
    if (m == 0) throw std::invalid_argument("substitution power must be >= 1");
    std::vector<Rat> c(a.size() * m, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) c[i * m] = a.rel(i);
    return {a.offset() * static_cast<long>(m), std::move(c)};
}

inline std::optional<long> first_difference(const PowerSeries& a, const PowerSeries& b, long through) {
    for (long n = 0; n <= through; ++n)
        if (a.coefficient(n) != b.coefficient(n)) return n;
    return std::nullopt;
}

/// sum_n outer[n] * inner^n through q^(N-1); Horner accumulation. A zero inner
/// collapses to the constant outer[0]; a visible constant term is an error.
inline PowerSeries compose(const std::vector<Rat>& outer, const PowerSeries& inner, size_t N) {
    if (N == 0) throw std::invalid_argument("composition window must be >= 1");
    PowerSeries norm = inner.normalized();
    if (norm.is_zero()) return PowerSeries::constant(outer.empty() ? Rat(0) : outer[0], N);
    if (norm.offset() < 1) throw std::domain_error("composition requires inner order >= 1");
    std::vector<Rat> x = inner.dense(N);
    std::vector<Rat> acc(N, Rat(0));
    size_t top = std::min(outer.size(), N);
    for (size_t step = top; step-- > 0;) {
        // acc = acc * x + outer[step], truncated at N coefficients
        std::vector<Rat> next(N, Rat(0));
        for (size_t i = 0; i < N; ++i) {
            if (acc[i] == 0) continue;
            for (size_t j = 0; i + j < N; ++j) {
                if (x[j] == 0) continue;
                next[i + j] += acc[i] * x[j];
            }
        }
        next[0] += outer[step];
        acc.swap(next);
    }
    return {0, std::move(acc)};
}

/// (q dt/dq) / t for a series with leading term at q^1.
inline PowerSeries log_derivative_ratio(const PowerSeries& t, size_t N) {
    PowerSeries norm = t.normalized();
    if (norm.is_zero() || norm.size() == 0) throw std::domain_error("log derivative of zero series");
    if (norm.offset() != 1) throw std::domain_error("log derivative ratio expects leading order q^1");
    return (q_dq(norm) * invert(norm)).truncated(static_cast<long>(N) - 1);
}

// ---- eta quotients ----

/// Finite product prod eta(d z)^e as (multiplier, exponent) pairs.
struct EtaQuotient {
    struct Factor {
        unsigned multiplier;
        int exponent;
    };
    std::vector<Factor> factors;

    long total_weight_24() const {
        long s = 0;
        for (const auto& f : factors) s += static_cast<long>(f.multiplier) * f.exponent;
        return s;
    }
};

inline EtaQuotient eta6_4z() { return {{{4, 6}}}; }
// t(z), the hauptmodul-style coordinate on level 6
inline EtaQuotient eta_t_level6() { return {{{1, 4}, {6, 8}, {2, -8}, {3, -4}}}; }
// the generating function of C(n, 2, 1) as an eta quotient
inline EtaQuotient eta_gf_level6() { return {{{2, 6}, {3, 1}, {1, -3}, {6, -2}}}; }

/// Expands to a q-series exact through q^(N-1). The q^(1/24) prefactors must
/// combine to an integral power, which becomes the series offset.
inline PowerSeries eta_quotient_expand(const EtaQuotient& quot, size_t N) {
    long w = quot.total_weight_24();
    if (w % 24 != 0)
        throw std::domain_error("eta quotient has fractional total q-power (sum d*e = " +
                                std::to_string(w) + ", not divisible by 24)");
    long offset = w / 24;
    long rel_len = static_cast<long>(N) - offset;
    if (rel_len <= 0) return {offset, {}};
    size_t len = static_cast<size_t>(rel_len);

    // assemble numerator and denominator Euler products separately, then one
    // division at the end
    std::vector<Rat> num(len, Rat(0)), den(len, Rat(0));
    num[0] = 1;
    den[0] = 1;
    auto apply_factor = [&](std::vector<Rat>& poly, unsigned d, unsigned e) {
        // multiply by prod_{n >= 1} (1 - q^(dn))^e, truncated
        for (unsigned rep = 0; rep < e; ++rep)
            for (size_t n = 1; n * d < len; ++n)
                for (size_t i = len; i-- > n * d;) poly[i] -= poly[i - n * d];
    };
    for (const auto& f : quot.factors) {
        if (f.multiplier == 0) throw std::invalid_argument("eta multiplier must be >= 1");
        if (f.exponent >= 0)
            apply_factor(num, f.multiplier, static_cast<unsigned>(f.exponent));
        else
            apply_factor(den, f.multiplier, static_cast<unsigned>(-f.exponent));
    }
    PowerSeries unit = PowerSeries(0, std::move(num)) * invert(PowerSeries(0, std::move(den)));
    std::vector<Rat> c(len, Rat(0));
    for (size_t i = 0; i < len && i < unit.size(); ++i) c[i] = unit.rel(i);
    return {offset, std::move(c)};
}

// Cusp form coefficient table: eta^6(4z) = sum a(n) q^n.
class Eta6Table {
public:
    explicit Eta6Table(size_t order) : series_(eta_quotient_expand(eta6_4z(), order)), order_(order) {}

    /// a(n); range error past the expanded order.
    Int a(u64 n) const {
        if (n < 1 || n >= order_)
            throw std::out_of_range("a(n) beyond expanded order; request a larger table");
        Rat c = series_.coefficient(static_cast<long>(n));
        return c.get_num();  // integral by construction
    }

    size_t order() const { return order_; }

private:
    PowerSeries series_;
    size_t order_;
};

inline Int eta6_4z_coefficient(u64 n) {
    return Eta6Table(static_cast<size_t>(n) + 1).a(n);
}

// ---- divisor sums and Eisenstein-type series ----

/// sigma_chi(n) = sum_{d | n} chi(d) d^w.
inline Int sigma_chi(u64 n, const DirichletCharacter& chi, unsigned w) {
    if (n < 1) throw std::invalid_argument("divisor sum needs n >= 1");
    Int s = 0;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += Int(chi(d)) * int_pow(Int(static_cast<unsigned long>(d)), w);
        u64 e = n / d;
        if (e != d) s += Int(chi(e)) * int_pow(Int(static_cast<unsigned long>(e)), w);
    }
    return s;
}

/// c0 + sum_{n>=1} sigma_chi(n) q^n through q^(N-1).
inline PowerSeries eisenstein_series(const DirichletCharacter& chi, unsigned w, const Rat& c0, size_t N) {
    if (N < 1) throw std::invalid_argument("series window must be >= 1");
    std::vector<Rat> c(N, Rat(0));
    c[0] = c0;
    // sieve the divisor sums in one pass
    for (u64 d = 1; d < N; ++d) {
        int x = chi(d);
        if (x == 0) continue;
        Int dw = Int(x) * int_pow(Int(static_cast<unsigned long>(d)), w);
        for (u64 n = d; n < N; n += d) c[n] += Rat(dw);
    }
    return {0, std::move(c)};
}

/// gamma(0..N-1) with gamma(n) = sum_{d|n} chi(d) d^(k-1) for n >= 1.
inline std::vector<Int> eigenform_coefficients(const EigenformSpec& spec, size_t N, Int gamma0 = 0) {
    if (spec.weight < 1) throw std::invalid_argument("eigenform weight must be >= 1");
    std::vector<Int> g(N, Int(0));
    if (N == 0) return g;
    g[0] = std::move(gamma0);
    for (u64 n = 1; n < N; ++n) g[n] = sigma_chi(n, spec.chi, spec.weight - 1);
    return g;
}

// ---- the generating-function parametrization and the Remark identity ----

struct GfMatchReport {
    long checked_through = 0;           // compared q^0 .. q^checked_through
    std::optional<long> first_mismatch;
    Rat lhs_at_mismatch, rhs_at_mismatch;
    bool matched() const { return !first_mismatch.has_value(); }
};

/// Compares sum_n C(n,2,1) t(q)^n against the eta-quotient form of the
/// generating function, coefficientwise through q^(N-1).
inline GfMatchReport verify_gf_parametrization(size_t N) {
    if (N < 1) throw std::invalid_argument("window must be >= 1");
    PowerSeries t = eta_quotient_expand(eta_t_level6(), N);
    std::vector<Rat> outer;
    outer.reserve(N);
    SequenceParams params(2, 1);
    for (size_t n = 0; n < N; ++n) outer.emplace_back(sequence_C(n, params));
    PowerSeries lhs = compose(outer, t, N);
    PowerSeries rhs = eta_quotient_expand(eta_gf_level6(), N);
    GfMatchReport rep;
    rep.checked_through = static_cast<long>(N) - 1;
    rep.first_mismatch = first_difference(lhs, rhs, rep.checked_through);
    if (rep.first_mismatch) {
        rep.lhs_at_mismatch = lhs.coefficient(*rep.first_mismatch);
        rep.rhs_at_mismatch = rhs.coefficient(*rep.first_mismatch);
    }
    return rep;
}

enum class RemarkRelation { printed_identity, global_sign_flip, mismatch };

struct RemarkReport {
    RemarkRelation relation = RemarkRelation::mismatch;
    long checked_through = 0;
    Rat lhs_constant, rhs_constant;
    std::optional<long> first_not_equal;    // printed identity fails here
    std::optional<long> first_not_negated;  // sign-flipped identity fails here
    Rat lhs_at_report, rhs_at_report;
};

/// Both sides of E(z) + 8 E(2z) = f(q) (q dt/dq)/t, compared coefficientwise.
/// The report states the relation that actually holds; the printed identity is
/// never asserted (the constant terms already disagree: -1 versus +1).
inline RemarkReport verify_remark_identity(size_t N) {
    if (N < 1) throw std::invalid_argument("window must be >= 1");
    DirichletCharacter chi = DirichletCharacter::quadratic_mod3();
    PowerSeries E = eisenstein_series(chi, 2, make_rational(-1, 9), N);
    PowerSeries lhs = (E + Rat(8) * substitute_power(E, 2)).truncated(static_cast<long>(N) - 1);
    PowerSeries t = eta_quotient_expand(eta_t_level6(), N + 1);
    PowerSeries f = eta_quotient_expand(eta_gf_level6(), N);
    PowerSeries rhs = (f * log_derivative_ratio(t, N)).truncated(static_cast<long>(N) - 1);

    RemarkReport rep;
    rep.checked_through = static_cast<long>(N) - 1;
    rep.lhs_constant = lhs.coefficient(0);
    rep.rhs_constant = rhs.coefficient(0);
    rep.first_not_equal = first_difference(lhs, rhs, rep.checked_through);
    rep.first_not_negated = first_difference(lhs, Rat(-1) * rhs, rep.checked_through);
    if (!rep.first_not_equal) {
        rep.relation = RemarkRelation::printed_identity;
    } else if (!rep.first_not_negated) {
        rep.relation = RemarkRelation::global_sign_flip;
        rep.lhs_at_report = lhs.coefficient(*rep.first_not_equal);
        rep.rhs_at_report = rhs.coefficient(*rep.first_not_equal);
    } else {
        rep.relation = RemarkRelation::mismatch;
        long at = std::max(*rep.first_not_equal, *rep.first_not_negated);
        rep.lhs_at_report = lhs.coefficient(at);
        rep.rhs_at_report = rhs.coefficient(at);
    }
    return rep;
}

}  // namespace cforge
