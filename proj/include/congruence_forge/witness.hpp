#pragma once

// Machine-readable record of one congruence check: required modulus exponent
// versus the attained p-adic valuation.

#include <optional>
#include <string>

#include "congruence_forge/common.hpp"
#include "congruence_forge/padic.hpp"

namespace cforge {

enum class StatementId { thm_main, cor_three, eq1_beukers, eq2_sb, lemma_reduce };

inline const char* statement_name(StatementId id) {
    switch (id) {
        case StatementId::thm_main: return "thm_main";
        case StatementId::cor_three: return "cor_three";
        case StatementId::eq1_beukers: return "eq1_beukers";
        case StatementId::eq2_sb: return "eq2_sb";
        case StatementId::lemma_reduce: return "lemma_reduce";
    }
    return "unknown";
}

inline std::optional<StatementId> statement_from_name(const std::string& s) {
    if (s == "thm_main" || s == "thm") return StatementId::thm_main;
    if (s == "cor_three" || s == "cor") return StatementId::cor_three;
    if (s == "eq1_beukers" || s == "eq1") return StatementId::eq1_beukers;
    if (s == "eq2_sb" || s == "eq2") return StatementId::eq2_sb;
    if (s == "lemma_reduce" || s == "lemma") return StatementId::lemma_reduce;
    return std::nullopt;
}

enum class ScanMode { exact, modular };

inline const char* mode_name(ScanMode m) { return m == ScanMode::exact ? "exact" : "modular"; }

struct CongruenceWitness {
    StatementId statement = StatementId::thm_main;
    u64 p = 0;
    u64 m = 0;
    unsigned r = 0;
    std::optional<unsigned> A;
    std::optional<unsigned> B;
    std::optional<unsigned> weight;          // cor_three only
    std::optional<std::string> character;    // cor_three only
    Int lhs = 0;
    Int rhs = 0;
    Int difference = 0;   // lhs - rhs, or the full multi-term combination
    long required_valuation = 0;
    PValuation attained;
    bool pass = false;
    bool boundary_convention_used = false;
    ScanMode mode = ScanMode::exact;
    unsigned residue_width = 0;              // K, modular mode only

    void finalize() { pass = attained.at_least(required_valuation); }

    // attained - required; nullopt when the difference vanished entirely
    std::optional<long> margin() const {
        if (attained.infinite) return std::nullopt;
        return attained.value - required_valuation;
    }

    auto sort_key() const {
        return std::tuple(static_cast<int>(statement), p, m, r, A.value_or(0), B.value_or(0),
                          weight.value_or(0), character.value_or(""));
    }
};

}  // namespace cforge
