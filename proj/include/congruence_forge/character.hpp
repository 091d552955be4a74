#pragma once

// Tabulated Dirichlet characters and the non-cuspidal eigenform parameters
// built from them.

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "congruence_forge/common.hpp"

namespace cforge {

// Completely multiplicative on residues coprime to the modulus, zero
// elsewhere. Values are tabulated per residue class; the constructor rejects
// tables that break either rule.
class DirichletCharacter {
public:
    DirichletCharacter(unsigned modulus, std::vector<int> values, std::string name)
        : modulus_(modulus), values_(std::move(values)), name_(std::move(name)) {
        if (modulus_ == 0 || values_.size() != modulus_)
            throw std::invalid_argument("character table must cover residues 0..modulus-1");
        for (unsigned a = 0; a < modulus_; ++a) {
            bool coprime = std::gcd(a == 0 ? modulus_ : a, modulus_) == 1;
            if (!coprime && values_[a] != 0)
                throw std::invalid_argument("character must vanish off the unit group");
            if (coprime && values_[a] == 0)
                throw std::invalid_argument("character must be nonzero on the unit group");
        }
        for (unsigned a = 0; a < modulus_; ++a)
            for (unsigned b = 0; b < modulus_; ++b)
                if (values_[(a * b) % modulus_] != values_[a] * values_[b] &&
                    values_[a] != 0 && values_[b] != 0)
                    throw std::invalid_argument("character table is not multiplicative");
    }

    static DirichletCharacter trivial() { return {1, {1}, "trivial"}; }

    // chi_{-3}: the quadratic character mod 3
    static DirichletCharacter quadratic_mod3() { return {3, {0, 1, -1}, "mod3"}; }

    static DirichletCharacter from_name(const std::string& name) {
        if (name == "trivial") return trivial();
        if (name == "mod3") return quadratic_mod3();
        throw std::invalid_argument("unknown character '" + name + "' (expected trivial or mod3)");
    }

    int operator()(u64 n) const { return values_[n % modulus_]; }
    unsigned modulus() const { return modulus_; }
    const std::string& name() const { return name_; }

private:
    unsigned modulus_;
    std::vector<int> values_;
    std::string name_;
};

/// Weight, character, and level of a non-cuspidal eigenform; its prime
/// coefficients are gamma(p) = 1 + chi(p) p^(k-1).
struct EigenformSpec {
    unsigned weight;
    DirichletCharacter chi;
    unsigned level = 1;
};

inline Int eigenform_gamma_prime(const EigenformSpec& spec, u64 p) {
    require_prime(p);
    if (spec.weight < 1) throw std::invalid_argument("eigenform weight must be >= 1");
    return 1 + Int(spec.chi(p)) * int_pow(Int(static_cast<unsigned long>(p)), spec.weight - 1);
}

}  // namespace cforge
