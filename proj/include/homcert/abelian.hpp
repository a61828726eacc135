#pragma once

// Finitely generated abelian groups in canonical form: a free rank plus a
// divisibility chain of invariant factors d1 | d2 | ..., each >= 2.  The same
// struct doubles as "F_p vector space of dimension free_rank" for the field
// backend (empty torsion there).

#include "homcert/int.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homcert {

struct FGAbelianGroup {
    long free_rank = 0;
    std::vector<Int> torsion;  // ascending divisibility chain, entries >= 2

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    // Least N > 0 with N*G = 0; absent when the group has free rank.
    std::optional<Int> exponent() const {
        if (free_rank > 0) return std::nullopt;
        if (torsion.empty()) return Int(1);
        return torsion.back();
    }

    std::optional<Int> order() const {
        if (free_rank > 0) return std::nullopt;
        Int n = 1;
        for (const Int& d : torsion) n *= d;
        return n;
    }

    bool operator==(const FGAbelianGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const FGAbelianGroup& o) const { return !(*this == o); }

    std::string describe() const {
        if (is_trivial()) return "0";
        std::string s;
        if (free_rank == 1) s = "Z";
        else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
        for (const Int& d : torsion) {
            if (!s.empty()) s += " + ";
            s += "Z/" + to_decimal(d);
        }
        return s;
    }
};

inline std::map<Int, int> factorize(Int n) {
    if (n < 1) throw Error("factorize expects a positive integer");
    std::map<Int, int> out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    if (n > 1) ++out[n];
    return out;
}

// Rebuilds the canonical invariant-factor chain from a multiset of prime
// powers; used to put direct sums back in canonical form.
inline std::vector<Int> invariant_factors_from_prime_powers(const std::map<Int, std::vector<int>>& exps_by_prime) {
    size_t slots = 0;
    for (const auto& [p, exps] : exps_by_prime) slots = std::max(slots, exps.size());
    std::vector<Int> chain(slots, Int(1));  // chain[0] = largest factor
    for (const auto& [p, exps] : exps_by_prime) {
        std::vector<int> sorted = exps;
        std::sort(sorted.rbegin(), sorted.rend());
        for (size_t k = 0; k < sorted.size(); ++k) chain[k] *= int_pow(p, static_cast<unsigned long>(sorted[k]));
    }
    std::reverse(chain.begin(), chain.end());
    while (!chain.empty() && chain.front() == 1) chain.erase(chain.begin());
    return chain;
}

inline FGAbelianGroup direct_sum(const FGAbelianGroup& x, const FGAbelianGroup& y) {
    std::map<Int, std::vector<int>> exps;
    for (const auto& list : {x.torsion, y.torsion})
        for (const Int& d : list)
            for (const auto& [p, e] : factorize(d)) exps[p].push_back(e);
    FGAbelianGroup out;
    out.free_rank = x.free_rank + y.free_rank;
    out.torsion = invariant_factors_from_prime_powers(exps);
    return out;
}

// Primes dividing some invariant factor.
inline std::vector<Int> torsion_primes(const FGAbelianGroup& g) {
    std::map<Int, int> seen;
    for (const Int& d : g.torsion)
        for (const auto& [p, e] : factorize(d)) seen[p] = 1;
    std::vector<Int> out;
    for (const auto& [p, one] : seen) out.push_back(p);
    return out;
}

}  // namespace homcert
