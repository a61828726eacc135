#pragma once

// Hypothesis checking for the approximation results: weak negativity,
// negativity, and the ordered-partition condition, decided exactly for a
// finite generator system.  Every reported vanishing is window-certified:
// degrees outside hom_window are provably zero, the rest are computed.

#include "homcert/random_tower.hpp"

#include <functional>

namespace homcert {

struct GeneratorSystem {
    std::shared_ptr<const BaseCategory> base;
    std::vector<std::pair<std::string, BoundedComplex>> generators;
    std::vector<std::vector<int>> parts;  // ordered partition by generator index

    void validate() const {
        if (generators.empty()) throw Error("generator system needs at least one generator");
        std::vector<int> seen(generators.size(), 0);
        for (const auto& [name, g] : generators) {
            if (!g.base().same_as(*base)) throw Error("generator over the wrong base");
            if (homology_support(g).empty())
                throw Error("generator '" + name + "' is acyclic (zero object)");
        }
        for (const auto& part : parts)
            for (int idx : part) {
                if (idx < 0 || idx >= int(generators.size()))
                    throw Error("partition index out of range");
                if (seen[size_t(idx)]++) throw Error("partition repeats a generator");
            }
        for (int c : seen)
            if (!c) throw Error("partition misses a generator");
    }

    int part_of(int generator) const {
        for (size_t k = 0; k < parts.size(); ++k)
            for (int idx : parts[k])
                if (idx == generator) return int(k);
        throw Error("generator not in any part");
    }

    PoolPtr pool() const {
        auto p = std::make_shared<GeneratorPool>();
        p->entries = generators;
        return p;
    }

    // direct sum of everything, the single compact generator G
    BoundedComplex total() const {
        BoundedComplex acc = zero_complex(base);
        for (const auto& [name, g] : generators) acc = direct_sum(acc, g);
        return acc;
    }
};

inline GeneratorSystem single_part_system(std::shared_ptr<const BaseCategory> base,
                                          std::vector<std::pair<std::string, BoundedComplex>> gens) {
    GeneratorSystem s;
    s.base = std::move(base);
    s.generators = std::move(gens);
    std::vector<int> all;
    for (size_t k = 0; k < s.generators.size(); ++k) all.push_back(int(k));
    s.parts = {all};
    s.validate();
    return s;
}

struct OffendingPair {
    std::string p, q;
    int degree = 0;
    std::string hom;            // description of the nonzero group
    std::optional<ChainMap> representative;
    enum class Breaks { weak, negative, partition } breaks = Breaks::negative;
};

struct NegativityReport {
    bool weakly_negative = true;
    bool negative = true;
    bool partition_ok = true;
    std::vector<OffendingPair> offending_pairs;
};

inline NegativityReport check_negativity(const GeneratorSystem& s) {
    s.validate();
    NegativityReport report;
    for (size_t i = 0; i < s.generators.size(); ++i)
        for (size_t j = 0; j < s.generators.size(); ++j) {
            const auto& [pname, pobj] = s.generators[i];
            const auto& [qname, qobj] = s.generators[j];
            DegreeWindow w = hom_window(pobj, qobj);
            for (int n = std::max(1, w.lo); n <= w.hi; ++n) {
                HomGroup h = derived_hom(pobj, qobj, n);
                if (h.value.is_trivial()) continue;
                OffendingPair bad;
                bad.p = pname;
                bad.q = qname;
                bad.degree = n;
                bad.hom = h.value.describe();
                if (!h.basis.empty()) bad.representative = h.basis.front();
                if (n >= 2) {
                    report.weakly_negative = false;
                    report.negative = false;
                    bad.breaks = OffendingPair::Breaks::weak;
                } else {
                    report.negative = false;
                    bad.breaks = OffendingPair::Breaks::negative;
                    if (s.part_of(int(i)) <= s.part_of(int(j))) {
                        report.partition_ok = false;
                        bad.breaks = OffendingPair::Breaks::partition;
                    }
                }
                report.offending_pairs.push_back(std::move(bad));
            }
        }
    return report;
}

// Randomized check that orthogonality propagates from leaves to arbitrary
// finite towers: with A-leaves pairwise orthogonal to B in all degrees, every
// generated tower must satisfy Hom(tower, b, n) = 0 across the whole window.
// A violation would witness an implementation bug, never a math failure.
struct PropagationReport {
    enum class Status { ok, hypothesis_failed };
    Status status = Status::ok;
    std::string detail;                 // set on hypothesis failure
    int trials_run = 0;
    int checks_run = 0;
    std::vector<std::string> violations;
    std::uint64_t seed = 0;
};

inline PropagationReport verify_orthogonality_propagation(
    const std::vector<WitnessTower::Ptr>& a_towers, const std::vector<BoundedComplex>& b_objects,
    int trials, std::uint64_t seed) {
    PropagationReport report;
    report.seed = seed;
    if (a_towers.empty()) return report;  // vacuous

    // distinct (generator, shift) leaves across all input towers
    PoolPtr pool = a_towers.front()->pool();
    std::vector<LeafSummand> leaves;
    for (const auto& t : a_towers) {
        if (!(t->pool() == pool) && !(*t->pool() == *pool))
            throw Error("towers over different pools");
        for (LeafSummand s : t->flattened_leaves()) {
            s.multiplicity = 1;
            if (std::find(leaves.begin(), leaves.end(), s) == leaves.end()) leaves.push_back(s);
        }
    }

    for (const LeafSummand& s : leaves) {
        BoundedComplex leaf_obj = shift(pool->entries[size_t(s.generator)].second, s.shift);
        for (size_t bi = 0; bi < b_objects.size(); ++bi) {
            DegreeWindow w = hom_window(leaf_obj, b_objects[bi]);
            for (int n = w.lo; n <= w.hi; ++n) {
                HomGroup h = derived_hom(leaf_obj, b_objects[bi], n);
                if (!h.value.is_trivial()) {
                    report.status = PropagationReport::Status::hypothesis_failed;
                    report.detail = "Hom(" + pool->entries[size_t(s.generator)].first + "[" +
                                    std::to_string(s.shift) + "], B[" + std::to_string(bi) +
                                    "] @ degree " + std::to_string(n) + ") = " + h.value.describe();
                    return report;
                }
            }
        }
    }

    Rng rng(seed);
    auto check_tower = [&](const WitnessTower::Ptr& t) {
        for (size_t bi = 0; bi < b_objects.size(); ++bi) {
            DegreeWindow w = hom_window(t->realize(), b_objects[bi]);
            for (int n = w.lo; n <= w.hi; ++n) {
                ++report.checks_run;
                HomGroup h = derived_hom(t->realize(), b_objects[bi], n);
                if (!h.value.is_trivial())
                    report.violations.push_back("tower vs B[" + std::to_string(bi) +
                                                "] at degree " + std::to_string(n) + ": " +
                                                h.value.describe());
            }
        }
    };
    for (const auto& t : a_towers) check_tower(t);

    // random towers restricted to the collected leaf set
    std::function<WitnessTower::Ptr(int)> make = [&](int depth) -> WitnessTower::Ptr {
        if (depth == 1) {
            const LeafSummand& pick = leaves[size_t(rng.range(0, long(leaves.size()) - 1))];
            LeafSummand s = pick;
            s.multiplicity = int(rng.range(1, 2));
            return WitnessTower::leaf(pool, {s});
        }
        int dl = int(rng.range(1, depth - 1));
        auto left = make(dl);
        auto right = make(depth - dl);
        ChainMap glue = random_chain_map(shift(right->realize(), -1), left->realize(), rng, 2);
        return WitnessTower::node(left, right, std::move(glue));
    };
    for (int t = 0; t < trials; ++t) {
        check_tower(make(int(rng.range(1, 4))));
        ++report.trials_run;
    }
    return report;
}

}  // namespace homcert
