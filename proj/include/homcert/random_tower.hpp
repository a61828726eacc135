#pragma once

// Seeded random witness towers, used by the verification harnesses and the
// randomized suites.  Glue maps are uniform over the chain-map space of the
// two realized subtowers, so nontrivial extensions appear whenever they exist.

#include "homcert/rng.hpp"
#include "homcert/tower.hpp"

namespace homcert {

struct RandomTowerOptions {
    int depth = 3;
    int shift_lo = 0;
    int shift_hi = 0;
    int max_multiplicity = 2;
    int max_summands = 2;
    long glue_magnitude = 2;
    bool left_associated = false;  // force (((L*L)*L)*...) shapes
};

inline WitnessTower::Ptr random_tower(const PoolPtr& pool, Rng& rng,
                                      const RandomTowerOptions& opt) {
    if (opt.depth < 1) throw Error("random tower depth must be >= 1");
    if (opt.depth == 1) {
        int count = int(rng.range(1, opt.max_summands));
        std::vector<LeafSummand> summands;
        for (int k = 0; k < count; ++k)
            summands.push_back(LeafSummand{int(rng.range(0, long(pool->entries.size()) - 1)),
                                           int(rng.range(opt.shift_lo, opt.shift_hi)),
                                           int(rng.range(1, opt.max_multiplicity))});
        return WitnessTower::leaf(pool, std::move(summands));
    }
    RandomTowerOptions sub = opt;
    int left_depth = opt.left_associated ? opt.depth - 1 : int(rng.range(1, opt.depth - 1));
    sub.depth = left_depth;
    auto left = random_tower(pool, rng, sub);
    sub.depth = opt.depth - left_depth;
    auto right = random_tower(pool, rng, sub);
    ChainMap glue = random_chain_map(shift(right->realize(), -1), left->realize(), rng,
                                     opt.glue_magnitude);
    return WitnessTower::node(left, right, std::move(glue));
}

}  // namespace homcert
