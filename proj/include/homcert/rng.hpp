#pragma once

// Seeded deterministic randomness for the verification harnesses and the
// property suites.  mt19937_64 with hand-rolled range reduction so streams
// are identical across standard libraries.

#include "homcert/hom_complex.hpp"

#include <cstdint>
#include <random>

namespace homcert {

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t next() { return engine(); }

    long range(long lo, long hi) {  // inclusive
        if (hi < lo) throw Error("empty random range");
        return lo + long(next() % std::uint64_t(hi - lo + 1));
    }

    Int scalar(const Ring& ring, long maxabs) {
        if (ring.is_field()) return ring.reduce(Int(range(0, maxabs)));
        return Int(range(-maxabs, maxabs));
    }
};

// A uniformly random chain map X -> Y: random coordinates against a basis of
// the cocycle space of Hom^0(X, Y).
inline ChainMap random_chain_map(const BoundedComplex& x, const BoundedComplex& y, Rng& rng,
                                 long maxabs = 2) {
    HomLevel cur = hom_level(x, y, 0);
    HomLevel next = hom_level(x, y, 1);
    ExactMatrix cocycles = kernel_basis(hom_delta(x, y, 0, cur, next));
    ExactMatrix coeff(x.base().ring, cocycles.cols, 1);
    for (int i = 0; i < cocycles.cols; ++i) coeff.at(i, 0) = rng.scalar(x.base().ring, maxabs);
    ExactMatrix coords = mul(cocycles, coeff);
    return hom_vector_to_chain_map(x, y, 0, cur, coords);
}

}  // namespace homcert
