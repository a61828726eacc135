#pragma once

// Shared helpers for the test suites: quick constructors for the standard
// small complexes, random complex generators, and a long-exact-sequence
// exactness checker for triangles.

#include "homcert/resolution.hpp"
#include "homcert/rng.hpp"
#include "homcert/triangle.hpp"

namespace testutil {

using namespace homcert;

inline std::shared_ptr<const BaseCategory> integer_base() {
    static auto base = std::make_shared<BaseCategory>(BaseCategory::integers());
    return base;
}

// kA2: single arrow 1 -> 2.
inline std::shared_ptr<const BaseCategory> a2_base(long p = 2) {
    return std::make_shared<BaseCategory>(
        BaseCategory::quiver_algebra(Int(p), Quiver{2, {{1, 2}}}));
}

inline BoundedComplex free_complex(int degree, int rank) {
    return one_term_complex(integer_base(), degree, ObjectShape::free_module(rank));
}

// [Z -> Z] multiplication by n, degrees -1 and 0: the resolution of Z/n.
inline BoundedComplex cyclic_complex(long n) {
    return projective_resolution(integer_base(), FGAbelianGroup{0, {Int(n)}});
}

inline BoundedComplex simple_complex(std::shared_ptr<const BaseCategory> base, int vertex) {
    return projective_resolution(base, simple_rep(*base, vertex));
}

inline BoundedComplex projective_complex(std::shared_ptr<const BaseCategory> base, int vertex) {
    return one_term_complex(base, 0, ObjectShape{{vertex}});
}

// A random bounded complex assembled from shifted resolutions and, with some
// luck, a cone over a random chain map between two of them; this keeps d^2=0
// by construction while producing varied homology.
inline BoundedComplex random_complex(Rng& rng, std::shared_ptr<const BaseCategory> base,
                                     int max_pieces = 2, long max_tor = 6) {
    auto random_piece = [&]() {
        int deg = int(rng.range(-2, 2));
        if (!base->is_quiver()) {
            FGAbelianGroup g;
            g.free_rank = rng.range(0, 1);
            if (rng.range(0, 2) > 0) g.torsion.push_back(Int(rng.range(2, max_tor)));
            if (g.free_rank == 0 && g.torsion.empty()) g.free_rank = 1;
            return shift(projective_resolution(base, g), deg);
        }
        const Quiver& q = base->algebra->quiver;
        QuiverRep rep;
        rep.dims.resize(size_t(q.vertex_count));
        int total = 0;
        for (int& d : rep.dims) {
            d = int(rng.range(0, 1));
            total += d;
        }
        if (total == 0) rep.dims[size_t(rng.range(0, q.vertex_count - 1))] = 1;
        for (auto [s, t] : q.arrows) {
            ExactMatrix f(base->ring, rep.dims[size_t(t - 1)], rep.dims[size_t(s - 1)]);
            for (Int& v : f.a) v = rng.scalar(base->ring, 1);
            rep.arrow_maps.push_back(std::move(f));
        }
        return shift(projective_resolution(base, rep), deg);
    };

    BoundedComplex acc = random_piece();
    int pieces = int(rng.range(1, max_pieces));
    for (int k = 1; k < pieces; ++k) acc = direct_sum(acc, random_piece());
    if (rng.range(0, 1) == 1) {
        BoundedComplex other = random_piece();
        ChainMap f = random_chain_map(other, acc, rng, 2);
        acc = mapping_cone(f);
    }
    return acc;
}

// Exactness of a presented-group sequence  A --m1--> B --m2--> C  at B:
// the image lattice of m1 and the kernel lattice of m2 agree modulo B's
// relations.
inline bool exact_at(const ExactMatrix& m1, const ExactMatrix& rel_b, const ExactMatrix& m2,
                     const ExactMatrix& rel_c) {
    ExactMatrix image = hstack(m1, rel_b);
    ExactMatrix graph = hstack(m2, rel_c);
    ExactMatrix kern = kernel_basis(graph);
    ExactMatrix kpart = submatrix(kern, 0, 0, m2.cols, kern.cols);
    ExactMatrix kernel_lattice = hstack(kpart, rel_b);
    return lattice_equal(image, kernel_lattice);
}

// Full long-exact-sequence check for a triangle: every slot
//   H^i(X) -> H^i(Y) -> H^i(Z) -> H^{i+1}(X) -> ...
inline bool long_exact_sequence_exact(const Triangle& t) {
    int lo = std::min({t.x.lowest_degree(), t.y.lowest_degree(), t.z.lowest_degree()}) - 1;
    int hi = std::max({t.x.highest_degree(), t.y.highest_degree(), t.z.highest_degree()}) + 1;
    BoundedComplex x1 = shift(t.x, 1);
    for (int i = lo; i <= hi; ++i) {
        auto px = homology_presentation(t.x, i);
        auto py = homology_presentation(t.y, i);
        auto pz = homology_presentation(t.z, i);
        auto px1 = homology_presentation(x1, i);
        auto px_next = homology_presentation(t.x, i + 1);
        auto py_next = homology_presentation(t.y, i + 1);
        ExactMatrix mf = induced_map_on_homology(t.f, i, px, py);
        ExactMatrix mg = induced_map_on_homology(t.g, i, py, pz);
        ExactMatrix mh = induced_map_on_homology(t.h, i, pz, px1);
        if (!exact_at(mf, py.relations, mg, pz.relations)) return false;
        if (!exact_at(mg, pz.relations, mh, px1.relations)) return false;
        // Connecting slot H^i(Z) -> H^{i+1}(X) -> H^{i+1}(Y).  The first map
        // lands in H^i(X[1]); rebase it onto the kernel basis of H^{i+1}(X)
        // (same subgroup, possibly a different chosen basis).
        auto rebase = solve_matrix(px_next.kernel, px1.kernel);
        if (!rebase) return false;
        ExactMatrix mh_next = mul(*rebase, mh);
        ExactMatrix mf_next = induced_map_on_homology(t.f, i + 1, px_next, py_next);
        if (!exact_at(mh_next, px_next.relations, mf_next, py_next.relations)) return false;
    }
    return true;
}

}  // namespace testutil
