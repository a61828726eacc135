#pragma once

// Module descriptors and their two-term projective resolutions.  Both bases
// are hereditary, so a single syzygy step resolves everything and derived
// Hom computations downstream are exact with no truncation window.

#include "homcert/complex.hpp"

namespace homcert {

// Finitely generated abelian groups double as the module descriptor for the
// integer backend.  Quiver representations carry one space per vertex and
// one matrix per arrow.
struct QuiverRep {
    std::vector<int> dims;                // per vertex, 1-based at index v-1
    std::vector<ExactMatrix> arrow_maps;  // per arrow a: M_a : M_{s(a)} -> M_{t(a)}
};

inline void validate_rep(const BaseCategory& base, const QuiverRep& m) {
    if (!base.is_quiver()) throw Error("representation over the integer backend");
    const Quiver& q = base.algebra->quiver;
    if (int(m.dims.size()) != q.vertex_count) throw Error("representation dims: wrong vertex count");
    for (int d : m.dims)
        if (d < 0) throw Error("negative representation dimension");
    if (m.arrow_maps.size() != q.arrows.size()) throw Error("representation: wrong arrow map count");
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        const ExactMatrix& f = m.arrow_maps[a];
        if (f.ring != base.ring || f.rows != m.dims[size_t(t - 1)] || f.cols != m.dims[size_t(s - 1)])
            throw Error("arrow map has wrong shape");
    }
}

// [Z^k -> Z^{f+k}] with the invariant factors down the diagonal; free
// coordinates come first in degree 0.
inline BoundedComplex projective_resolution(std::shared_ptr<const BaseCategory> base,
                                            const FGAbelianGroup& m) {
    if (base->is_quiver()) throw Error("abelian-group descriptor over the quiver backend");
    int f = int(m.free_rank), k = int(m.torsion.size());
    if (f < 0) throw Error("negative free rank");
    for (const Int& d : m.torsion)
        if (d < 2) throw Error("invariant factors must be >= 2");
    std::map<int, ObjectShape> objects;
    std::map<int, ExactMatrix> diffs;
    if (f + k > 0) objects[0] = ObjectShape::free_module(f + k);
    if (k > 0) {
        objects[-1] = ObjectShape::free_module(k);
        ExactMatrix d(base->ring, f + k, k);
        for (int i = 0; i < k; ++i) d.at(f + i, i) = m.torsion[size_t(i)];
        diffs[-1] = std::move(d);
    }
    return BoundedComplex(std::move(base), std::move(objects), std::move(diffs));
}

// Standard resolution of a representation M:
//   0 -> (+)_{a: v->w} P_w (x) M_v -> (+)_v P_v (x) M_v -> M -> 0
// where the first map sends x (x) m to x (x) M_a(m) - x.a (x) m.
inline BoundedComplex projective_resolution(std::shared_ptr<const BaseCategory> base,
                                            const QuiverRep& m) {
    validate_rep(*base, m);
    const PathAlgebra& pa = *base->algebra;
    const Quiver& q = pa.quiver;

    ObjectShape p0;
    std::vector<int> copy_offset0(size_t(q.vertex_count + 1), 0);  // underlying offset of vertex block
    for (int v = 1; v <= q.vertex_count; ++v) {
        copy_offset0[size_t(v)] = base->dim(p0);
        for (int c = 0; c < m.dims[size_t(v - 1)]; ++c) p0.summands.push_back(v);
    }
    ObjectShape p1;
    for (size_t a = 0; a < q.arrows.size(); ++a)
        for (int c = 0; c < m.dims[size_t(q.arrows[a].first - 1)]; ++c)
            p1.summands.push_back(q.arrows[a].second);

    ExactMatrix d(base->ring, base->dim(p0), base->dim(p1));
    int col_block = 0;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        auto [v, w] = q.arrows[a];
        int a_path = pa.path_id(v, {int(a)});
        for (int c = 0; c < m.dims[size_t(v - 1)]; ++c) {
            for (int rho : pa.paths_from[w]) {
                int col = col_block + pa.index_in_projective(rho);
                // x (x) M_a(m): identity of P_w into each copy m' of the w block
                for (int cprime = 0; cprime < m.dims[size_t(w - 1)]; ++cprime) {
                    const Int& coef = m.arrow_maps[a].at(cprime, c);
                    if (coef == 0) continue;
                    int row = copy_offset0[size_t(w)] + cprime * pa.projective_dim(w) +
                              pa.index_in_projective(rho);
                    d.at(row, col) = d.ring.add(d.at(row, col), coef);
                }
                // -x.a (x) m: the arrow morphism P_w -> P_v into copy c of the v block
                int row = copy_offset0[size_t(v)] + c * pa.projective_dim(v) +
                          pa.index_in_projective(pa.concatenate(a_path, rho));
                d.at(row, col) = d.ring.sub(d.at(row, col), Int(1));
            }
            col_block += pa.projective_dim(w);
        }
    }

    std::map<int, ObjectShape> objects;
    std::map<int, ExactMatrix> diffs;
    if (!p0.is_zero()) objects[0] = std::move(p0);
    if (!p1.is_zero()) {
        objects[-1] = std::move(p1);
        diffs[-1] = std::move(d);
    }
    return BoundedComplex(std::move(base), std::move(objects), std::move(diffs));
}

inline QuiverRep simple_rep(const BaseCategory& base, int vertex) {
    if (!base.is_quiver()) throw Error("simple_rep needs the quiver backend");
    const Quiver& q = base.algebra->quiver;
    if (vertex < 1 || vertex > q.vertex_count) throw Error("vertex out of range");
    QuiverRep m;
    m.dims.assign(size_t(q.vertex_count), 0);
    m.dims[size_t(vertex - 1)] = 1;
    for (auto [s, t] : q.arrows)
        m.arrow_maps.push_back(ExactMatrix(base.ring, t == vertex ? 1 : 0, s == vertex ? 1 : 0));
    return m;
}

// Least N > 0 with N*M = 0, or nullopt when M has free rank.
inline std::optional<Int> scalar_annihilator(const FGAbelianGroup& m) {
    if (m.free_rank > 0) return std::nullopt;
    return m.exponent();
}

}  // namespace homcert
