#pragma once

// Distinguished triangles X -> Y -> Z -> X[1], carried with an explicit
// comparison quasi-isomorphism cone(f) -> Z.  Compatibility with g and h is
// demanded up to homotopy (exact equality is the common case for the
// triangles this library constructs, but rotations only compare up to an
// explicit homotopy).

#include "homcert/hom_complex.hpp"

namespace homcert {

struct Triangle {
    BoundedComplex x, y, z;
    ChainMap f, g, h;      // f: x->y, g: y->z, h: z->x[1]
    ChainMap compare;      // cone(f) -> z, a quasi-isomorphism

    Triangle(BoundedComplex x_, BoundedComplex y_, BoundedComplex z_, ChainMap f_, ChainMap g_,
             ChainMap h_, ChainMap compare_)
        : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)), f(std::move(f_)),
          g(std::move(g_)), h(std::move(h_)), compare(std::move(compare_)) {
        validate();
    }

  private:
    void validate() const {
        if (f.source() != x || f.target() != y || g.source() != y || g.target() != z ||
            h.source() != z || h.target() != shift(x, 1))
            throw Error("triangle maps do not line up");
        if (compare.source() != mapping_cone(f) || compare.target() != z)
            throw Error("triangle comparison has wrong endpoints");
        if (!is_quasi_iso(compare)) throw Error("triangle comparison is not a quasi-isomorphism");
        if (!homotopic(compose(compare, cone_inclusion(f)), g))
            throw Error("triangle comparison incompatible with g");
        if (!homotopic(compose(h, compare), cone_projection(f)))
            throw Error("triangle comparison incompatible with h");
    }
};

// The canonical triangle X -> Y -> cone(f) -> X[1].
inline Triangle triangle_of_cone(const ChainMap& f) {
    BoundedComplex c = mapping_cone(f);
    return Triangle(f.source(), f.target(), c, f, cone_inclusion(f), cone_projection(f),
                    identity_map(c));
}

// Blockwise sum of two triangles; distinguished again, with the block
// permutation cone(f1 (+) f2) ~ cone(f1) (+) cone(f2) as the comparison.
inline Triangle direct_sum_triangles(const Triangle& t1, const Triangle& t2) {
    ChainMap f = direct_sum_map(t1.f, t2.f);
    BoundedComplex z = direct_sum(t1.z, t2.z);
    ChainMap g = direct_sum_map(t1.g, t2.g);
    // h lands in (x1 (+) x2)[1] = x1[1] (+) x2[1] degreewise, same layout
    BoundedComplex x_sum_1 = shift(direct_sum(t1.x, t2.x), 1);
    ChainMap h12 = direct_sum_map(t1.h, t2.h);
    std::map<int, ExactMatrix> hcomps;
    for (int i = z.lowest_degree(); i <= z.highest_degree(); ++i) hcomps[i] = h12.component_at(i);
    ChainMap h(z, x_sum_1, std::move(hcomps));

    BoundedComplex cone_sum = mapping_cone(f);
    BoundedComplex cones = direct_sum(mapping_cone(t1.f), mapping_cone(t2.f));
    std::map<int, ExactMatrix> perm;
    for (int i = cone_sum.lowest_degree(); i <= cone_sum.highest_degree(); ++i) {
        // (x1^{i+1}, x2^{i+1}, y1^i, y2^i) -> (x1^{i+1}, y1^i, x2^{i+1}, y2^i)
        int a = t1.x.dim_at(i + 1), b = t2.x.dim_at(i + 1);
        int c = t1.y.dim_at(i), d = t2.y.dim_at(i);
        ExactMatrix p(z.base().ring, a + b + c + d, a + b + c + d);
        for (int r = 0; r < a; ++r) p.at(r, r) = 1;
        for (int r = 0; r < c; ++r) p.at(a + r, a + b + r) = 1;
        for (int r = 0; r < b; ++r) p.at(a + c + r, a + r) = 1;
        for (int r = 0; r < d; ++r) p.at(a + c + b + r, a + b + c + r) = 1;
        perm[i] = std::move(p);
    }
    ChainMap unshuffle(cone_sum, cones, std::move(perm));
    ChainMap compare = compose(direct_sum_map(t1.compare, t2.compare), unshuffle);
    return Triangle(direct_sum(t1.x, t2.x), direct_sum(t1.y, t2.y), std::move(z),
                    std::move(f), std::move(g), std::move(h), std::move(compare));
}

}  // namespace homcert
