#pragma once

// The two hereditary bases behind one interface: free abelian groups
// (complexes over Z) and projective representations of a finite acyclic
// quiver over F_p.  An object is a formal direct sum of indecomposable
// projectives ("summand word"); morphisms are carried as their lowered
// scalar matrices on underlying free modules / vector spaces, with the
// valid-subspace structure supplied per base.
//
// The summand word (rather than a multiplicity vector) is deliberate:
// direct sums become concatenation, so all cone and block arithmetic can
// treat the underlying bases as ordered segments.

#include "homcert/matrix.hpp"
#include "homcert/quiver.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace homcert {

// Summand labels: 0 = the base ring Z itself; v >= 1 = projective P_v.
struct ObjectShape {
    std::vector<int> summands;

    static ObjectShape free_module(int rank) {
        if (rank < 0) throw Error("negative rank");
        return ObjectShape{std::vector<int>(size_t(rank), 0)};
    }

    bool is_zero() const { return summands.empty(); }
    int count() const { return int(summands.size()); }

    bool operator==(const ObjectShape& o) const = default;
};

inline ObjectShape concat(const ObjectShape& x, const ObjectShape& y) {
    ObjectShape out = x;
    out.summands.insert(out.summands.end(), y.summands.begin(), y.summands.end());
    return out;
}

struct BaseCategory {
    Ring ring;                                  // Z, or F_p for the quiver backend
    std::shared_ptr<const PathAlgebra> algebra; // null for the integer backend

    static BaseCategory integers() { return BaseCategory{Ring::integers(), nullptr}; }

    static BaseCategory quiver_algebra(const Int& p, const Quiver& q) {
        return BaseCategory{Ring::prime_field(p), std::make_shared<PathAlgebra>(q)};
    }

    bool is_quiver() const { return algebra != nullptr; }

    bool same_as(const BaseCategory& o) const {
        if (ring != o.ring) return false;
        if (is_quiver() != o.is_quiver()) return false;
        if (is_quiver() && !(algebra->quiver == o.algebra->quiver)) return false;
        return true;
    }

    void check_shape(const ObjectShape& shape) const {
        for (int s : shape.summands) {
            if (!is_quiver() && s != 0) throw Error("integer base admits only free summands");
            if (is_quiver() && (s < 1 || s > algebra->quiver.vertex_count))
                throw Error("projective summand out of range");
        }
    }

    int summand_dim(int s) const { return is_quiver() ? algebra->projective_dim(s) : 1; }

    int dim(const ObjectShape& shape) const {
        int d = 0;
        for (int s : shape.summands) d += summand_dim(s);
        return d;
    }

    std::vector<int> summand_offsets(const ObjectShape& shape) const {
        std::vector<int> off(shape.summands.size() + 1, 0);
        for (size_t k = 0; k < shape.summands.size(); ++k)
            off[k + 1] = off[k] + summand_dim(shape.summands[k]);
        return off;
    }

    // For the quiver backend, the underlying basis vector at (summand, path)
    // sits at the vertex the path ends at; morphisms preserve this grading.
    std::vector<int> vertex_grading(const ObjectShape& shape) const {
        std::vector<int> grade;
        if (!is_quiver()) {
            grade.assign(size_t(dim(shape)), 0);
            return grade;
        }
        for (int s : shape.summands)
            for (int id : algebra->paths_from[s]) grade.push_back(algebra->paths[id].target);
        return grade;
    }
};

// One basis element of the morphism space Hom(X, Y), as its lowered matrix
// plus the entry where its coefficient can be read off a general morphism.
struct HomBasisElement {
    ExactMatrix mat;
    int read_row = 0;
    int read_col = 0;
};

inline std::vector<HomBasisElement> hom_basis(const BaseCategory& base, const ObjectShape& x,
                                              const ObjectShape& y) {
    base.check_shape(x);
    base.check_shape(y);
    std::vector<HomBasisElement> out;
    const int rows = base.dim(y), cols = base.dim(x);
    const auto xoff = base.summand_offsets(x);
    const auto yoff = base.summand_offsets(y);
    if (!base.is_quiver()) {
        for (size_t a = 0; a < x.summands.size(); ++a)
            for (size_t b = 0; b < y.summands.size(); ++b) {
                ExactMatrix m(base.ring, rows, cols);
                m.at(int(b), int(a)) = 1;
                out.push_back({std::move(m), int(b), int(a)});
            }
        return out;
    }
    const PathAlgebra& pa = *base.algebra;
    for (size_t a = 0; a < x.summands.size(); ++a) {
        int v = x.summands[a];
        int ev = pa.path_id(v, {});
        for (size_t b = 0; b < y.summands.size(); ++b) {
            int w = y.summands[b];
            for (int pi : pa.paths_between(w, v)) {
                ExactMatrix m(base.ring, rows, cols);
                for (int rho : pa.paths_from[v]) {
                    int composite = pa.concatenate(pi, rho);
                    m.at(yoff[b] + pa.index_in_projective(composite),
                         xoff[a] + pa.index_in_projective(rho)) = 1;
                }
                out.push_back({std::move(m),
                               yoff[b] + pa.index_in_projective(pi),
                               xoff[a] + pa.index_in_projective(ev)});
            }
        }
    }
    return out;
}

// Coordinates of a morphism matrix in the hom basis (read positions).
inline ExactMatrix hom_coordinates(const std::vector<HomBasisElement>& basis, const ExactMatrix& m) {
    ExactMatrix c(m.ring, int(basis.size()), 1);
    for (size_t k = 0; k < basis.size(); ++k) c.at(int(k), 0) = m.at(basis[k].read_row, basis[k].read_col);
    return c;
}

inline ExactMatrix hom_from_coordinates(const BaseCategory& base, const ObjectShape& x,
                                        const ObjectShape& y,
                                        const std::vector<HomBasisElement>& basis,
                                        const ExactMatrix& coords) {
    ExactMatrix m(base.ring, base.dim(y), base.dim(x));
    for (size_t k = 0; k < basis.size(); ++k) {
        const Int& c = coords.at(int(k), 0);
        if (c == 0) continue;
        for (size_t e = 0; e < basis[k].mat.a.size(); ++e)
            m.a[e] = m.ring.add(m.a[e], c * basis[k].mat.a[e]);
    }
    return m;
}

// Is the given matrix the lowering of an honest morphism?  Over Z every
// matrix is; over the quiver base this checks membership in the span of
// the path basis by reconstruction.
inline bool is_valid_morphism(const BaseCategory& base, const ObjectShape& x, const ObjectShape& y,
                              const ExactMatrix& m) {
    if (m.rows != base.dim(y) || m.cols != base.dim(x) || m.ring != base.ring) return false;
    if (!base.is_quiver()) return true;
    auto basis = hom_basis(base, x, y);
    return hom_from_coordinates(base, x, y, basis, hom_coordinates(basis, m)) == m;
}

}  // namespace homcert
