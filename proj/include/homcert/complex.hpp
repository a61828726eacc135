#pragma once

// Bounded cochain complexes of frees/projectives, chain maps, homotopies,
// and the constructions that model distinguished triangles: shift, mapping
// cone, direct sums, homology.
//
// Conventions, fixed once and used everywhere:
//   - differentials raise degree:  d^i : X^i -> X^{i+1},  d o d = 0;
//   - shift:       X[k]^i = X^{i+k},  d_{X[k]} = (-1)^k d_X;
//   - cone(f:X->Y): cone^i = X^{i+1} (+) Y^i with d = [[-d_X, 0], [f, d_Y]],
//     blocks ordered X-part first.
// Constructors validate their invariants, so any value that exists is
// well-formed; certificate replay leans on this.

#include "homcert/base.hpp"
#include "homcert/snf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homcert {

class BoundedComplex {
  public:
    BoundedComplex() : base_(std::make_shared<BaseCategory>(BaseCategory::integers())) {}

    BoundedComplex(std::shared_ptr<const BaseCategory> base, std::map<int, ObjectShape> objects,
                   std::map<int, ExactMatrix> diffs)
        : base_(std::move(base)), objects_(std::move(objects)), diffs_(std::move(diffs)) {
        normalize();
        validate();
    }

    const BaseCategory& base() const { return *base_; }
    std::shared_ptr<const BaseCategory> base_ptr() const { return base_; }

    bool is_zero_object() const { return objects_.empty(); }

    int lowest_degree() const { return objects_.empty() ? 0 : objects_.begin()->first; }
    int highest_degree() const { return objects_.empty() ? 0 : objects_.rbegin()->first; }

    const std::map<int, ObjectShape>& objects() const { return objects_; }

    ObjectShape shape_at(int i) const {
        auto it = objects_.find(i);
        return it == objects_.end() ? ObjectShape{} : it->second;
    }

    int dim_at(int i) const { return base_->dim(shape_at(i)); }

    // d^i : X^i -> X^{i+1}; a correctly sized zero matrix when absent.
    ExactMatrix diff_at(int i) const {
        auto it = diffs_.find(i);
        if (it != diffs_.end()) return it->second;
        return ExactMatrix(base_->ring, dim_at(i + 1), dim_at(i));
    }

    bool operator==(const BoundedComplex& o) const {
        if (!base_->same_as(*o.base_) || objects_ != o.objects_) return false;
        int lo = lowest_degree(), hi = highest_degree();
        for (int i = lo; i < hi; ++i)
            if (diff_at(i) != o.diff_at(i)) return false;
        return true;
    }
    bool operator!=(const BoundedComplex& o) const { return !(*this == o); }

  private:
    void normalize() {
        for (auto it = objects_.begin(); it != objects_.end();)
            it = it->second.is_zero() ? objects_.erase(it) : std::next(it);
        for (auto it = diffs_.begin(); it != diffs_.end();) {
            bool keep = objects_.count(it->first) && objects_.count(it->first + 1) &&
                        !it->second.is_zero();
            it = keep ? std::next(it) : diffs_.erase(it);
        }
    }

    void validate() const {
        for (const auto& [i, shape] : objects_) base_->check_shape(shape);
        for (const auto& [i, d] : diffs_) {
            if (d.ring != base_->ring) throw Error("differential over the wrong ring");
            if (d.rows != dim_at(i + 1) || d.cols != dim_at(i))
                throw Error("differential dimension mismatch at degree " + std::to_string(i));
            if (!is_valid_morphism(*base_, shape_at(i), shape_at(i + 1), d))
                throw Error("differential is not a module morphism at degree " + std::to_string(i));
        }
        for (const auto& [i, d] : diffs_)
            if (diffs_.count(i + 1) && !mul(diffs_.at(i + 1), d).is_zero())
                throw Error("d o d != 0 at degree " + std::to_string(i));
    }

    std::shared_ptr<const BaseCategory> base_;
    std::map<int, ObjectShape> objects_;
    std::map<int, ExactMatrix> diffs_;
};

inline BoundedComplex zero_complex(std::shared_ptr<const BaseCategory> base) {
    return BoundedComplex(std::move(base), {}, {});
}

// Single object placed in one degree.
inline BoundedComplex one_term_complex(std::shared_ptr<const BaseCategory> base, int degree,
                                       ObjectShape shape) {
    std::map<int, ObjectShape> obj;
    obj[degree] = std::move(shape);
    return BoundedComplex(std::move(base), std::move(obj), {});
}

class ChainMap {
  public:
    ChainMap(BoundedComplex source, BoundedComplex target, std::map<int, ExactMatrix> comps)
        : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
        if (!source_.base().same_as(target_.base())) throw Error("chain map across different bases");
        normalize();
        validate();
    }

    const BoundedComplex& source() const { return source_; }
    const BoundedComplex& target() const { return target_; }

    ExactMatrix component_at(int i) const {
        auto it = comps_.find(i);
        if (it != comps_.end()) return it->second;
        return ExactMatrix(source_.base().ring, target_.dim_at(i), source_.dim_at(i));
    }

    const std::map<int, ExactMatrix>& components() const { return comps_; }

    bool is_zero_map() const { return comps_.empty(); }

    bool operator==(const ChainMap& o) const {
        if (source_ != o.source_ || target_ != o.target_) return false;
        int lo = std::min(source_.lowest_degree(), target_.lowest_degree());
        int hi = std::max(source_.highest_degree(), target_.highest_degree());
        for (int i = lo; i <= hi; ++i)
            if (component_at(i) != o.component_at(i)) return false;
        return true;
    }

  private:
    void normalize() {
        for (auto it = comps_.begin(); it != comps_.end();) {
            bool keep = source_.dim_at(it->first) > 0 && target_.dim_at(it->first) > 0 &&
                        !it->second.is_zero();
            it = keep ? std::next(it) : comps_.erase(it);
        }
    }

    void validate() const {
        const BaseCategory& b = source_.base();
        for (const auto& [i, m] : comps_) {
            if (m.ring != b.ring) throw Error("chain map over the wrong ring");
            if (m.rows != target_.dim_at(i) || m.cols != source_.dim_at(i))
                throw Error("chain map dimension mismatch at degree " + std::to_string(i));
            if (!is_valid_morphism(b, source_.shape_at(i), target_.shape_at(i), m))
                throw Error("chain map component is not a module morphism");
        }
        int lo = std::min(source_.lowest_degree(), target_.lowest_degree()) - 1;
        int hi = std::max(source_.highest_degree(), target_.highest_degree());
        for (int i = lo; i <= hi; ++i) {
            ExactMatrix lhs = mul(target_.diff_at(i), component_at(i));
            ExactMatrix rhs = mul(component_at(i + 1), source_.diff_at(i));
            if (lhs != rhs) throw Error("chain map does not commute with d at degree " + std::to_string(i));
        }
    }

    BoundedComplex source_, target_;
    std::map<int, ExactMatrix> comps_;
};

inline ChainMap zero_map(BoundedComplex source, BoundedComplex target) {
    return ChainMap(std::move(source), std::move(target), {});
}

inline ChainMap identity_map(const BoundedComplex& x) {
    std::map<int, ExactMatrix> comps;
    for (const auto& [i, shape] : x.objects())
        comps[i] = ExactMatrix::identity(x.base().ring, x.dim_at(i));
    return ChainMap(x, x, std::move(comps));
}

inline ChainMap scale_map(const Int& c, const ChainMap& f) {
    std::map<int, ExactMatrix> comps;
    for (const auto& [i, m] : f.components()) comps[i] = scale(c, m);
    return ChainMap(f.source(), f.target(), std::move(comps));
}

inline ChainMap add_maps(const ChainMap& f, const ChainMap& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw Error("chain map sum: shapes differ");
    std::map<int, ExactMatrix> comps;
    int lo = std::min(f.source().lowest_degree(), f.target().lowest_degree());
    int hi = std::max(f.source().highest_degree(), f.target().highest_degree());
    for (int i = lo; i <= hi; ++i) comps[i] = add(f.component_at(i), g.component_at(i));
    return ChainMap(f.source(), f.target(), std::move(comps));
}

inline ChainMap sub_maps(const ChainMap& f, const ChainMap& g) {
    return add_maps(f, scale_map(Int(-1), g));
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (g.source() != f.target()) throw Error("compose: middle objects differ");
    std::map<int, ExactMatrix> comps;
    int lo = f.source().lowest_degree(), hi = f.source().highest_degree();
    for (int i = lo; i <= hi; ++i) comps[i] = mul(g.component_at(i), f.component_at(i));
    return ChainMap(f.source(), g.target(), std::move(comps));
}

// X[k]^i = X^{i+k}, differential scaled by (-1)^k.
inline BoundedComplex shift(const BoundedComplex& x, int k) {
    std::map<int, ObjectShape> objects;
    std::map<int, ExactMatrix> diffs;
    for (const auto& [i, shape] : x.objects()) objects[i - k] = shape;
    int sign = (k % 2 == 0) ? 1 : -1;
    for (int i = x.lowest_degree(); i < x.highest_degree(); ++i) {
        ExactMatrix d = x.diff_at(i);
        if (!d.is_zero()) diffs[i - k] = sign == 1 ? d : neg(d);
    }
    return BoundedComplex(x.base_ptr(), std::move(objects), std::move(diffs));
}

// Chain maps shift with no sign: (f[k])^i = f^{i+k}.
inline ChainMap shift_map(const ChainMap& f, int k) {
    std::map<int, ExactMatrix> comps;
    for (const auto& [i, m] : f.components()) comps[i - k] = m;
    return ChainMap(shift(f.source(), k), shift(f.target(), k), std::move(comps));
}

inline BoundedComplex direct_sum(const BoundedComplex& x, const BoundedComplex& y) {
    if (!x.base().same_as(y.base())) throw Error("direct sum across different bases");
    std::map<int, ObjectShape> objects;
    std::map<int, ExactMatrix> diffs;
    int lo = std::min(x.lowest_degree(), y.lowest_degree());
    int hi = std::max(x.highest_degree(), y.highest_degree());
    for (int i = lo; i <= hi; ++i) {
        ObjectShape s = concat(x.shape_at(i), y.shape_at(i));
        if (!s.is_zero()) objects[i] = s;
        if (i < hi) diffs[i] = block_diag(x.diff_at(i), y.diff_at(i));
    }
    return BoundedComplex(x.base_ptr(), std::move(objects), std::move(diffs));
}

inline ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
    BoundedComplex src = direct_sum(f.source(), g.source());
    BoundedComplex tgt = direct_sum(f.target(), g.target());
    std::map<int, ExactMatrix> comps;
    int lo = src.lowest_degree(), hi = src.highest_degree();
    for (int i = lo; i <= hi; ++i) comps[i] = block_diag(f.component_at(i), g.component_at(i));
    return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

// Inclusion / projection of the two summands of direct_sum(x, y).
inline ChainMap summand_inclusion(const BoundedComplex& x, const BoundedComplex& y, int which) {
    BoundedComplex sum = direct_sum(x, y);
    const BoundedComplex& part = which == 0 ? x : y;
    std::map<int, ExactMatrix> comps;
    for (int i = part.lowest_degree(); i <= part.highest_degree(); ++i) {
        ExactMatrix m(x.base().ring, sum.dim_at(i), part.dim_at(i));
        int off = which == 0 ? 0 : x.dim_at(i);
        for (int r = 0; r < part.dim_at(i); ++r) m.at(off + r, r) = 1;
        comps[i] = std::move(m);
    }
    return ChainMap(part, std::move(sum), std::move(comps));
}

inline ChainMap summand_projection(const BoundedComplex& x, const BoundedComplex& y, int which) {
    BoundedComplex sum = direct_sum(x, y);
    const BoundedComplex& part = which == 0 ? x : y;
    std::map<int, ExactMatrix> comps;
    for (int i = part.lowest_degree(); i <= part.highest_degree(); ++i) {
        ExactMatrix m(x.base().ring, part.dim_at(i), sum.dim_at(i));
        int off = which == 0 ? 0 : x.dim_at(i);
        for (int r = 0; r < part.dim_at(i); ++r) m.at(r, off + r) = 1;
        comps[i] = std::move(m);
    }
    return ChainMap(std::move(sum), part, std::move(comps));
}

inline BoundedComplex mapping_cone(const ChainMap& f) {
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    std::map<int, ObjectShape> objects;
    std::map<int, ExactMatrix> diffs;
    int lo = std::min(x.lowest_degree() - 1, y.lowest_degree());
    int hi = std::max(x.highest_degree() - 1, y.highest_degree());
    for (int i = lo; i <= hi; ++i) {
        ObjectShape s = concat(x.shape_at(i + 1), y.shape_at(i));
        if (!s.is_zero()) objects[i] = s;
        if (i < hi) {
            // [[-d_X, 0], [f, d_Y]]
            ExactMatrix top = hstack(neg(x.diff_at(i + 1)),
                                     ExactMatrix(x.base().ring, x.dim_at(i + 2), y.dim_at(i)));
            ExactMatrix bot = hstack(f.component_at(i + 1), y.diff_at(i));
            diffs[i] = vstack(top, bot);
        }
    }
    return BoundedComplex(x.base_ptr(), std::move(objects), std::move(diffs));
}

inline ChainMap cone_inclusion(const ChainMap& f) {
    BoundedComplex c = mapping_cone(f);
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    std::map<int, ExactMatrix> comps;
    for (int i = y.lowest_degree(); i <= y.highest_degree(); ++i) {
        ExactMatrix m(y.base().ring, c.dim_at(i), y.dim_at(i));
        int off = x.dim_at(i + 1);
        for (int r = 0; r < y.dim_at(i); ++r) m.at(off + r, r) = 1;
        comps[i] = std::move(m);
    }
    return ChainMap(y, std::move(c), std::move(comps));
}

inline ChainMap cone_projection(const ChainMap& f) {
    BoundedComplex c = mapping_cone(f);
    BoundedComplex x1 = shift(f.source(), 1);
    std::map<int, ExactMatrix> comps;
    for (int i = x1.lowest_degree(); i <= x1.highest_degree(); ++i) {
        ExactMatrix m(c.base().ring, x1.dim_at(i), c.dim_at(i));
        for (int r = 0; r < x1.dim_at(i); ++r) m.at(r, r) = 1;
        comps[i] = std::move(m);
    }
    return ChainMap(std::move(c), std::move(x1), std::move(comps));
}

// Homology as a presented group: generators = columns of kernel_basis,
// relations = coordinates of the incoming image in those generators.
struct HomologyPresentation {
    ExactMatrix kernel;     // dim_at(i) x k
    ExactMatrix relations;  // k x (incoming columns)
};

inline HomologyPresentation homology_presentation(const BoundedComplex& x, int i) {
    ExactMatrix k = kernel_basis(x.diff_at(i));
    auto rel = solve_matrix(k, x.diff_at(i - 1));
    if (!rel) throw Error("image does not land in the kernel (d o d != 0?)");
    return {std::move(k), std::move(*rel)};
}

struct HomologyGroup {
    FGAbelianGroup group;            // over F_p: free_rank = dimension
    std::vector<long> vertex_dims;   // quiver backend: dimension per vertex (1-based at index v-1)

    bool is_zero() const { return group.is_trivial(); }
    bool operator==(const HomologyGroup& o) const {
        return group == o.group && vertex_dims == o.vertex_dims;
    }
};

inline HomologyGroup homology(const BoundedComplex& x, int i) {
    HomologyGroup out;
    HomologyPresentation pres = homology_presentation(x, i);
    out.group = cokernel_invariants(pres.relations);
    if (x.base().is_quiver()) {
        int n = x.base().algebra->quiver.vertex_count;
        out.vertex_dims.assign(size_t(n), 0);
        if (out.group.free_rank > 0) {
            auto grade = x.base().vertex_grading(x.shape_at(i));
            // per-vertex ranks: the lowered maps are block-diagonal in the
            // endpoint grading, so each vertex has its own little complex
            for (int v = 1; v <= n; ++v) {
                std::vector<int> idx_i, idx_in, idx_out;
                auto grade_in = x.base().vertex_grading(x.shape_at(i - 1));
                auto grade_out = x.base().vertex_grading(x.shape_at(i + 1));
                for (size_t r = 0; r < grade.size(); ++r)
                    if (grade[r] == v) idx_i.push_back(int(r));
                for (size_t r = 0; r < grade_in.size(); ++r)
                    if (grade_in[r] == v) idx_in.push_back(int(r));
                for (size_t r = 0; r < grade_out.size(); ++r)
                    if (grade_out[r] == v) idx_out.push_back(int(r));
                ExactMatrix din(x.base().ring, int(idx_i.size()), int(idx_in.size()));
                ExactMatrix dout(x.base().ring, int(idx_out.size()), int(idx_i.size()));
                ExactMatrix full_in = x.diff_at(i - 1), full_out = x.diff_at(i);
                for (size_t r = 0; r < idx_i.size(); ++r)
                    for (size_t cc = 0; cc < idx_in.size(); ++cc)
                        din.at(int(r), int(cc)) = full_in.at(idx_i[r], idx_in[cc]);
                for (size_t r = 0; r < idx_out.size(); ++r)
                    for (size_t cc = 0; cc < idx_i.size(); ++cc)
                        dout.at(int(r), int(cc)) = full_out.at(idx_out[r], idx_i[cc]);
                long kdim = long(idx_i.size()) - smith_normal_form(dout).rank;
                out.vertex_dims[size_t(v - 1)] = kdim - smith_normal_form(din).rank;
            }
        }
    }
    return out;
}

inline bool is_acyclic(const BoundedComplex& x) {
    for (int i = x.lowest_degree(); i <= x.highest_degree(); ++i)
        if (!homology(x, i).is_zero()) return false;
    return true;
}

// f is invertible in the derived category iff its cone has no homology.
inline bool is_quasi_iso(const ChainMap& f) { return is_acyclic(mapping_cone(f)); }

// H^i(f) in the kernel-basis coordinates of source and target; the pair of
// presentations travels along so callers can reason about exactness.
inline ExactMatrix induced_map_on_homology(const ChainMap& f, int i,
                                           const HomologyPresentation& src,
                                           const HomologyPresentation& tgt) {
    auto m = solve_matrix(tgt.kernel, mul(f.component_at(i), src.kernel));
    if (!m) throw Error("chain map does not preserve kernels");
    return *m;
}

// Degrees where the homology is nonzero, as a closed interval.
struct DegreeWindow {
    int lo = 0;
    int hi = -1;
    bool empty() const { return lo > hi; }
    bool contains(int i) const { return !empty() && lo <= i && i <= hi; }
};

inline DegreeWindow homology_support(const BoundedComplex& x) {
    DegreeWindow w;
    bool seen = false;
    for (int i = x.lowest_degree(); i <= x.highest_degree(); ++i) {
        if (homology(x, i).is_zero()) continue;
        if (!seen) w.lo = i, seen = true;
        w.hi = i;
    }
    if (!seen) w = DegreeWindow{0, -1};
    return w;
}

}  // namespace homcert
