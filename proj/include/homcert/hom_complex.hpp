#pragma once

// The Hom complex between two bounded complexes of projectives, and the
// queries built on it: derived Hom groups with their generating chain maps,
// exact vanishing windows, and null-homotopy solving.
//
// Hom^n(X, Y) = (+)_i Hom(X^i, Y^{i+n}),  delta(f) = d_Y f - (-1)^n f d_X.
// Both bases are hereditary and all complexes bounded, so H^n of this
// complex is the full derived Hom(X, Y[n]) with no correction terms.

#include "homcert/complex.hpp"

#include <algorithm>

namespace homcert {

struct HomLevel {
    // one slot per degree i with X^i and Y^{i+n} both nonzero
    std::vector<int> slot_degrees;
    std::vector<std::vector<HomBasisElement>> slot_bases;
    std::vector<int> offsets;  // offsets.back() = total coordinate count
};

inline HomLevel hom_level(const BoundedComplex& x, const BoundedComplex& y, int n) {
    HomLevel lv;
    lv.offsets.push_back(0);
    for (int i = x.lowest_degree(); i <= x.highest_degree(); ++i) {
        if (x.dim_at(i) == 0 || y.dim_at(i + n) == 0) continue;
        lv.slot_degrees.push_back(i);
        lv.slot_bases.push_back(hom_basis(x.base(), x.shape_at(i), y.shape_at(i + n)));
        lv.offsets.push_back(lv.offsets.back() + int(lv.slot_bases.back().size()));
    }
    return lv;
}

inline int hom_level_total(const HomLevel& lv) { return lv.offsets.back(); }

// delta^n as a matrix from the level-n coordinates to the level-(n+1) ones.
inline ExactMatrix hom_delta(const BoundedComplex& x, const BoundedComplex& y, int n,
                             const HomLevel& cur, const HomLevel& next) {
    const Ring ring = x.base().ring;
    ExactMatrix d(ring, hom_level_total(next), hom_level_total(cur));
    int sign = (n % 2 == 0) ? 1 : -1;
    for (size_t s = 0; s < cur.slot_degrees.size(); ++s) {
        int i = cur.slot_degrees[s];
        for (size_t b = 0; b < cur.slot_bases[s].size(); ++b) {
            int col = cur.offsets[s] + int(b);
            const ExactMatrix& f = cur.slot_bases[s][b].mat;
            ExactMatrix post = mul(y.diff_at(i + n), f);             // slot i at level n+1
            ExactMatrix pre = mul(f, x.diff_at(i - 1));              // slot i-1 at level n+1
            for (size_t t = 0; t < next.slot_degrees.size(); ++t) {
                if (next.slot_degrees[t] == i && !post.is_zero()) {
                    ExactMatrix c = hom_coordinates(next.slot_bases[t], post);
                    for (int r = 0; r < c.rows; ++r) d.at(next.offsets[t] + r, col) = c.at(r, 0);
                }
                if (next.slot_degrees[t] == i - 1 && !pre.is_zero()) {
                    ExactMatrix c = hom_coordinates(next.slot_bases[t], pre);
                    for (int r = 0; r < c.rows; ++r)
                        d.at(next.offsets[t] + r, col) =
                            ring.sub(d.at(next.offsets[t] + r, col), sign == 1 ? c.at(r, 0) : -c.at(r, 0));
                }
            }
        }
    }
    return d;
}

// Reassemble a coordinate vector at level n into a chain map X -> Y[n].
inline ChainMap hom_vector_to_chain_map(const BoundedComplex& x, const BoundedComplex& y, int n,
                                        const HomLevel& lv, const ExactMatrix& coords) {
    std::map<int, ExactMatrix> comps;
    for (size_t s = 0; s < lv.slot_degrees.size(); ++s) {
        int i = lv.slot_degrees[s];
        ExactMatrix sub(coords.ring, lv.offsets[s + 1] - lv.offsets[s], 1);
        for (int r = 0; r < sub.rows; ++r) sub.at(r, 0) = coords.at(lv.offsets[s] + r, 0);
        ExactMatrix m = hom_from_coordinates(x.base(), x.shape_at(i), y.shape_at(i + n),
                                             lv.slot_bases[s], sub);
        if (!m.is_zero()) comps[i] = std::move(m);
    }
    return ChainMap(x, shift(y, n), std::move(comps));
}

// Interval outside which Hom(X, Y[n]) provably vanishes: with homology
// supports [aX,bX] and [aY,bY], the window is [aY-bX, bY-aX+1] (hereditary
// base, one Ext degree).  Empty if either complex is acyclic.
inline DegreeWindow hom_window(const BoundedComplex& x, const BoundedComplex& y) {
    DegreeWindow wx = homology_support(x), wy = homology_support(y);
    if (wx.empty() || wy.empty()) return DegreeWindow{0, -1};
    return DegreeWindow{wy.lo - wx.hi, wy.hi - wx.lo + 1};
}

struct HomGroup {
    int degree = 0;
    FGAbelianGroup value;          // field backend: free_rank = dimension
    std::vector<ChainMap> basis;   // minimal generating set, free generators first
    std::vector<Int> orders;       // 0 for free generators, the invariant factor otherwise
};

inline HomGroup derived_hom(const BoundedComplex& x, const BoundedComplex& y, int n) {
    if (!x.base().same_as(y.base())) throw Error("derived_hom across different bases");
    HomGroup out;
    out.degree = n;
    if (x.is_zero_object() || y.is_zero_object()) return out;

    HomLevel prev = hom_level(x, y, n - 1);
    HomLevel cur = hom_level(x, y, n);
    HomLevel next = hom_level(x, y, n + 1);
    ExactMatrix delta_cur = hom_delta(x, y, n, cur, next);
    ExactMatrix delta_prev = hom_delta(x, y, n - 1, prev, cur);

    ExactMatrix cocycles = kernel_basis(delta_cur);
    auto relations = solve_matrix(cocycles, delta_prev);
    if (!relations) throw Error("hom complex images escape the cocycles");
    SNFDecomposition snf = smith_normal_form(*relations);

    struct Gen {
        Int order;
        ExactMatrix coords;
    };
    std::vector<Gen> gens;
    int k = cocycles.cols;
    for (int i = 0; i < k; ++i) {
        Int d = i < snf.rank ? snf.diag(i) : Int(0);
        if (d == 1) continue;
        gens.push_back({d, mul(cocycles, column(snf.u, i))});
    }
    std::stable_sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) {
        bool fa = a.order == 0, fb = b.order == 0;
        if (fa != fb) return fa;  // free generators first
        if (a.order != b.order) return a.order < b.order;
        return a.coords.lex_less(b.coords);
    });

    out.value = cokernel_invariants(*relations);
    for (const Gen& g : gens) {
        out.orders.push_back(g.order);
        out.basis.push_back(hom_vector_to_chain_map(x, y, n, cur, g.coords));
    }
    return out;
}

// All potentially nonzero degrees at once.
inline std::map<int, HomGroup> derived_hom_in_window(const BoundedComplex& x,
                                                     const BoundedComplex& y) {
    std::map<int, HomGroup> out;
    DegreeWindow w = hom_window(x, y);
    for (int n = w.lo; n <= w.hi; ++n) out[n] = derived_hom(x, y, n);
    return out;
}

class Homotopy {
  public:
    Homotopy(ChainMap f, ChainMap g, std::map<int, ExactMatrix> comps)
        : f_(std::move(f)), g_(std::move(g)), comps_(std::move(comps)) {
        if (f_.source() != g_.source() || f_.target() != g_.target())
            throw Error("homotopy endpoints disagree");
        normalize();
        validate();
    }

    const ChainMap& from() const { return f_; }
    const ChainMap& to() const { return g_; }

    // h^i : X^i -> Y^{i-1}
    ExactMatrix component_at(int i) const {
        auto it = comps_.find(i);
        if (it != comps_.end()) return it->second;
        return ExactMatrix(f_.source().base().ring, f_.target().dim_at(i - 1), f_.source().dim_at(i));
    }

    const std::map<int, ExactMatrix>& components() const { return comps_; }

  private:
    void normalize() {
        for (auto it = comps_.begin(); it != comps_.end();) {
            bool keep = f_.source().dim_at(it->first) > 0 && f_.target().dim_at(it->first - 1) > 0 &&
                        !it->second.is_zero();
            it = keep ? std::next(it) : comps_.erase(it);
        }
    }

    void validate() const {
        const BoundedComplex& x = f_.source();
        const BoundedComplex& y = f_.target();
        for (const auto& [i, m] : comps_) {
            if (m.rows != y.dim_at(i - 1) || m.cols != x.dim_at(i))
                throw Error("homotopy component dimension mismatch");
            if (!is_valid_morphism(x.base(), x.shape_at(i), y.shape_at(i - 1), m))
                throw Error("homotopy component is not a module morphism");
        }
        int lo = std::min(x.lowest_degree(), y.lowest_degree()) - 1;
        int hi = std::max(x.highest_degree(), y.highest_degree()) + 1;
        for (int i = lo; i <= hi; ++i) {
            ExactMatrix lhs = add(mul(y.diff_at(i - 1), component_at(i)),
                                  mul(component_at(i + 1), x.diff_at(i)));
            if (lhs != sub(f_.component_at(i), g_.component_at(i)))
                throw Error("homotopy identity fails at degree " + std::to_string(i));
        }
    }

    ChainMap f_, g_;
    std::map<int, ExactMatrix> comps_;
};

// Homotopy h with d h + h d = f - g, by exact linear solving in the level
// (-1) coordinates of the Hom complex; nullopt iff the system is unsolvable.
inline std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw Error("find_homotopy endpoints disagree");
    const BoundedComplex& x = f.source();
    const BoundedComplex& y = f.target();
    const Ring ring = x.base().ring;

    HomLevel unknowns = hom_level(x, y, -1);  // candidate h components
    // equations: one block per degree with X^i and Y^i nonzero
    std::vector<int> eq_degrees;
    std::vector<int> eq_offsets{0};
    for (int i = std::min(x.lowest_degree(), y.lowest_degree());
         i <= std::max(x.highest_degree(), y.highest_degree()); ++i) {
        if (x.dim_at(i) == 0 || y.dim_at(i) == 0) continue;
        eq_degrees.push_back(i);
        eq_offsets.push_back(eq_offsets.back() + x.dim_at(i) * y.dim_at(i));
    }
    auto block_of = [&](int degree) {
        for (size_t s = 0; s < eq_degrees.size(); ++s)
            if (eq_degrees[s] == degree) return int(s);
        return -1;
    };

    ExactMatrix m(ring, eq_offsets.back(), hom_level_total(unknowns));
    for (size_t s = 0; s < unknowns.slot_degrees.size(); ++s) {
        int i = unknowns.slot_degrees[s];  // h^i : X^i -> Y^{i-1}
        for (size_t b = 0; b < unknowns.slot_bases[s].size(); ++b) {
            int col = unknowns.offsets[s] + int(b);
            const ExactMatrix& hb = unknowns.slot_bases[s][b].mat;
            ExactMatrix post = mul(y.diff_at(i - 1), hb);  // contributes to equation block i
            int blk = block_of(i);
            if (blk >= 0)
                for (int r = 0; r < post.rows; ++r)
                    for (int c = 0; c < post.cols; ++c)
                        m.at(eq_offsets[size_t(blk)] + r * post.cols + c, col) =
                            ring.add(m.at(eq_offsets[size_t(blk)] + r * post.cols + c, col),
                                     post.at(r, c));
            ExactMatrix pre = mul(hb, x.diff_at(i - 1));   // contributes to block i-1
            blk = block_of(i - 1);
            if (blk >= 0)
                for (int r = 0; r < pre.rows; ++r)
                    for (int c = 0; c < pre.cols; ++c)
                        m.at(eq_offsets[size_t(blk)] + r * pre.cols + c, col) =
                            ring.add(m.at(eq_offsets[size_t(blk)] + r * pre.cols + c, col),
                                     pre.at(r, c));
        }
    }
    ExactMatrix rhs(ring, eq_offsets.back(), 1);
    for (size_t s = 0; s < eq_degrees.size(); ++s) {
        ExactMatrix diff = sub(f.component_at(eq_degrees[s]), g.component_at(eq_degrees[s]));
        for (int r = 0; r < diff.rows; ++r)
            for (int c = 0; c < diff.cols; ++c)
                rhs.at(eq_offsets[s] + r * diff.cols + c, 0) = diff.at(r, c);
    }

    auto sol = solve(m, rhs);
    if (!sol) return std::nullopt;
    std::map<int, ExactMatrix> comps;
    for (size_t s = 0; s < unknowns.slot_degrees.size(); ++s) {
        int i = unknowns.slot_degrees[s];
        ExactMatrix sub_coords(ring, unknowns.offsets[s + 1] - unknowns.offsets[s], 1);
        for (int r = 0; r < sub_coords.rows; ++r) sub_coords.at(r, 0) = sol->at(unknowns.offsets[s] + r, 0);
        ExactMatrix hm = hom_from_coordinates(x.base(), x.shape_at(i), y.shape_at(i - 1),
                                              unknowns.slot_bases[s], sub_coords);
        if (!hm.is_zero()) comps[i] = std::move(hm);
    }
    return Homotopy(f, g, std::move(comps));
}

inline bool null_homotopic(const ChainMap& f) {
    return find_homotopy(f, zero_map(f.source(), f.target())).has_value();
}

inline bool homotopic(const ChainMap& f, const ChainMap& g) {
    return find_homotopy(f, g).has_value();
}

}  // namespace homcert
