#pragma once

// Witness towers: finite binary certificates for membership in star-classes
// and extension closures.  A leaf realizes a finite coproduct of shifted
// generators; a node realizes cone(glue), i.e. an extension of its right
// subtower by its left subtower.  Realizations are cached at construction
// and every stored matrix is validated, so a tower that exists is a replayable
// certificate.
//
// Block bookkeeping used throughout (from the cone convention): the realized
// complex of Node(L, R, glue : R[-1] -> L) has degreewise blocks [R | L].

#include "homcert/triangle.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace homcert {

struct GeneratorPool {
    std::vector<std::pair<std::string, BoundedComplex>> entries;

    int find(const std::string& name) const {
        for (size_t k = 0; k < entries.size(); ++k)
            if (entries[k].first == name) return int(k);
        return -1;
    }

    bool operator==(const GeneratorPool& o) const { return entries == o.entries; }
};

using PoolPtr = std::shared_ptr<const GeneratorPool>;

struct LeafSummand {
    int generator = 0;  // index into the pool
    int shift = 0;
    int multiplicity = 1;

    bool operator==(const LeafSummand& o) const = default;
    auto operator<=>(const LeafSummand& o) const = default;
};

class WitnessTower {
  public:
    using Ptr = std::shared_ptr<const WitnessTower>;

    static Ptr leaf(PoolPtr pool, std::vector<LeafSummand> summands) {
        if (summands.empty()) throw Error("leaf needs at least one summand");
        auto t = std::shared_ptr<WitnessTower>(new WitnessTower);
        t->pool_ = std::move(pool);
        t->summands_ = std::move(summands);
        BoundedComplex acc = zero_complex(base_of(*t->pool_));
        int lo = 0, hi = 0;
        bool first = true;
        for (const LeafSummand& s : t->summands_) {
            if (s.generator < 0 || s.generator >= int(t->pool_->entries.size()))
                throw Error("leaf generator index out of range");
            if (s.multiplicity < 1) throw Error("leaf multiplicity must be >= 1");
            BoundedComplex part = shift(t->pool_->entries[size_t(s.generator)].second, s.shift);
            for (int c = 0; c < s.multiplicity; ++c) acc = direct_sum(acc, part);
            lo = first ? s.shift : std::min(lo, s.shift);
            hi = first ? s.shift : std::max(hi, s.shift);
            first = false;
        }
        t->realized_ = std::move(acc);
        t->depth_ = 1;
        t->shift_lo_ = lo;
        t->shift_hi_ = hi;
        return t;
    }

    static Ptr node(Ptr left, Ptr right, ChainMap glue) {
        if (!left || !right) throw Error("node needs two subtowers");
        if (!(left->pool_ == right->pool_) && !(*left->pool_ == *right->pool_))
            throw Error("node across different generator pools");
        if (glue.source() != shift(right->realized_, -1) || glue.target() != left->realized_)
            throw Error("glue must map realize(right)[-1] -> realize(left)");
        auto t = std::shared_ptr<WitnessTower>(new WitnessTower);
        t->pool_ = left->pool_;
        t->left_ = std::move(left);
        t->right_ = std::move(right);
        t->realized_ = mapping_cone(glue);
        t->glue_ = std::make_shared<ChainMap>(std::move(glue));
        t->depth_ = t->left_->depth_ + t->right_->depth_;
        t->shift_lo_ = std::min(t->left_->shift_lo_, t->right_->shift_lo_);
        t->shift_hi_ = std::max(t->left_->shift_hi_, t->right_->shift_hi_);
        return t;
    }

    bool is_leaf() const { return !left_; }
    const std::vector<LeafSummand>& summands() const { return summands_; }
    const Ptr& left() const { return left_; }
    const Ptr& right() const { return right_; }
    const ChainMap& glue() const {
        if (is_leaf()) throw Error("leaf has no glue");
        return *glue_;
    }

    const PoolPtr& pool() const { return pool_; }
    const BoundedComplex& realize() const { return realized_; }
    int depth() const { return depth_; }
    int shift_lo() const { return shift_lo_; }
    int shift_hi() const { return shift_hi_; }

    // The distinguished triangle  left -> this -> right -> left[1]  realized
    // by the node, with its verified comparison map.
    Triangle node_triangle() const {
        if (is_leaf()) throw Error("leaf has no node triangle");
        const BoundedComplex& l = left_->realized_;
        const BoundedComplex& r = right_->realized_;
        ChainMap incl = cone_inclusion(*glue_);     // L -> cone
        ChainMap proj = cone_projection(*glue_);    // cone -> R[-1][1] = R
        // rotation of the cone triangle: connecting map is -glue[1]
        ChainMap connecting(r, shift(l, 1), scale_map(Int(-1), shift_map(*glue_, 1)).components());
        // compare: cone(incl) -> R is the projection onto the R block
        BoundedComplex ci = mapping_cone(incl);
        std::map<int, ExactMatrix> comps;
        for (int i = r.lowest_degree(); i <= r.highest_degree(); ++i) {
            ExactMatrix m(r.base().ring, r.dim_at(i), ci.dim_at(i));
            for (int c = 0; c < r.dim_at(i); ++c) m.at(c, l.dim_at(i + 1) + c) = 1;
            comps[i] = std::move(m);
        }
        ChainMap compare(ci, r, std::move(comps));
        return Triangle(l, realized_, r, incl,
                        ChainMap(realized_, r, proj.components()), std::move(connecting),
                        std::move(compare));
    }

    // Leaf content as a multiset, multiplicities merged by (generator, shift).
    std::vector<LeafSummand> flattened_leaves() const {
        std::vector<LeafSummand> out;
        collect_leaves(out);
        std::sort(out.begin(), out.end());
        std::vector<LeafSummand> merged;
        for (const LeafSummand& s : out) {
            if (!merged.empty() && merged.back().generator == s.generator &&
                merged.back().shift == s.shift)
                merged.back().multiplicity += s.multiplicity;
            else
                merged.push_back(s);
        }
        return merged;
    }

  private:
    WitnessTower() = default;

    static std::shared_ptr<const BaseCategory> base_of(const GeneratorPool& pool) {
        if (pool.entries.empty()) throw Error("empty generator pool");
        return pool.entries.front().second.base_ptr();
    }

    void collect_leaves(std::vector<LeafSummand>& out) const {
        if (is_leaf()) {
            out.insert(out.end(), summands_.begin(), summands_.end());
            return;
        }
        left_->collect_leaves(out);
        right_->collect_leaves(out);
    }

    PoolPtr pool_;
    std::vector<LeafSummand> summands_;  // leaf payload
    Ptr left_, right_;                   // node payload
    std::shared_ptr<const ChainMap> glue_;
    BoundedComplex realized_;
    int depth_ = 0;
    int shift_lo_ = 0;
    int shift_hi_ = 0;
};

// Extension of `right` by `left` along an explicit glue map; the canonical
// triangle is recoverable from the returned node.
inline WitnessTower::Ptr build_extension(const WitnessTower::Ptr& left,
                                         const WitnessTower::Ptr& right, ChainMap glue) {
    return WitnessTower::node(left, right, std::move(glue));
}

namespace detail {

// Rows of a chain map into a realized node split as [R-block | L-block].
inline void split_rows(const WitnessTower& node, const ChainMap& into, int degree,
                       ExactMatrix& top, ExactMatrix& bottom) {
    const ExactMatrix m = into.component_at(degree);
    int rdim = node.right()->realize().dim_at(degree);
    top = submatrix(m, 0, 0, rdim, m.cols);
    bottom = submatrix(m, rdim, 0, m.rows - rdim, m.cols);
}

}  // namespace detail

// ((X * Y) * Z)  ->  (X * (Y * Z)) with the same realized complex: the
// explicit octahedron on iterated cones is a pure re-reading of the block
// structure, so the comparison map is the identity and is verified as a
// quasi-isomorphism.
struct RebracketResult {
    WitnessTower::Ptr tower;
    ChainMap compare;  // realize(input) -> realize(output)
};

inline RebracketResult octahedral_rebracket(const WitnessTower::Ptr& w) {
    if (!w || w->is_leaf() || w->left()->is_leaf())
        throw Error("octahedral_rebracket expects shape ((X*Y)*Z)");
    const WitnessTower::Ptr inner = w->left();  // Node(X, Y, u)
    const WitnessTower::Ptr x = inner->left();
    const WitnessTower::Ptr y = inner->right();
    const WitnessTower::Ptr z = w->right();
    const ChainMap& u = inner->glue();   // Y[-1] -> X
    const ChainMap& v = w->glue();       // Z[-1] -> cone(u) with blocks [Y | X]

    // v splits into v_Y : Z[-1] -> Y and v_X : Z[-1] -> X
    std::map<int, ExactMatrix> vy_comps, vx_comps;
    BoundedComplex zm1 = shift(z->realize(), -1);
    for (int i = zm1.lowest_degree(); i <= zm1.highest_degree(); ++i) {
        ExactMatrix comp = v.component_at(i);
        int ydim = y->realize().dim_at(i);
        vy_comps[i] = submatrix(comp, 0, 0, ydim, comp.cols);
        vx_comps[i] = submatrix(comp, ydim, 0, comp.rows - ydim, comp.cols);
    }
    ChainMap vy(zm1, y->realize(), std::move(vy_comps));
    WitnessTower::Ptr yz = WitnessTower::node(y, z, std::move(vy));

    // new outer glue [v_X | u] : (Y*Z)-realization[-1] -> X
    BoundedComplex yzm1 = shift(yz->realize(), -1);
    std::map<int, ExactMatrix> g_comps;
    for (int i = yzm1.lowest_degree(); i <= yzm1.highest_degree(); ++i) {
        ExactMatrix zc = vx_comps.count(i) ? vx_comps[i]
                                           : ExactMatrix(x->realize().base().ring,
                                                         x->realize().dim_at(i), zm1.dim_at(i));
        g_comps[i] = hstack(zc, u.component_at(i));
    }
    ChainMap g(yzm1, x->realize(), std::move(g_comps));
    WitnessTower::Ptr out = WitnessTower::node(x, yz, std::move(g));

    if (out->realize() != w->realize())
        throw Error("rebracketing failed to reproduce the realized complex");
    ChainMap compare = identity_map(w->realize());
    std::map<int, ExactMatrix> id_comps = compare.components();
    ChainMap cross(w->realize(), out->realize(), std::move(id_comps));
    if (!is_quasi_iso(cross)) throw Error("rebracket comparison is not a quasi-isomorphism");
    return {out, std::move(cross)};
}

// Constructive extension-closedness of A * B classes.  Both inputs are
// nodes Node(A_i, B_i, u_i); outer_glue realizes an extension of
// realize(w2) by realize(w1).  The offending block of the extension's
// differential is a chain map A2[-1] -> B1 that is null-homotopic exactly
// because A-leaves are orthogonal to shifted B-leaves; conjugating by the
// resulting unipotent map and permuting blocks yields a witness shaped A * B.
struct StarExtensionResult {
    enum class Status { ok, orthogonality_failed, lift_failed };
    Status status = Status::ok;
    WitnessTower::Ptr tower;                 // shape Node(A', B') on success
    std::optional<ChainMap> compare;         // cone(outer_glue) -> realize(tower)
    std::string detail;                      // offending pair on failure
};

inline std::vector<std::pair<LeafSummand, BoundedComplex>> tower_leaf_objects(
    const WitnessTower::Ptr& t) {
    std::vector<std::pair<LeafSummand, BoundedComplex>> out;
    for (const LeafSummand& s : t->flattened_leaves()) {
        LeafSummand single = s;
        single.multiplicity = 1;
        out.push_back({single, shift(t->pool()->entries[size_t(s.generator)].second, s.shift)});
    }
    return out;
}

inline StarExtensionResult rebracket_extension_of_stars(const ChainMap& outer_glue,
                                                        const WitnessTower::Ptr& w1,
                                                        const WitnessTower::Ptr& w2) {
    if (!w1 || !w2 || w1->is_leaf() || w2->is_leaf())
        throw Error("rebracket_extension_of_stars expects two nodes shaped A*B");
    if (outer_glue.source() != shift(w2->realize(), -1) || outer_glue.target() != w1->realize())
        throw Error("outer glue must map realize(w2)[-1] -> realize(w1)");

    const WitnessTower::Ptr a1 = w1->left(), b1 = w1->right();
    const WitnessTower::Ptr a2 = w2->left(), b2 = w2->right();

    StarExtensionResult res;
    // hypothesis: every A-leaf is orthogonal to every B-leaf shifted by 1
    auto aleaves = tower_leaf_objects(a1);
    {
        auto more = tower_leaf_objects(a2);
        aleaves.insert(aleaves.end(), more.begin(), more.end());
    }
    auto bleaves = tower_leaf_objects(b1);
    {
        auto more = tower_leaf_objects(b2);
        bleaves.insert(bleaves.end(), more.begin(), more.end());
    }
    for (const auto& [as, aobj] : aleaves)
        for (const auto& [bs, bobj] : bleaves) {
            HomGroup hom1 = derived_hom(aobj, bobj, 1);
            if (!hom1.value.is_trivial()) {
                res.status = StarExtensionResult::Status::orthogonality_failed;
                res.detail = "Hom(A-leaf, B-leaf[1]) = " + hom1.value.describe() +
                             " for generators (" +
                             w1->pool()->entries[size_t(as.generator)].first + "[" +
                             std::to_string(as.shift) + "], " +
                             w1->pool()->entries[size_t(bs.generator)].first + "[" +
                             std::to_string(bs.shift) + "])";
                return res;
            }
        }

    const BoundedComplex &a1r = a1->realize(), &b1r = b1->realize();
    const BoundedComplex &a2r = a2->realize(), &b2r = b2->realize();
    const Ring ring = a1r.base().ring;

    // outer_glue components, split into the four blocks
    // rows of w1: [B1 | A1]; cols of w2[-1]: [B2 | A2]
    auto wbb = [&](int i) {
        return submatrix(outer_glue.component_at(i), 0, 0, b1r.dim_at(i), b2r.dim_at(i - 1));
    };
    auto wab = [&](int i) {
        return submatrix(outer_glue.component_at(i), 0, b2r.dim_at(i - 1), b1r.dim_at(i),
                         a2r.dim_at(i - 1));
    };
    auto wba = [&](int i) {
        return submatrix(outer_glue.component_at(i), b1r.dim_at(i), 0, a1r.dim_at(i),
                         b2r.dim_at(i - 1));
    };
    auto waa = [&](int i) {
        return submatrix(outer_glue.component_at(i), b1r.dim_at(i), b2r.dim_at(i - 1),
                         a1r.dim_at(i), a2r.dim_at(i - 1));
    };
    BoundedComplex src = shift(w2->realize(), -1);

    // the obstruction block is a chain map A2[-1] -> B1; kill it
    BoundedComplex a2m1 = shift(a2r, -1);
    std::map<int, ExactMatrix> theta_comps;
    for (int i = src.lowest_degree(); i <= src.highest_degree() + 1; ++i) {
        ExactMatrix m = wab(i);
        if (!m.is_zero()) theta_comps[i] = std::move(m);
    }
    ChainMap theta(a2m1, b1r, std::move(theta_comps));
    auto hope = find_homotopy(theta, zero_map(a2m1, b1r));
    if (!hope) {
        res.status = StarExtensionResult::Status::lift_failed;
        res.detail = "no chain-level lift despite orthogonal leaves";
        return res;
    }
    const Homotopy& h = *hope;  // h^i : A2^{i-1} -> B1^{i-1}

    // corrected inner glues
    const ChainMap& u1 = w1->glue();  // B1[-1] -> A1
    const ChainMap& u2 = w2->glue();  // B2[-1] -> A2
    std::map<int, ExactMatrix> glue_b_comps, glue_a_comps;
    BoundedComplex b2m1 = shift(b2r, -1);
    for (int i = b2m1.lowest_degree(); i <= b2m1.highest_degree(); ++i)
        glue_b_comps[i] = add(wbb(i), mul(h.component_at(i + 1), u2.component_at(i)));
    for (int i = a2m1.lowest_degree(); i <= a2m1.highest_degree(); ++i)
        glue_a_comps[i] = sub(waa(i), mul(u1.component_at(i), h.component_at(i)));
    WitnessTower::Ptr bprime = WitnessTower::node(b1, b2, ChainMap(b2m1, b1r, std::move(glue_b_comps)));
    WitnessTower::Ptr aprime = WitnessTower::node(a1, a2, ChainMap(a2m1, a1r, std::move(glue_a_comps)));

    // outer glue of the rebracketed witness: [[u2, 0], [w_BA, u1]]
    BoundedComplex bpm1 = shift(bprime->realize(), -1);
    std::map<int, ExactMatrix> big_comps;
    for (int i = bpm1.lowest_degree(); i <= bpm1.highest_degree(); ++i) {
        ExactMatrix top = hstack(u2.component_at(i),
                                 ExactMatrix(ring, a2r.dim_at(i), b1r.dim_at(i - 1)));
        ExactMatrix bot = hstack(wba(i), u1.component_at(i));
        big_comps[i] = vstack(top, bot);
    }
    WitnessTower::Ptr out =
        WitnessTower::node(aprime, bprime, ChainMap(bpm1, aprime->realize(), std::move(big_comps)));

    // comparison: permutation o unipotent correction, degreewise invertible
    BoundedComplex m_in = mapping_cone(outer_glue);
    std::map<int, ExactMatrix> cmp_comps;
    for (int i = m_in.lowest_degree(); i <= m_in.highest_degree(); ++i) {
        int b2d = b2r.dim_at(i), a2d = a2r.dim_at(i), b1d = b1r.dim_at(i), a1d = a1r.dim_at(i);
        int n = b2d + a2d + b1d + a1d;
        ExactMatrix phi = ExactMatrix::identity(ring, n);
        // add h (A2^i -> B1^i) into the B1 rows at the A2 columns
        ExactMatrix eta = h.component_at(i + 1);
        for (int r = 0; r < b1d; ++r)
            for (int c = 0; c < a2d; ++c) phi.at(b2d + a2d + r, b2d + c) = eta.at(r, c);
        // reorder (B2, A2, B1, A1) -> (B2, B1, A2, A1)
        ExactMatrix perm(ring, n, n);
        int dst = 0;
        for (int r = 0; r < b2d; ++r) perm.at(dst++, r) = 1;
        for (int r = 0; r < b1d; ++r) perm.at(dst++, b2d + a2d + r) = 1;
        for (int r = 0; r < a2d; ++r) perm.at(dst++, b2d + r) = 1;
        for (int r = 0; r < a1d; ++r) perm.at(dst++, b2d + a2d + b1d + r) = 1;
        cmp_comps[i] = mul(perm, phi);
    }
    ChainMap compare(m_in, out->realize(), std::move(cmp_comps));
    if (!is_quasi_iso(compare)) {
        res.status = StarExtensionResult::Status::lift_failed;
        res.detail = "comparison map failed verification";
        return res;
    }
    res.tower = out;
    res.compare = std::move(compare);
    return res;
}

// Rebuilds a tower over an extended pool; `pool` must contain the tower's
// own pool as a prefix, so leaf indices stay valid.
inline WitnessTower::Ptr rebase_pool(const WitnessTower::Ptr& t, const PoolPtr& pool) {
    if (pool->entries.size() < t->pool()->entries.size())
        throw Error("rebase_pool: new pool does not extend the old one");
    for (size_t k = 0; k < t->pool()->entries.size(); ++k)
        if (!(pool->entries[k] == t->pool()->entries[k]))
            throw Error("rebase_pool: new pool does not extend the old one");
    if (t->is_leaf()) return WitnessTower::leaf(pool, t->summands());
    return WitnessTower::node(rebase_pool(t->left(), pool), rebase_pool(t->right(), pool),
                              t->glue());
}

// Sum a node with the split triangle on two extra objects, as in the retract
// maneuver: Node(L, R, g) becomes Node(L + extraA, R + extraB, diag(g, 0)).
// Zero extras are skipped so the witness does not grow spurious depth.
struct SplitSumResult {
    WitnessTower::Ptr tower;
    PoolPtr pool;  // possibly extended with the extra objects
};

inline SplitSumResult sum_with_split_triangle(const WitnessTower::Ptr& w,
                                              const BoundedComplex& extra_a,
                                              const BoundedComplex& extra_b,
                                              const std::string& name_a = "extraA",
                                              const std::string& name_b = "extraB") {
    if (!w || w->is_leaf()) throw Error("sum_with_split_triangle expects a node");
    bool use_a = !extra_a.is_zero_object(), use_b = !extra_b.is_zero_object();
    if (!use_a && !use_b) return {w, w->pool()};
    if (use_a && !extra_a.base().same_as(w->realize().base()))
        throw Error("extraA lives over a different base");
    if (use_b && !extra_b.base().same_as(w->realize().base()))
        throw Error("extraB lives over a different base");

    auto pool = std::make_shared<GeneratorPool>(*w->pool());
    int ia = -1, ib = -1;
    if (use_a) {
        ia = int(pool->entries.size());
        pool->entries.push_back({name_a, extra_a});
    }
    if (use_b) {
        ib = int(pool->entries.size());
        pool->entries.push_back({name_b, extra_b});
    }
    PoolPtr shared_pool = pool;

    auto rebased = rebase_pool(w, shared_pool);
    WitnessTower::Ptr lpart = rebased->left();
    WitnessTower::Ptr rpart = rebased->right();
    if (use_a) {
        auto leaf_a = WitnessTower::leaf(shared_pool, {LeafSummand{ia, 0, 1}});
        lpart = WitnessTower::node(lpart, leaf_a,
                                   zero_map(shift(leaf_a->realize(), -1), lpart->realize()));
    }
    if (use_b) {
        auto leaf_b = WitnessTower::leaf(shared_pool, {LeafSummand{ib, 0, 1}});
        rpart = WitnessTower::node(rpart, leaf_b,
                                   zero_map(shift(leaf_b->realize(), -1), rpart->realize()));
    }
    // diag(g, 0): realize(lpart) has blocks [extraA | L] when wrapped, and
    // realize(rpart)[-1] has columns [extraB | R]; g lands in the (L, R) corner.
    BoundedComplex rm1 = shift(rpart->realize(), -1);
    const Ring ring = rm1.base().ring;
    std::map<int, ExactMatrix> comps;
    const ChainMap& g = w->glue();
    for (int i = rm1.lowest_degree(); i <= rm1.highest_degree(); ++i) {
        ExactMatrix m(ring, lpart->realize().dim_at(i), rm1.dim_at(i));
        int row0 = use_a ? extra_a.dim_at(i) : 0;
        int col0 = use_b ? extra_b.dim_at(i - 1) : 0;
        m = paste(std::move(m), g.component_at(i), row0, col0);
        comps[i] = std::move(m);
    }
    WitnessTower::Ptr out =
        WitnessTower::node(lpart, rpart, ChainMap(rm1, lpart->realize(), std::move(comps)));
    return {out, shared_pool};
}

// An explicit null-homotopy of N*id, witnessing that the object is N-torsion
// in the derived category.  Construction is by the composition lemma: if
// a*id_L ~ 0 via h_L and b*id_R ~ 0 via h_R, then on cone(g : R[-1] -> L)
//     H = [[a h_R, 0], [-h_L g h_R, b h_L]]
// satisfies d H + H d = (a b) * id, block for block.
struct AnnihilationCertificate {
    BoundedComplex object;
    Int exponent;
    Homotopy homotopy;
};

struct AnnihilationOutcome {
    std::optional<AnnihilationCertificate> certificate;
    std::string reason;  // populated when no certificate exists
};

namespace detail {

inline std::optional<Homotopy> annihilation_homotopy(const WitnessTower::Ptr& t,
                                                     const std::map<int, Int>& leaf_annihilators,
                                                     Int& exponent, std::string& reason) {
    const BoundedComplex& obj = t->realize();
    if (t->is_leaf()) {
        Int n = 1;
        for (const LeafSummand& s : t->summands()) {
            auto it = leaf_annihilators.find(s.generator);
            if (it == leaf_annihilators.end()) {
                reason = "no annihilator for generator '" +
                         t->pool()->entries[size_t(s.generator)].first + "'";
                return std::nullopt;
            }
            if (it->second < 1) {
                reason = "annihilator must be positive";
                return std::nullopt;
            }
            n = int_lcm(n, it->second);
        }
        auto h = find_homotopy(scale_map(n, identity_map(obj)), zero_map(obj, obj));
        if (!h) {
            reason = "claimed annihilator " + to_decimal(n) + " is not null-homotopic on leaf '" +
                     t->pool()->entries[size_t(t->summands().front().generator)].first + "'";
            return std::nullopt;
        }
        exponent = n;
        return h;
    }

    Int a = 1, b = 1;
    auto hl = annihilation_homotopy(t->left(), leaf_annihilators, a, reason);
    if (!hl) return std::nullopt;
    auto hr = annihilation_homotopy(t->right(), leaf_annihilators, b, reason);
    if (!hr) return std::nullopt;

    const BoundedComplex& rr = t->right()->realize();
    const ChainMap& g = t->glue();
    const Ring ring = obj.base().ring;
    std::map<int, ExactMatrix> comps;
    for (int i = obj.lowest_degree(); i <= obj.highest_degree() + 1; ++i) {
        int rows = obj.dim_at(i - 1), cols = obj.dim_at(i);
        if (rows == 0 || cols == 0) continue;
        ExactMatrix h(ring, rows, cols);
        int rdim_prev = rr.dim_at(i - 1);
        h = paste(std::move(h), scale(a, hr->component_at(i)), 0, 0);
        ExactMatrix x = neg(mul(hl->component_at(i), mul(g.component_at(i), hr->component_at(i))));
        h = paste(std::move(h), x, rdim_prev, 0);
        h = paste(std::move(h), scale(b, hl->component_at(i)), rdim_prev, rr.dim_at(i));
        comps[i] = std::move(h);
    }
    exponent = a * b;
    // the Homotopy constructor re-verifies d h + h d = N * id exactly
    return Homotopy(scale_map(exponent, identity_map(obj)), zero_map(obj, obj), std::move(comps));
}

}  // namespace detail

inline AnnihilationOutcome annihilation_certificate(const WitnessTower::Ptr& w,
                                                    const std::map<int, Int>& leaf_annihilators) {
    if (!w) throw Error("annihilation_certificate expects a tower");
    AnnihilationOutcome out;
    Int exponent = 1;
    auto h = detail::annihilation_homotopy(w, leaf_annihilators, exponent, out.reason);
    if (!h) return out;
    out.certificate = AnnihilationCertificate{w->realize(), exponent, std::move(*h)};
    return out;
}

}  // namespace homcert
