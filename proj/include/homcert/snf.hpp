#pragma once

// Smith normal form and the linear-algebra queries that ride on it:
// kernels, cokernel invariants, and exact linear solving over Z or F_p.
//
// Pivoting is smallest-absolute-value with row/column reduction; over a
// field the same loop degenerates to ordinary elimination because divmod
// is exact there.  Both transforms and their inverses are accumulated so
// kernel and solve need no extra elimination passes.

#include "homcert/abelian.hpp"
#include "homcert/matrix.hpp"

#include <optional>
#include <utility>

namespace homcert {

struct SNFDecomposition {
    ExactMatrix u, s, v;        // u * s * v == input, u and v invertible
    ExactMatrix u_inv, v_inv;   // accumulated inverses
    int rank = 0;               // number of nonzero diagonal entries of s

    Int diag(int i) const { return s.at(i, i); }
};

namespace detail {

struct SNFWorker {
    Ring ring;
    ExactMatrix s, u, v, u_inv, v_inv;

    explicit SNFWorker(const ExactMatrix& input)
        : ring(input.ring),
          s(input),
          u(ExactMatrix::identity(input.ring, input.rows)),
          v(ExactMatrix::identity(input.ring, input.cols)),
          u_inv(ExactMatrix::identity(input.ring, input.rows)),
          v_inv(ExactMatrix::identity(input.ring, input.cols)) {}

    // Row ops on s are mirrored so that u*s*v and the inverses stay exact.
    void row_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < s.cols; ++k) std::swap(s.at(i, k), s.at(j, k));
        for (int k = 0; k < u.rows; ++k) std::swap(u.at(k, i), u.at(k, j));
        for (int k = 0; k < u_inv.cols; ++k) std::swap(u_inv.at(i, k), u_inv.at(j, k));
    }

    // row_i += c * row_j on s
    void row_axpy(int i, int j, const Int& c) {
        if (c == 0) return;
        for (int k = 0; k < s.cols; ++k) s.at(i, k) = ring.add(s.at(i, k), c * s.at(j, k));
        for (int k = 0; k < u.rows; ++k) u.at(k, j) = ring.sub(u.at(k, j), c * u.at(k, i));
        for (int k = 0; k < u_inv.cols; ++k) u_inv.at(i, k) = ring.add(u_inv.at(i, k), c * u_inv.at(j, k));
    }

    // row_i *= c, c a unit
    void row_scale(int i, const Int& c) {
        Int cinv = ring.inverse(c);
        for (int k = 0; k < s.cols; ++k) s.at(i, k) = ring.mul(c, s.at(i, k));
        for (int k = 0; k < u.rows; ++k) u.at(k, i) = ring.mul(cinv, u.at(k, i));
        for (int k = 0; k < u_inv.cols; ++k) u_inv.at(i, k) = ring.mul(c, u_inv.at(i, k));
    }

    void col_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < s.rows; ++k) std::swap(s.at(k, i), s.at(k, j));
        for (int k = 0; k < v.cols; ++k) std::swap(v.at(i, k), v.at(j, k));
        for (int k = 0; k < v_inv.rows; ++k) std::swap(v_inv.at(k, i), v_inv.at(k, j));
    }

    // col_j += c * col_i on s
    void col_axpy(int j, int i, const Int& c) {
        if (c == 0) return;
        for (int k = 0; k < s.rows; ++k) s.at(k, j) = ring.add(s.at(k, j), c * s.at(k, i));
        for (int k = 0; k < v.cols; ++k) v.at(i, k) = ring.sub(v.at(i, k), c * v.at(j, k));
        for (int k = 0; k < v_inv.rows; ++k) v_inv.at(k, j) = ring.add(v_inv.at(k, j), c * v_inv.at(k, i));
    }

    void col_scale(int j, const Int& c) {
        Int cinv = ring.inverse(c);
        for (int k = 0; k < s.rows; ++k) s.at(k, j) = ring.mul(c, s.at(k, j));
        for (int k = 0; k < v.rows; ++k) v.at(j, k) = ring.mul(cinv, v.at(j, k));
        for (int k = 0; k < v_inv.rows; ++k) v_inv.at(k, j) = ring.mul(c, v_inv.at(k, j));
    }

    // Smallest nonzero |entry| in s[t.., t..], ties broken by (row, col).
    bool find_pivot(int t, int& pi, int& pj) const {
        bool found = false;
        Int best;
        for (int i = t; i < s.rows; ++i)
            for (int j = t; j < s.cols; ++j) {
                const Int& x = s.at(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    bool cross_cleared(int t) const {
        for (int i = t + 1; i < s.rows; ++i)
            if (s.at(i, t) != 0) return false;
        for (int j = t + 1; j < s.cols; ++j)
            if (s.at(t, j) != 0) return false;
        return true;
    }

    void run() {
        int nmin = std::min(s.rows, s.cols);
        for (int t = 0; t < nmin; ++t) {
            for (;;) {
                int pi, pj;
                if (!find_pivot(t, pi, pj)) return;  // all zero from here on
                row_swap(t, pi);
                col_swap(t, pj);
                Int q, r;
                for (int i = t + 1; i < s.rows; ++i)
                    if (s.at(i, t) != 0) {
                        ring.divmod(s.at(i, t), s.at(t, t), q, r);
                        row_axpy(i, t, -q);
                    }
                for (int j = t + 1; j < s.cols; ++j)
                    if (s.at(t, j) != 0) {
                        ring.divmod(s.at(t, j), s.at(t, t), q, r);
                        col_axpy(j, t, -q);
                    }
                if (!cross_cleared(t)) continue;  // remainders became new, smaller pivots
                if (!ring.is_field()) {
                    // Pull any non-multiple into row t and keep reducing.
                    bool fixed = true;
                    for (int i = t + 1; i < s.rows && fixed; ++i)
                        for (int j = t + 1; j < s.cols && fixed; ++j)
                            if (s.at(i, j) % s.at(t, t) != 0) {
                                row_axpy(t, i, Int(1));
                                fixed = false;
                            }
                    if (!fixed) continue;
                    if (s.at(t, t) < 0) row_scale(t, Int(-1));
                } else {
                    row_scale(t, ring.inverse(s.at(t, t)));
                }
                break;
            }
        }
    }
};

}  // namespace detail

inline SNFDecomposition smith_normal_form(const ExactMatrix& input) {
    detail::SNFWorker w(input);
    w.run();
    SNFDecomposition out{std::move(w.u), std::move(w.s), std::move(w.v),
                         std::move(w.u_inv), std::move(w.v_inv), 0};
    int nmin = std::min(out.s.rows, out.s.cols);
    while (out.rank < nmin && out.s.at(out.rank, out.rank) != 0) ++out.rank;
    return out;
}

// Columns form a basis of {x : A x = 0}: a free basis of the saturated
// kernel lattice over Z, a vector-space basis over F_p.
inline ExactMatrix kernel_basis(const ExactMatrix& a) {
    SNFDecomposition snf = smith_normal_form(a);
    int n = a.cols;
    int k = n - snf.rank;
    ExactMatrix out(a.ring, n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) out.at(i, j) = snf.v_inv.at(i, snf.rank + j);
    return out;
}

// Isomorphism class of coker(A) = target / column span, off the SNF diagonal.
// Over F_p the result is the dimension (free_rank) with empty torsion.
inline FGAbelianGroup cokernel_invariants(const ExactMatrix& a) {
    SNFDecomposition snf = smith_normal_form(a);
    FGAbelianGroup out;
    out.free_rank = a.rows - snf.rank;
    for (int i = 0; i < snf.rank; ++i) {
        Int d = snf.diag(i);
        if (d >= 2) out.torsion.push_back(d);
    }
    return out;
}

// Solves A X = B column by column; nullopt if any column fails.  Over Z,
// solvability is decided by the divisibility of U^-1 B against the diagonal.
inline std::optional<ExactMatrix> solve_matrix(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_ring(a, b);
    if (b.rows != a.rows) throw Error("solve_matrix: shape mismatch");
    SNFDecomposition snf = smith_normal_form(a);
    ExactMatrix c = mul(snf.u_inv, b);
    ExactMatrix y(a.ring, a.cols, b.cols);
    for (int col = 0; col < b.cols; ++col)
        for (int i = 0; i < a.rows; ++i) {
            if (i < snf.rank) {
                Int q, r;
                a.ring.divmod(c.at(i, col), snf.diag(i), q, r);
                if (r != 0) return std::nullopt;
                y.at(i, col) = q;
            } else if (c.at(i, col) != 0) {
                return std::nullopt;
            }
        }
    return mul(snf.v_inv, y);
}

// x with A x = b, or nullopt.  b is a rows(A) x 1 column.
inline std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b) {
    if (b.cols != 1) throw Error("solve: right-hand side must be a column");
    return solve_matrix(a, b);
}

// Does the column lattice/span of inner sit inside that of outer?
inline bool lattice_contains(const ExactMatrix& outer, const ExactMatrix& inner) {
    check_same_ring(outer, inner);
    if (outer.rows != inner.rows) throw Error("lattice_contains: ambient rank mismatch");
    return solve_matrix(outer, inner).has_value();
}

inline bool lattice_equal(const ExactMatrix& x, const ExactMatrix& y) {
    return lattice_contains(x, y) && lattice_contains(y, x);
}

}  // namespace homcert
