#pragma once

// Dense exact matrices over Z or F_p.  Row-major, value semantics,
// 0xN and Nx0 shapes are legal and show up constantly (empty complexes,
// empty Hom spaces), so nothing here may assume positive dimensions.

#include "homcert/ring.hpp"

#include <initializer_list>
#include <vector>

namespace homcert {

struct ExactMatrix {
    Ring ring = Ring::integers();
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;  // rows * cols entries, row-major, reduced

    ExactMatrix() = default;

    ExactMatrix(Ring r, int m, int n) : ring(r), rows(m), cols(n), a(size_t(m) * size_t(n), Int(0)) {
        if (m < 0 || n < 0) throw Error("negative matrix dimension");
    }

    static ExactMatrix identity(Ring r, int n) {
        ExactMatrix id(r, n, n);
        for (int i = 0; i < n; ++i) id.at(i, i) = 1;
        return id;
    }

    static ExactMatrix from_rows(Ring r, std::initializer_list<std::initializer_list<long>> data) {
        int m = int(data.size());
        int n = m ? int(data.begin()->size()) : 0;
        ExactMatrix out(r, m, n);
        int i = 0;
        for (const auto& row : data) {
            if (int(row.size()) != n) throw Error("ragged matrix literal");
            int j = 0;
            for (long v : row) out.set(i, j++, Int(v));
            ++i;
        }
        return out;
    }

    Int& at(int i, int j) {
        return a[size_t(i) * size_t(cols) + size_t(j)];
    }
    const Int& at(int i, int j) const {
        return a[size_t(i) * size_t(cols) + size_t(j)];
    }

    void set(int i, int j, const Int& v) { at(i, j) = ring.reduce(v); }

    bool is_zero() const {
        for (const Int& x : a)
            if (x != 0) return false;
        return true;
    }

    bool is_square() const { return rows == cols; }

    bool operator==(const ExactMatrix& o) const {
        return ring == o.ring && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    // Entrywise <, used only as a deterministic tie-break when ordering
    // generating sets.
    bool lex_less(const ExactMatrix& o) const {
        if (rows != o.rows) return rows < o.rows;
        if (cols != o.cols) return cols < o.cols;
        for (size_t k = 0; k < a.size(); ++k)
            if (a[k] != o.a[k]) return a[k] < o.a[k];
        return false;
    }
};

inline void check_same_ring(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.ring != y.ring) throw Error("matrix ring mismatch");
}

inline ExactMatrix mul(const ExactMatrix& x, const ExactMatrix& y) {
    check_same_ring(x, y);
    if (x.cols != y.rows) throw Error("matrix product dimension mismatch");
    ExactMatrix out(x.ring, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) {
                const Int& ykj = y.at(k, j);
                if (ykj != 0) out.at(i, j) += xik * ykj;
            }
        }
    if (out.ring.is_field())
        for (Int& v : out.a) v = out.ring.reduce(v);
    return out;
}

inline ExactMatrix add(const ExactMatrix& x, const ExactMatrix& y) {
    check_same_ring(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix sum dimension mismatch");
    ExactMatrix out(x.ring, x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.ring.add(x.a[k], y.a[k]);
    return out;
}

inline ExactMatrix sub(const ExactMatrix& x, const ExactMatrix& y) {
    check_same_ring(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix difference dimension mismatch");
    ExactMatrix out(x.ring, x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.ring.sub(x.a[k], y.a[k]);
    return out;
}

inline ExactMatrix scale(const Int& c, const ExactMatrix& x) {
    ExactMatrix out(x.ring, x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.ring.mul(c, x.a[k]);
    return out;
}

inline ExactMatrix neg(const ExactMatrix& x) { return scale(Int(-1), x); }

inline ExactMatrix transpose(const ExactMatrix& x) {
    ExactMatrix out(x.ring, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

inline ExactMatrix submatrix(const ExactMatrix& x, int row0, int col0, int m, int n) {
    if (row0 < 0 || col0 < 0 || row0 + m > x.rows || col0 + n > x.cols)
        throw Error("submatrix out of range");
    ExactMatrix out(x.ring, m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = x.at(row0 + i, col0 + j);
    return out;
}

// [x | y]
inline ExactMatrix hstack(const ExactMatrix& x, const ExactMatrix& y) {
    check_same_ring(x, y);
    if (x.rows != y.rows) throw Error("hstack row mismatch");
    ExactMatrix out(x.ring, x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) out.at(i, x.cols + j) = y.at(i, j);
    }
    return out;
}

// [x / y]
inline ExactMatrix vstack(const ExactMatrix& x, const ExactMatrix& y) {
    check_same_ring(x, y);
    if (x.cols != y.cols) throw Error("vstack column mismatch");
    ExactMatrix out(x.ring, x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(x.rows + i, j) = y.at(i, j);
    return out;
}

// diag(x, y) as a block matrix.
inline ExactMatrix block_diag(const ExactMatrix& x, const ExactMatrix& y) {
    check_same_ring(x, y);
    ExactMatrix out(x.ring, x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) out.at(x.rows + i, x.cols + j) = y.at(i, j);
    return out;
}

// Writes y into x at (row0, col0) and returns the result.
inline ExactMatrix paste(ExactMatrix x, const ExactMatrix& y, int row0, int col0) {
    check_same_ring(x, y);
    if (row0 < 0 || col0 < 0 || row0 + y.rows > x.rows || col0 + y.cols > x.cols)
        throw Error("paste out of range");
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) x.at(row0 + i, col0 + j) = y.at(i, j);
    return x;
}

inline ExactMatrix column(const ExactMatrix& x, int j) { return submatrix(x, 0, j, x.rows, 1); }

}  // namespace homcert
