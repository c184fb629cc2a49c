#include "dqi/bitvec.hpp"

#include "dqi/errors.hpp"

namespace dqi {

BitVector BitMatrix::mul(const BitVector& x) const {
    require(x.size() == cols_, ErrorKind::parameter, "BitMatrix::mul: shape mismatch");
    BitVector y(rows_);
    for (size_t r = 0; r < rows_; ++r) {
        if (data_[r].parity_and(x)) y.set(r, true);
    }
    return y;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

BitEchelonResult bit_row_echelon(const BitMatrix& m) {
    BitEchelonResult res;
    res.rref = m;
    const size_t rows = m.rows();
    const size_t cols = m.cols();
    // Identity transform, extended as elimination proceeds.
    res.transform = BitMatrix(rows, rows);
    for (size_t r = 0; r < rows; ++r) res.transform.set(r, r, true);

    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // First row at or below pivot_row with a 1 in this column.
        size_t sel = rows;
        for (size_t r = pivot_row; r < rows; ++r) {
            if (res.rref.get(r, col)) {
                sel = r;
                break;
            }
        }
        if (sel == rows) continue;
        if (sel != pivot_row) {
            std::swap(res.rref.row(sel), res.rref.row(pivot_row));
            std::swap(res.transform.row(sel), res.transform.row(pivot_row));
        }
        for (size_t r = 0; r < rows; ++r) {
            if (r != pivot_row && res.rref.get(r, col)) {
                res.rref.row(r).xor_with(res.rref.row(pivot_row));
                res.transform.row(r).xor_with(res.transform.row(pivot_row));
            }
        }
        res.pivot_cols.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

std::vector<BitVector> bit_nullspace(const BitMatrix& m) {
    BitEchelonResult ech = bit_row_echelon(m);
    const size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : ech.pivot_cols) is_pivot[c] = true;

    std::vector<BitVector> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVector v(cols);
        v.set(free_col, true);
        // Back-substitute: pivot row i fixes variable pivot_cols[i].
        for (size_t i = 0; i < ech.pivot_cols.size(); ++i) {
            if (ech.rref.get(i, free_col)) v.set(ech.pivot_cols[i], true);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

BitSolveResult bit_solve(const BitMatrix& m, const BitVector& rhs) {
    require(rhs.size() == m.rows(), ErrorKind::parameter, "bit_solve: shape mismatch");
    BitEchelonResult ech = bit_row_echelon(m);
    // Apply the same row operations to the right-hand side.
    BitVector reduced(m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        if (ech.transform.row(r).parity_and(rhs)) reduced.set(r, true);
    }
    BitSolveResult out;
    // Rows past the rank must have zero rhs for consistency.
    for (size_t r = ech.rank; r < m.rows(); ++r) {
        if (reduced.get(r)) return out; // ok stays false
    }
    out.ok = true;
    out.x = BitVector(m.cols());
    for (size_t i = 0; i < ech.pivot_cols.size(); ++i) {
        if (reduced.get(i)) out.x.set(ech.pivot_cols[i], true);
    }
    return out;
}

} // namespace dqi
