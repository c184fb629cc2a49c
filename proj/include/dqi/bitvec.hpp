// Bit-packed vectors and matrices over the two-element field, plus the
// elimination routines (reduced row echelon form, nullspace, particular
// solutions) used by the fast binary path of the linear-algebra layer.
#pragma once

#include <cstdint>
#include <vector>

namespace dqi {

class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(size_t i, bool v) {
        uint64_t mask = 1ULL << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

    void xor_with(const BitVector& other) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    size_t popcount() const {
        size_t c = 0;
        for (uint64_t w : words_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    bool parity_and(const BitVector& other) const {
        uint64_t acc = 0;
        for (size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return __builtin_parityll(acc);
    }

    bool is_zero() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    bool operator==(const BitVector& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

    const std::vector<uint64_t>& words() const { return words_; }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> words_;
};

class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const { return data_[r].get(c); }
    void set(size_t r, size_t c, bool v) { data_[r].set(c, v); }

    BitVector& row(size_t r) { return data_[r]; }
    const BitVector& row(size_t r) const { return data_[r]; }

    // y = M x over F2.
    BitVector mul(const BitVector& x) const;

    BitMatrix transposed() const;

    bool operator==(const BitMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

  private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<BitVector> data_;
};

struct BitEchelonResult {
    BitMatrix rref;            // reduced row echelon form of the input
    BitMatrix transform;       // row operations applied: transform * input = rref
    size_t rank = 0;
    std::vector<size_t> pivot_cols; // one entry per nonzero rref row, ascending
};

// Deterministic elimination: for each column left to right, the first row (top
// to bottom) with a nonzero entry among the unused rows becomes the pivot.
BitEchelonResult bit_row_echelon(const BitMatrix& m);

// Basis of {x : M x = 0}, one BitVector per basis element. Free columns are
// taken in ascending order; each basis vector has a 1 in its own free column.
std::vector<BitVector> bit_nullspace(const BitMatrix& m);

// One solution of M x = rhs, or empty optional-style flag via `ok`.
struct BitSolveResult {
    bool ok = false;
    BitVector x;
};
BitSolveResult bit_solve(const BitMatrix& m, const BitVector& rhs);

} // namespace dqi
