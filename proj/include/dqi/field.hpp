// Prime-field arithmetic and dense linear algebra over F_p.
//
// Two elimination paths exist: this generic path (any prime modulus) and the
// bit-packed path in bitvec.hpp for modulus 2. Callers with binary data may
// use either; the test suite cross-checks that they agree.
#pragma once

#include <cstdint>
#include <vector>

#include "dqi/errors.hpp"

namespace dqi {

// Arithmetic context for a prime modulus. Construction validates primality.
class FieldCtx {
  public:
    explicit FieldCtx(uint32_t p);

    uint32_t p() const { return p_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
    }
    uint32_t pow(uint32_t base, uint64_t e) const;
    uint32_t inv(uint32_t a) const;

    // Smallest generator of the multiplicative group; 1 for p = 2.
    uint32_t primitive_element() const;

  private:
    uint32_t p_;
};

struct FpMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> data; // row-major

    FpMatrix() = default;
    FpMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0) {}

    uint32_t& at(size_t r, size_t c) { return data[r * cols + c]; }
    uint32_t at(size_t r, size_t c) const { return data[r * cols + c]; }

    bool operator==(const FpMatrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

using FpVector = std::vector<uint32_t>;

FpVector mat_vec_mul(const FieldCtx& F, const FpMatrix& m, const FpVector& x);

struct EchelonResult {
    FpMatrix rref;              // reduced row echelon form, pivots normalized to 1
    FpMatrix transform;         // transform * input = rref
    size_t rank = 0;
    std::vector<size_t> pivot_cols; // ascending, one per nonzero rref row
};

// Deterministic elimination: leftmost column first; within a column, the first
// unused row (top to bottom) with a nonzero entry is the pivot.
EchelonResult row_echelon(const FieldCtx& F, const FpMatrix& m);

// Basis of the right nullspace; free columns taken in ascending order, each
// basis vector carrying a 1 in its own free column.
std::vector<FpVector> nullspace_basis(const FieldCtx& F, const FpMatrix& m);

struct FpSolveResult {
    bool ok = false; // false when the system is inconsistent
    FpVector x;
};

// One particular solution of m x = rhs (free variables set to 0).
FpSolveResult solve_particular(const FieldCtx& F, const FpMatrix& m, const FpVector& rhs);

} // namespace dqi
