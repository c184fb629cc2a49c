// Shared helpers for the test suite: random matrix generation, conversions
// between the generic and bit-packed representations, and small brute-force
// reference implementations used as independent oracles.
#pragma once

#include <vector>

#include "dqi/bitvec.hpp"
#include "dqi/field.hpp"
#include "dqi/instance.hpp"
#include "dqi/rng.hpp"

namespace dqi::testsupport {

inline FpMatrix random_matrix(Rng& rng, uint32_t p, size_t rows, size_t cols) {
    FpMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            m.at(r, c) = static_cast<uint32_t>(rng.below(p));
    return m;
}

inline BitMatrix to_bit(const FpMatrix& m) {
    BitMatrix b(m.rows, m.cols);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c)
            if (m.at(r, c)) b.set(r, c, true);
    return b;
}

inline FpMatrix to_generic(const BitMatrix& b) {
    FpMatrix m(b.rows(), b.cols());
    for (size_t r = 0; r < b.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c)
            if (b.get(r, c)) m.at(r, c) = 1;
    return m;
}

inline FpMatrix mat_mul(const FieldCtx& F, const FpMatrix& a, const FpMatrix& b) {
    FpMatrix out(a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            const uint32_t aik = a.at(i, k);
            if (!aik) continue;
            for (size_t j = 0; j < b.cols; ++j)
                out.at(i, j) = F.add(out.at(i, j), F.mul(aik, b.at(k, j)));
        }
    return out;
}

// Reference binomial via Pascal recursion, independent of the multiplicative
// library routine.
inline uint64_t pascal_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::vector<uint64_t> row(n + 1, 0);
    row[0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i; j >= 1; --j) row[j] += row[j - 1];
    return row[k];
}

// All length-m bit strings of low weight, as plain masks. m must stay small.
inline std::vector<uint64_t> masks_up_to_weight(unsigned m, unsigned kmax) {
    std::vector<uint64_t> out;
    for (uint64_t y = 0; y < (uint64_t(1) << m); ++y)
        if (static_cast<unsigned>(__builtin_popcountll(y)) <= kmax) out.push_back(y);
    return out;
}

// Exhaustive satisfied-count over the sparse rows, written independently of
// the library implementation (dense dot products, linear membership scan).
inline size_t brute_satisfied(const MaxLinsatInstance& inst, const FpVector& x) {
    const FpMatrix B = dense_b(inst);
    size_t count = 0;
    for (size_t i = 0; i < inst.m; ++i) {
        uint64_t dot = 0;
        for (size_t j = 0; j < inst.n; ++j)
            dot += static_cast<uint64_t>(B.at(i, j)) * x[j];
        const uint32_t r = static_cast<uint32_t>(dot % inst.p);
        bool ok = false;
        if (inst.p == 2) {
            ok = (r == inst.v[i]);
        } else {
            for (uint32_t allowed : inst.f_sets[i])
                if (allowed == r) ok = true;
        }
        if (ok) ++count;
    }
    return count;
}

} // namespace dqi::testsupport
