#include "dqi/field.hpp"

namespace dqi {

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> out;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

FieldCtx::FieldCtx(uint32_t p) : p_(p) {
    require(is_prime(p), ErrorKind::parameter, "FieldCtx: modulus must be prime");
}

uint32_t FieldCtx::pow(uint32_t base, uint64_t e) const {
    uint32_t result = 1;
    uint32_t b = base % p_;
    while (e) {
        if (e & 1) result = mul(result, b);
        b = mul(b, b);
        e >>= 1;
    }
    return result;
}

uint32_t FieldCtx::inv(uint32_t a) const {
    require(a % p_ != 0, ErrorKind::parameter, "FieldCtx::inv: zero has no inverse");
    return pow(a, p_ - 2); // Fermat
}

uint32_t FieldCtx::primitive_element() const {
    if (p_ == 2) return 1;
    const std::vector<uint32_t> factors = prime_factors(p_ - 1);
    for (uint32_t g = 2; g < p_; ++g) {
        bool generates = true;
        for (uint32_t q : factors) {
            if (pow(g, (p_ - 1) / q) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw_numeric("FieldCtx::primitive_element: no generator found"); // unreachable for prime p
}

FpVector mat_vec_mul(const FieldCtx& F, const FpMatrix& m, const FpVector& x) {
    require(x.size() == m.cols, ErrorKind::parameter, "mat_vec_mul: shape mismatch");
    FpVector y(m.rows, 0);
    for (size_t r = 0; r < m.rows; ++r) {
        uint64_t acc = 0;
        for (size_t c = 0; c < m.cols; ++c) {
            acc += static_cast<uint64_t>(m.at(r, c)) * x[c];
            if (acc >= (1ULL << 62)) acc %= F.p();
        }
        y[r] = static_cast<uint32_t>(acc % F.p());
    }
    return y;
}

EchelonResult row_echelon(const FieldCtx& F, const FpMatrix& m) {
    EchelonResult res;
    res.rref = m;
    const size_t rows = m.rows;
    const size_t cols = m.cols;
    res.transform = FpMatrix(rows, rows);
    for (size_t r = 0; r < rows; ++r) res.transform.at(r, r) = 1;

    auto scale_row = [&](FpMatrix& mat, size_t r, uint32_t factor) {
        for (size_t c = 0; c < mat.cols; ++c) mat.at(r, c) = F.mul(mat.at(r, c), factor);
    };
    auto axpy_row = [&](FpMatrix& mat, size_t dst, size_t src, uint32_t factor) {
        for (size_t c = 0; c < mat.cols; ++c)
            mat.at(dst, c) = F.add(mat.at(dst, c), F.mul(factor, mat.at(src, c)));
    };
    auto swap_rows = [&](FpMatrix& mat, size_t a, size_t b) {
        for (size_t c = 0; c < mat.cols; ++c) std::swap(mat.at(a, c), mat.at(b, c));
    };

    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
        size_t sel = rows;
        for (size_t r = pivot_row; r < rows; ++r) {
            if (res.rref.at(r, col) != 0) {
                sel = r;
                break;
            }
        }
        if (sel == rows) continue;
        if (sel != pivot_row) {
            swap_rows(res.rref, sel, pivot_row);
            swap_rows(res.transform, sel, pivot_row);
        }
        const uint32_t inv_pivot = F.inv(res.rref.at(pivot_row, col));
        if (inv_pivot != 1) {
            scale_row(res.rref, pivot_row, inv_pivot);
            scale_row(res.transform, pivot_row, inv_pivot);
        }
        for (size_t r = 0; r < rows; ++r) {
            if (r == pivot_row) continue;
            const uint32_t v = res.rref.at(r, col);
            if (v != 0) {
                const uint32_t factor = F.neg(v);
                axpy_row(res.rref, r, pivot_row, factor);
                axpy_row(res.transform, r, pivot_row, factor);
            }
        }
        res.pivot_cols.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

std::vector<FpVector> nullspace_basis(const FieldCtx& F, const FpMatrix& m) {
    EchelonResult ech = row_echelon(F, m);
    const size_t cols = m.cols;
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : ech.pivot_cols) is_pivot[c] = true;

    std::vector<FpVector> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        FpVector v(cols, 0);
        v[free_col] = 1;
        for (size_t i = 0; i < ech.pivot_cols.size(); ++i) {
            const uint32_t coeff = ech.rref.at(i, free_col);
            if (coeff != 0) v[ech.pivot_cols[i]] = F.neg(coeff);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

FpSolveResult solve_particular(const FieldCtx& F, const FpMatrix& m, const FpVector& rhs) {
    require(rhs.size() == m.rows, ErrorKind::parameter, "solve_particular: shape mismatch");
    EchelonResult ech = row_echelon(F, m);
    // Row operations applied to rhs.
    FpVector reduced(m.rows, 0);
    for (size_t r = 0; r < m.rows; ++r) {
        uint64_t acc = 0;
        for (size_t c = 0; c < m.rows; ++c) {
            acc += static_cast<uint64_t>(ech.transform.at(r, c)) * rhs[c];
            if (acc >= (1ULL << 62)) acc %= F.p();
        }
        reduced[r] = static_cast<uint32_t>(acc % F.p());
    }
    FpSolveResult out;
    for (size_t r = ech.rank; r < m.rows; ++r) {
        if (reduced[r] != 0) return out; // inconsistent
    }
    out.ok = true;
    out.x.assign(m.cols, 0);
    for (size_t i = 0; i < ech.pivot_cols.size(); ++i) out.x[ech.pivot_cols[i]] = reduced[i];
    return out;
}

} // namespace dqi
