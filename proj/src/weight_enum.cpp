#include "dqi/weight_enum.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "dqi/errors.hpp"

namespace dqi {

size_t DualWeightDistribution::min_distance() const {
    for (size_t k = 1; k <= m; ++k)
        if (counts[k] > 0) return k;
    return m + 1;
}

uint64_t DualWeightDistribution::total() const {
    uint64_t t = 0;
    for (uint64_t c : counts) t += c;
    return t;
}

std::vector<BitVector> dual_basis(const BitMatrix& b) {
    return bit_nullspace(b.transposed());
}

void for_each_dual_chunked(size_t m, const std::vector<BitVector>& basis,
                           size_t chunks, bool parallel,
                           const std::function<void(size_t, const BitVector&)>& fn) {
    const size_t dim = basis.size();
    require(dim <= kDualDimCap, ErrorKind::capacity,
            "dual enumeration: dimension " + std::to_string(dim) + " exceeds cap " +
                std::to_string(kDualDimCap));
    require(chunks >= 1 && (chunks & (chunks - 1)) == 0, ErrorKind::parameter,
            "dual enumeration: chunk count must be a power of two");
    // Split the index space on the top bits; each slice walks its low bits in
    // Gray order so one basis flip separates consecutive words.
    size_t hi_bits = 0;
    while ((size_t(1) << hi_bits) < chunks && hi_bits < dim) ++hi_bits;
    const size_t nchunks = size_t(1) << hi_bits;
    const size_t lo_bits = dim - hi_bits;

#if defined(DQI_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        (void)parallel;
        BitVector word(m);
        for (size_t j = 0; j < hi_bits; ++j)
            if ((static_cast<size_t>(c) >> j) & 1) word.xor_with(basis[lo_bits + j]);
        fn(static_cast<size_t>(c), word);
        const uint64_t steps = uint64_t(1) << lo_bits;
        for (uint64_t t = 1; t < steps; ++t) {
            word.xor_with(basis[static_cast<size_t>(__builtin_ctzll(t))]);
            fn(static_cast<size_t>(c), word);
        }
    }
}

std::vector<BitVector> enumerate_dual(const BitMatrix& b) {
    const std::vector<BitVector> basis = dual_basis(b);
    std::vector<BitVector> words;
    words.reserve(size_t(1) << basis.size());
    for_each_dual_chunked(b.rows(), basis, 1, false,
                          [&](size_t, const BitVector& w) { words.push_back(w); });
    return words;
}

DualWeightDistribution weight_distribution(const BitMatrix& b, bool parallel) {
    const std::vector<BitVector> basis = dual_basis(b);
    const size_t m = b.rows();
    const size_t nchunks =
        parallel ? size_t(1) << std::min<size_t>(6, basis.size()) : 1;
    std::vector<std::vector<uint64_t>> hist(nchunks, std::vector<uint64_t>(m + 1, 0));
    for_each_dual_chunked(m, basis, nchunks, parallel,
                          [&](size_t chunk, const BitVector& w) {
                              ++hist[chunk][w.popcount()];
                          });
    DualWeightDistribution out;
    out.m = m;
    out.counts.assign(m + 1, 0);
    for (const auto& h : hist)
        for (size_t k = 0; k <= m; ++k) out.counts[k] += h[k];
    return out;
}

DualWeightDistribution weight_distribution_from_words(size_t m,
                                                      const std::vector<BitVector>& words) {
    DualWeightDistribution out;
    out.m = m;
    out.counts.assign(m + 1, 0);
    for (const BitVector& w : words) ++out.counts[w.popcount()];
    return out;
}

std::string weight_distribution_to_json(const DualWeightDistribution& dist) {
    nlohmann::json j = dist.counts;
    return j.dump();
}

DualWeightDistribution weight_distribution_from_json(const std::string& text) {
    DualWeightDistribution out;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        out.counts = j.get<std::vector<uint64_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw_parameter(std::string("weight distribution JSON error: ") + e.what());
    }
    require(!out.counts.empty(), ErrorKind::parameter,
            "weight distribution JSON: empty array");
    out.m = out.counts.size() - 1;
    return out;
}

BigInt pair_count(long k1, long k2, long k, long m) {
    require(k1 >= 0 && k1 <= m && k2 >= 0 && k2 <= m && k >= 0, ErrorKind::parameter,
            "pair_count: indices out of range");
    if (k > m) return 0;
    const long diff = k1 + k2 - k;
    if (diff < 0 || diff % 2 != 0) return 0;
    const long s = diff / 2;
    if (s > std::min(k1, k2)) return 0;
    return binomial(m - k, s) * binomial(k, k1 - s);
}

namespace {

// Shared exact core for the Gram and expectation kernels: per-entry integer
// numerators, divided by C(m,i) on the diagonal (exact rational) and by the
// floating square root off the diagonal.
Eigen::MatrixXd scaled_kernel(size_t m, size_t ell,
                              const std::function<BigInt(size_t, size_t)>& numerator,
                              const BigInt& denominator_scale) {
    const std::vector<BigInt> binoms = binomial_row(static_cast<long>(m));
    Eigen::MatrixXd out(ell + 1, ell + 1);
    for (size_t i = 0; i <= ell; ++i) {
        for (size_t j = i; j <= ell; ++j) {
            const BigInt num = numerator(i, j);
            double value;
            if (num == 0) {
                value = 0.0;
            } else if (i == j) {
                value = to_double(BigRational(num, binoms[i] * denominator_scale));
            } else {
                value = to_double(num) /
                        (std::sqrt(to_double(binoms[i]) * to_double(binoms[j])) *
                         to_double(denominator_scale));
            }
            out(i, j) = value;
            out(j, i) = value;
        }
    }
    return out;
}

} // namespace

Eigen::MatrixXd gram_matrix(size_t m, size_t ell, const DualWeightDistribution& dist) {
    require(ell < m, ErrorKind::parameter, "gram_matrix: need ell < m");
    require(dist.m == m && dist.counts.size() == m + 1, ErrorKind::parameter,
            "gram_matrix: weight distribution length mismatch");
    auto numerator = [&](size_t i, size_t j) {
        BigInt acc = 0;
        for (size_t k = 0; k <= std::min(m, i + j); ++k) {
            if (dist.counts[k] == 0) continue;
            acc += BigInt(dist.counts[k]) * pair_count(static_cast<long>(i),
                                                       static_cast<long>(j),
                                                       static_cast<long>(k),
                                                       static_cast<long>(m));
        }
        return acc;
    };
    return scaled_kernel(m, ell, numerator, 1);
}

Eigen::MatrixXd expectation_matrix(size_t m, size_t ell,
                                   const DualWeightDistribution& dist) {
    require(ell < m, ErrorKind::parameter, "expectation_matrix: need ell < m");
    require(dist.m == m && dist.counts.size() == m + 1, ErrorKind::parameter,
            "expectation_matrix: weight distribution length mismatch");
    auto numerator = [&](size_t i, size_t j) {
        BigInt acc = 0;
        for (size_t k = 0; k <= m; ++k) {
            if (dist.counts[k] == 0) continue;
            BigInt term = BigInt(m - k) * pair_count(static_cast<long>(i),
                                                     static_cast<long>(j),
                                                     static_cast<long>(k) + 1,
                                                     static_cast<long>(m));
            if (k >= 1)
                term += BigInt(k) * pair_count(static_cast<long>(i), static_cast<long>(j),
                                               static_cast<long>(k) - 1,
                                               static_cast<long>(m));
            acc += BigInt(dist.counts[k]) * term;
        }
        return acc;
    };
    return scaled_kernel(m, ell, numerator, 2);
}

namespace {

void fix_vector_sign(std::vector<double>& v) {
    for (double x : v) {
        if (x > 0) return;
        if (x < 0) {
            for (double& y : v) y = -y;
            return;
        }
    }
}

} // namespace

OptimalFraction optimal_fraction_exact(size_t m, size_t ell,
                                       const DualWeightDistribution& dist) {
    const Eigen::MatrixXd R = gram_matrix(m, ell, dist);
    const Eigen::MatrixXd K = expectation_matrix(m, ell, dist);

    const Eigen::LLT<Eigen::MatrixXd> llt(R);
    require(llt.info() == Eigen::Success, ErrorKind::numeric,
            "optimal_fraction_exact: Gram matrix is not positive definite");

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        K, R, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    require(solver.info() == Eigen::Success, ErrorKind::numeric,
            "optimal_fraction_exact: generalized eigensolver failed");

    const Eigen::Index top = solver.eigenvalues().size() - 1;
    OptimalFraction out;
    out.lambda = solver.eigenvalues()(top);
    out.expected_satisfied = 0.5 * static_cast<double>(m) + out.lambda;
    const Eigen::VectorXd v = solver.eigenvectors().col(top);
    out.w.assign(v.data(), v.data() + v.size());
    fix_vector_sign(out.w);
    return out;
}

// ---- direct syndrome-shell matrices ----------------------------------------

namespace {

// T[k][u] = signed count of weight-k strings y with syndrome u, the sign
// being (-1)^{y . v}. Shells above kmax are skipped.
std::vector<std::vector<int64_t>> shell_tables(const MaxLinsatInstance& inst,
                                               size_t kmax) {
    require(inst.binary(), ErrorKind::parameter, "shell tables: require p = 2");
    require(inst.m <= kShellBudgetM, ErrorKind::capacity,
            "shell tables: m = " + std::to_string(inst.m) + " exceeds budget " +
                std::to_string(kShellBudgetM));
    const size_t m = inst.m;
    const size_t n = inst.n;

    // Column syndromes of the transpose: constraint i involves variables c_i.
    std::vector<uint32_t> col(m, 0);
    for (size_t i = 0; i < m; ++i)
        for (const auto& [var, val] : inst.rows[i]) {
            (void)val;
            col[i] |= uint32_t(1) << var;
        }
    uint32_t vmask = 0;
    for (size_t i = 0; i < m; ++i)
        if (inst.v[i]) vmask |= uint32_t(1) << i;

    std::vector<std::vector<int64_t>> T(kmax + 1,
                                        std::vector<int64_t>(size_t(1) << n, 0));
    const uint64_t limit = uint64_t(1) << m;
    for (uint64_t y = 0; y < limit; ++y) {
        const size_t k = static_cast<size_t>(__builtin_popcountll(y));
        if (k > kmax) continue;
        uint32_t u = 0;
        uint64_t bits = y;
        while (bits) {
            u ^= col[static_cast<size_t>(__builtin_ctzll(bits))];
            bits &= bits - 1;
        }
        const bool neg = __builtin_parityll(y & vmask);
        T[k][u] += neg ? -1 : 1;
    }
    return T;
}

} // namespace

Eigen::MatrixXd m_matrix(const MaxLinsatInstance& inst, size_t ell) {
    require(ell <= inst.m, ErrorKind::parameter, "m_matrix: ell exceeds m");
    const auto T = shell_tables(inst, ell);
    const std::vector<BigInt> binoms = binomial_row(static_cast<long>(inst.m));
    const size_t buckets = T[0].size();
    Eigen::MatrixXd M(ell + 1, ell + 1);
    for (size_t k = 0; k <= ell; ++k) {
        for (size_t kp = k; kp <= ell; ++kp) {
            int64_t acc = 0;
            for (size_t u = 0; u < buckets; ++u) acc += T[k][u] * T[kp][u];
            double value;
            if (acc == 0) {
                value = 0.0;
            } else if (k == kp) {
                value = to_double(BigRational(BigInt(acc), binoms[k]));
            } else {
                value = static_cast<double>(acc) /
                        std::sqrt(to_double(binoms[k]) * to_double(binoms[kp]));
            }
            M(k, kp) = value;
            M(kp, k) = value;
        }
    }
    return M;
}

Eigen::MatrixXd abar_matrix(const MaxLinsatInstance& inst, size_t ell) {
    require(ell <= inst.m, ErrorKind::parameter, "abar_matrix: ell exceeds m");
    const auto T = shell_tables(inst, ell);
    const std::vector<BigInt> binoms = binomial_row(static_cast<long>(inst.m));
    const size_t buckets = T[0].size();

    std::vector<uint32_t> col(inst.m, 0);
    for (size_t i = 0; i < inst.m; ++i)
        for (const auto& [var, val] : inst.rows[i]) {
            (void)val;
            col[i] |= uint32_t(1) << var;
        }

    Eigen::MatrixXd A(ell + 1, ell + 1);
    for (size_t k = 0; k <= ell; ++k) {
        for (size_t kp = k; kp <= ell; ++kp) {
            int64_t total = 0;
            for (size_t i = 0; i < inst.m; ++i) {
                int64_t acc = 0;
                const uint32_t shift = col[i];
                for (size_t u = 0; u < buckets; ++u) acc += T[k][u] * T[kp][u ^ shift];
                total += inst.v[i] ? -acc : acc;
            }
            const double value =
                total == 0 ? 0.0
                           : static_cast<double>(total) /
                                 std::sqrt(to_double(binoms[k]) * to_double(binoms[kp]));
            A(k, kp) = value;
            A(kp, k) = value;
        }
    }
    return A;
}

// ---- interference measure --------------------------------------------------

ZetaEstimate zeta_exact(const MaxLinsatInstance& inst, size_t ell, uint64_t budget) {
    require(inst.binary(), ErrorKind::parameter, "zeta_exact: require p = 2");
    require(ell < inst.m, ErrorKind::parameter, "zeta_exact: need ell < m");
    const BitMatrix B = bit_b(inst);
    const std::vector<BitVector> basis = dual_basis(B);
    const BigInt work =
        binomial(static_cast<long>(inst.m), static_cast<long>(ell)) *
        (BigInt(1) << basis.size());
    require(work <= BigInt(budget), ErrorKind::capacity,
            "zeta_exact: enumeration work exceeds budget");

    const DualWeightDistribution dist = weight_distribution(B);
    const size_t m = inst.m;
    const std::vector<BigInt> binoms = binomial_row(static_cast<long>(m));

    ZetaEstimate out;
    out.mode = ZetaEstimate::Mode::exact;
    out.per_k.resize(ell + 1);
    for (size_t k = 0; k <= ell; ++k) {
        BigInt acc = 0;
        for (size_t j = 1; j <= m; ++j) {
            if (dist.counts[j] == 0) continue;
            // Overlap t between y (weight k) and a codeword of weight j gives
            // distance k + j - 2t; admit distances up to ell+1.
            const long lo_num = static_cast<long>(k + j) - static_cast<long>(ell) - 1;
            long t_lo = lo_num <= 0 ? 0 : (lo_num + 1) / 2;
            const long t_hi = static_cast<long>(std::min(k, j));
            BigInt inner = 0;
            for (long t = t_lo; t <= t_hi; ++t)
                inner += binomial(static_cast<long>(j), t) *
                         binomial(static_cast<long>(m - j), static_cast<long>(k) - t);
            acc += BigInt(dist.counts[j]) * inner;
        }
        out.per_k[k] = acc == 0 ? 0.0 : to_double(BigRational(acc, binoms[k]));
    }
    out.zeta = *std::max_element(out.per_k.begin(), out.per_k.end());
    return out;
}

namespace {

// j h(t/j) + (m-j) h((k-t)/(m-j)), the log2 count of weight-k strings with
// overlap t against a fixed weight-j string; -inf outside the support.
double overlap_log2(size_t m, size_t j, size_t k, long t) {
    if (t < 0 || t > static_cast<long>(std::min(j, k))) return -1e300;
    const size_t rest = k - static_cast<size_t>(t);
    if (rest > m - j) return -1e300;
    double value = 0.0;
    if (j > 0) value += static_cast<double>(j) * binary_entropy(static_cast<double>(t) / j);
    if (m - j > 0)
        value += static_cast<double>(m - j) *
                 binary_entropy(static_cast<double>(rest) / (m - j));
    return value;
}

} // namespace

double zeta_heuristic_log2(size_t m, size_t n, size_t ell, size_t k) {
    require(k <= ell && ell < m, ErrorKind::parameter,
            "zeta_heuristic_log2: need k <= ell < m");
    const double dm = static_cast<double>(m);
    double best = -1e300;
    long t_walk = -1;
    const size_t j_hi = std::min(ell + k, m);
    for (size_t j = ell; j <= j_hi; ++j) {
        const long lo_num = static_cast<long>(k + j) - static_cast<long>(ell);
        long t_lo = lo_num <= 0 ? 0 : (lo_num + 1) / 2;
        long t_hi = static_cast<long>(k);
        // Restrict to the support of the overlap count: t <= min(j, k) and
        // k - t <= m - j.
        t_lo = std::max(t_lo, static_cast<long>(k) - static_cast<long>(m - j));
        t_hi = std::min(t_hi, static_cast<long>(std::min(j, k)));
        if (t_lo > t_hi) continue;
        // The overlap term is concave in t, so walk the previous argmax to
        // the new peak instead of rescanning.
        if (t_walk < t_lo) t_walk = t_lo;
        if (t_walk > t_hi) t_walk = t_hi;
        while (t_walk + 1 <= t_hi &&
               overlap_log2(m, j, k, t_walk + 1) > overlap_log2(m, j, k, t_walk))
            ++t_walk;
        while (t_walk - 1 >= t_lo &&
               overlap_log2(m, j, k, t_walk - 1) > overlap_log2(m, j, k, t_walk))
            --t_walk;
        const double inner = overlap_log2(m, j, k, t_walk);
        if (inner <= -1e299) continue;
        const double term = (-0.9 * static_cast<double>(n) +
                             dm * binary_entropy(static_cast<double>(j) / dm)) +
                            std::log2(static_cast<double>(std::max<size_t>(k, 1)))
                            + inner;
        best = std::max(best, term);
    }
    return -dm * binary_entropy(static_cast<double>(k) / dm) +
           std::log2(static_cast<double>(std::max<size_t>(ell + k, 1))) + best;
}

ZetaEstimate zeta_heuristic_all(size_t m, size_t n, size_t ell) {
    ZetaEstimate out;
    out.mode = ZetaEstimate::Mode::heuristic_log2;
    out.per_k.resize(ell + 1);
#if defined(DQI_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (long long k = 0; k <= static_cast<long long>(ell); ++k)
        out.per_k[static_cast<size_t>(k)] =
            zeta_heuristic_log2(m, n, ell, static_cast<size_t>(k));
    out.zeta = *std::max_element(out.per_k.begin(), out.per_k.end());
    return out;
}

GallagerBound gallager_weight_bound(size_t m, size_t n, uint32_t s, size_t j,
                                    double c0) {
    require(j > 0 && j < m, ErrorKind::parameter,
            "gallager_weight_bound: need 0 < j < m");
    require(s >= 1, ErrorKind::parameter, "gallager_weight_bound: need s >= 1");
    GallagerBound out;
    const double base = 1.0 - 2.0 * static_cast<double>(j) / static_cast<double>(m);
    out.pow_term = std::pow(base, static_cast<double>(s));
    out.concentrated = out.pow_term < 0.05;
    out.log2_p = -static_cast<double>(n) *
                 (1.0 - out.pow_term -
                  static_cast<double>(s) / static_cast<double>(m) *
                      std::log2(c0 * std::sqrt(static_cast<double>(m))));
    return out;
}

std::string matrix_to_csv(const Eigen::MatrixXd& mat) {
    std::string out;
    for (Eigen::Index c = 0; c < mat.cols(); ++c) {
        out += ',';
        out += std::to_string(c);
    }
    out += '\n';
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        out += std::to_string(r);
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
            out += ',';
            out += format_float(mat(r, c));
        }
        out += '\n';
    }
    return out;
}

} // namespace dqi
