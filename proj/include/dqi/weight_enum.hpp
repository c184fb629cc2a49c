// Exact weight-distribution machinery for binary instances whose dual code
// intrudes into the active degree range: dual-code enumeration, the weight
// histogram, the Gram and expectation matrices built from pair counts, the
// direct syndrome-shell matrices for arbitrary targets, and the interference
// measure zeta (exact and heuristic log2 bound).
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dqi/bitvec.hpp"
#include "dqi/instance.hpp"
#include "dqi/numeric.hpp"

namespace dqi {

// Enumeration is capped at this dual dimension (2^26 codewords).
inline constexpr size_t kDualDimCap = 26;

struct DualWeightDistribution {
    size_t m = 0;                 // code length
    std::vector<uint64_t> counts; // counts[k] = codewords of weight k, size m+1

    // Smallest nonzero codeword weight; m+1 when the code is trivial.
    size_t min_distance() const;
    uint64_t total() const;
};

// Basis of the dual code {y in F_2^m : B^T y = 0} of an m x n system.
std::vector<BitVector> dual_basis(const BitMatrix& b);

// Visit every dual codeword exactly once. The walk flips one basis vector per
// step (Gray order) within each of `chunks` equal slices of the index space,
// so slices can run concurrently; the set visited is identical regardless.
// fn must be safe to call concurrently when chunks > 1 and parallel is on.
void for_each_dual_chunked(size_t m, const std::vector<BitVector>& basis,
                           size_t chunks, bool parallel,
                           const std::function<void(size_t chunk, const BitVector&)>& fn);

// Materialized codeword list (small dimensions; tests and tooling).
std::vector<BitVector> enumerate_dual(const BitMatrix& b);

// Weight histogram of the dual code. The parallel flag selects the
// OpenMP-partitioned walk; results are identical to the serial walk.
DualWeightDistribution weight_distribution(const BitMatrix& b, bool parallel = true);
DualWeightDistribution weight_distribution_from_words(size_t m,
                                                      const std::vector<BitVector>& words);

std::string weight_distribution_to_json(const DualWeightDistribution& dist);
DualWeightDistribution weight_distribution_from_json(const std::string& text);

// Number of ordered pairs (y1, y2) with |y1| = k1, |y2| = k2, |y1 + y2| = k:
// zero unless k1+k2-k is even with s = (k1+k2-k)/2 in [0, min(k1,k2)] and
// k <= m; otherwise C(m-k, s) * C(k, k1-s).
BigInt pair_count(long k1, long k2, long k, long m);

// (ell+1)^2 Gram matrix of the degree components for a solvable binary
// instance with dual weight histogram dist:
//   R_ij = sum_k A_k * pair_count(i, j, k) / sqrt(C(m,i) C(m,j)).
// Diagonal entries are computed as exact rationals, so R is exactly the
// identity whenever the dual distance exceeds 2*ell.
Eigen::MatrixXd gram_matrix(size_t m, size_t ell, const DualWeightDistribution& dist);

// (ell+1)^2 expectation kernel: with hat-w normalized so that
// hat-w^T R hat-w = 1, the expected satisfied count is m/2 + hat-w^T K hat-w.
//   K_ij = sum_k A_k [(m-k) pair_count(i,j,k+1) + k pair_count(i,j,k-1)]
//          / (2 sqrt(C(m,i) C(m,j)))
Eigen::MatrixXd expectation_matrix(size_t m, size_t ell, const DualWeightDistribution& dist);

// Maximize m/2 + w^T K w subject to w^T R w = 1 via the generalized
// symmetric eigenproblem K w = lambda R w (R must be positive definite).
struct OptimalFraction {
    double expected_satisfied = 0.0; // m/2 + lambda_max
    double lambda = 0.0;
    std::vector<double> w; // R-normalized, first nonzero entry positive
};
OptimalFraction optimal_fraction_exact(size_t m, size_t ell,
                                       const DualWeightDistribution& dist);

// Direct syndrome-shell matrices for a binary instance with arbitrary target
// vector v (no solvability assumption), m <= 20:
//   M_{k,k'}    = sum over weight-k / weight-k' strings with equal syndrome,
//                 signed by (-1)^{(y+y') . v}, normalized by sqrt(C_k C_k').
//   Abar_{k,k'} = same with the syndromes differing by one constraint column,
//                 each term additionally signed by that constraint's target.
// The expected balanced objective of a degree-ell state with coefficients w
// is (w^T Abar w) / (w^T M w).
inline constexpr size_t kShellBudgetM = 20;
Eigen::MatrixXd m_matrix(const MaxLinsatInstance& inst, size_t ell);
Eigen::MatrixXd abar_matrix(const MaxLinsatInstance& inst, size_t ell);

struct ZetaEstimate {
    enum class Mode { exact, heuristic_log2 };
    Mode mode = Mode::exact;
    std::vector<double> per_k; // zeta_k for k = 0..ell (log2 bounds in heuristic mode)
    double zeta = 0.0;         // max over k
};

// Exact interference measure: zeta_k = average over weight-k strings y of the
// number of nonzero dual codewords within Hamming distance ell+1 of y,
// computed per codeword weight via overlap counting. The product
// C(m, ell) * |dual| must stay within `budget`.
ZetaEstimate zeta_exact(const MaxLinsatInstance& inst, size_t ell,
                        uint64_t budget = (1ull << 44));

// Heuristic log2 upper bound on the ensemble average of zeta_k under the
// assumption that dual weight expectations are 2^{-0.9 n}-thinned binomials.
double zeta_heuristic_log2(size_t m, size_t n, size_t ell, size_t k);
ZetaEstimate zeta_heuristic_all(size_t m, size_t n, size_t ell);

// Layer-ensemble codeword-probability bound at weight j for layered parity
// matrices with row weight s:
//   log2 P(j) = -n (1 - (1 - 2j/m)^s - (s/m) log2(c0 sqrt(m)))
// `concentrated` reports whether (1 - 2j/m)^s < 0.05, the regime where the
// thinned-binomial assumption is safe.
struct GallagerBound {
    double log2_p = 0.0;
    double pow_term = 0.0;
    bool concentrated = false;
};
GallagerBound gallager_weight_bound(size_t m, size_t n, uint32_t s, size_t j,
                                    double c0 = 2.5066282746310002); // sqrt(2 pi)

// CSV with integer row/column headers 0..ell; floats in shortest round-trip
// form. First cell of the header row is empty.
std::string matrix_to_csv(const Eigen::MatrixXd& mat);

} // namespace dqi
