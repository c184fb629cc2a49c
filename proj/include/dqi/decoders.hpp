// Syndrome decoders for the dual codes that arise in DQI state preparation,
// plus the measurement instruments built on top of them: Monte-Carlo failure
// rates and density-evolution thresholds for belief propagation.
//
// Two decoder families are provided.
//  - bw_decode: algebraic decoding for the transposed Vandermonde structure
//    produced by gen_opi. Certified unique up to half the dual distance;
//    beyond that it still searches and reports any consistent codeword it
//    finds, flagged as ambiguous rather than certified.
//  - bp_decode: belief propagation on an arbitrary sparse binary system,
//    flooding schedule, sum-product (or min-sum) check update.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dqi/field.hpp"
#include "dqi/instance.hpp"
#include "dqi/numeric.hpp"

namespace dqi {

enum class DecodeStatus {
    success,            // error vector found and certified (re-verified, within
                        // the guaranteed-unique radius for bw_decode)
    failure,            // no error vector found within the search budget
    detected_ambiguity, // a consistent vector was found and re-verified, but
                        // its weight exceeds the unique-decoding radius
};

struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::failure;
    FpVector error_vector;      // length m; satisfies B^T y = s when status != failure
    size_t iterations = 0;      // bp: message-passing rounds used; bw: weight found
    size_t residual_weight = 0; // bp: unsatisfied checks at exit; bw: 0 on success
};

// Algebraic decoder for instances generated by gen_opi (odd prime p, m = p - 1,
// row i of B equal to (g^{i*0}, g^{i*1}, ..., g^{i*(n-1)}) for the smallest
// generator g). The syndrome entries are then the power sums of the error
// support, and the error locator polynomial is recovered from the linear
// key-equation system at each candidate weight t = 0, 1, ..., ell_cap.
//
// Guarantees: any error of weight t <= floor(n/2) is found and certified
// (status success). For floor(n/2) < t <= ell_cap a consistent vector may
// still be found; it is re-verified against the full syndrome but reported as
// detected_ambiguity because uniqueness is no longer implied. ell_cap defaults
// to floor((n+1)/2) when SIZE_MAX is passed.
//
// Throws parameter errors when the instance does not have the required shape
// or the syndrome length is not n.
DecodeOutcome bw_decode(const MaxLinsatInstance& inst, const FpVector& syndrome,
                        size_t ell_cap = SIZE_MAX);

// Sparse binary check system: bits index the m coordinates of an error vector
// y, checks index the n rows of the system B^T y = s over F_2.
struct SparseParity {
    size_t bits = 0;
    size_t checks = 0;
    std::vector<std::vector<uint32_t>> check_bits; // per check: sorted bit ids
    std::vector<std::vector<uint32_t>> bit_checks; // per bit: sorted check ids

    size_t edge_count() const;
};

// Adjacency of B^T for a binary instance (p must be 2).
SparseParity sparse_parity(const MaxLinsatInstance& inst);

struct BpConfig {
    double q = 0.05;       // channel prior: probability a bit of y is 1
    size_t max_iters = 50; // message-passing rounds
    double damping = 0.0;  // 0 = none; fraction of the previous message kept
    bool min_sum = false;  // replace the sum-product check rule with min-sum
    double llr_clamp = 30; // magnitude cap on messages and totals
};

// Flooding belief propagation for B^T y = s with s binary. Deterministic: no
// randomness is used; ties in the hard decision resolve to 0. Success iff the
// hard decision reproduces the syndrome exactly, checked every round.
DecodeOutcome bp_decode(const SparseParity& h, const std::vector<uint8_t>& syndrome,
                        const BpConfig& cfg = {});

using DecodeFn = std::function<DecodeOutcome(const MaxLinsatInstance&, const FpVector&)>;

struct FailureRateResult {
    uint64_t trials = 0;
    uint64_t failures = 0;
    double rate = 0.0;
    WilsonInterval interval; // 95% confidence bounds on the rate
};

// Monte-Carlo decoding benchmark: per trial, plant a uniform error of weight
// exactly ell (distinct positions, nonzero values), hand the decoder the
// syndrome, and count a failure unless the decoder returns the planted vector
// with a non-failure status. Trials draw from independent substreams of
// `seed`, so the result is identical for any thread count.
FailureRateResult failure_rate(const MaxLinsatInstance& inst, size_t ell, uint64_t trials,
                               uint64_t seed, const DecodeFn& decode);

struct ThresholdResult {
    double q_star = 0.0; // bisection midpoint estimate of the BP threshold
    double lo = 0.0;     // largest tested q that was decodable
    double hi = 0.0;     // smallest tested q that was not
};

// Density-evolution threshold of sum-product BP over a binary symmetric
// channel with crossover q, for the check-system ensemble whose bit degrees
// follow dist.constraint and check degrees follow dist.variable (a bit of y
// appears in as many checks as its column of B^T has entries, which is the
// constraint-degree law of the instance family). Population dynamics with
// `samples` particles per density, bisected on q until the bracket is below
// 1/2^14. Throws a numeric error if even the smallest probed q fails.
ThresholdResult density_evolution_threshold(const DegreeDistribution& dist,
                                            size_t samples = 100000, size_t iters = 60,
                                            uint64_t seed = 0);

// Classic alist serialization of a sparse check system (columns = bits first,
// then rows = checks; 1-based indices, zero-padded to the maximum degree).
std::string to_alist(const SparseParity& h);
SparseParity from_alist(const std::string& text);

} // namespace dqi
