// Exact state simulator for tiny instances: enumerates every assignment,
// evaluates the degree-ell symmetric-polynomial amplitudes, and reports exact
// norms, expectations, and measurement samples. This is the ground truth the
// closed-form predictors are checked against.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqi/instance.hpp"
#include "dqi/numeric.hpp"

namespace dqi {

// Default cap on the number of enumerated assignments p^n.
inline constexpr uint64_t kStateBudget = uint64_t(1) << 22;

// Centered, unit-power value tables: g_i(c) = (f_i(c) - mean) / deviation,
// where f_i is +1 on the allowed set and -1 elsewhere. Each table satisfies
// sum_c g_i(c) = 0 and sum_c g_i(c)^2 = 1.
struct GTransform {
    std::vector<std::vector<double>> tables; // m tables of p values
    std::vector<double> f_bar;               // per-constraint mean of f_i
    std::vector<double> phi;                 // per-constraint deviation norm
    // Allowed-set size when identical across constraints; the closed-form
    // predictors only apply in that case, the simulator itself is general.
    std::optional<uint32_t> uniform_r;
};
GTransform g_transform(const MaxLinsatInstance& inst);

// Number of assignments p^n, saturated at 2^63 to keep budget checks safe.
uint64_t state_count(const MaxLinsatInstance& inst);

// Assignment with lexicographic rank `rank`: x_0 is the most significant
// base-p digit.
FpVector decode_assignment(const MaxLinsatInstance& inst, uint64_t rank);

struct DqiStateTable {
    MaxLinsatInstance instance;
    size_t ell = 0;
    std::vector<double> w;          // amplitude weights, size ell+1
    std::vector<double> amplitudes; // one entry per assignment, rank order
    double norm2 = 0.0;             // cached sum of squared amplitudes
};

// Full amplitude table: for each assignment x, evaluate the elementary
// symmetric polynomials e_0..e_ell of the values g_i(b_i . x) by the running
// product recurrence and form
//   amp(x) = sum_k w_k e_k / sqrt(p^{n-k} C(m,k)).
DqiStateTable amplitudes(const MaxLinsatInstance& inst, size_t ell,
                         const std::vector<double>& w,
                         uint64_t budget = kStateBudget);

struct Expectation {
    double s = 0.0;     // expected satisfied-constraint count
    double f = 0.0;     // expected balanced objective 2s - m
    double norm2 = 0.0; // squared norm of the unnormalized state
};

// Expectations under the measurement distribution |amp|^2 / norm^2.
// Throws a validation error on an exactly zero state.
Expectation exact_expectation(const DqiStateTable& state);

// Streaming variant: same result without retaining the table.
Expectation exact_expectation(const MaxLinsatInstance& inst, size_t ell,
                              const std::vector<double>& w,
                              uint64_t budget = kStateBudget);

// `shots` i.i.d. assignment ranks drawn from |amp|^2 / norm^2 via an alias
// table; deterministic for a fixed seed.
std::vector<uint64_t> sample(const DqiStateTable& state, size_t shots,
                             uint64_t seed);

// Krawtchouk value: the elementary symmetric polynomial e_k evaluated on m
// variables of value +-1 with exactly t minus ones,
//   K_k(t) = sum_j (-1)^j C(t,j) C(m-t,k-j).
BigInt krawtchouk(long m, long k, long t);

// Expansion of a univariate polynomial of the total objective into symmetric
// components. u are the coefficients on e_k over the raw +-1 constraint
// values; w are the corresponding amplitude weights (deviation-normalized
// variables, rescaled by sqrt(C(m,k)/p^k) and unit 2-norm overall).
struct PolyWeights {
    std::vector<double> u;
    std::vector<double> w;
};

// alpha are the polynomial coefficients alpha_0..alpha_ell in the objective
// value. Solved on the value points with t = 0..ell minus ones (exact
// rationals for m <= 64), then the identity is re-verified on every held-out
// point t = ell+1..m; a mismatch raises a numeric error.
PolyWeights poly_to_weights(const std::vector<double>& alpha, size_t m,
                            uint32_t p, uint32_t r);

// Inverse: reconstruct the polynomial coefficients from u by evaluating the
// symmetric expansion on ell+1 value points and interpolating.
std::vector<double> weights_to_poly(const std::vector<double>& u, size_t m);

// Lower bound max(0, (4/5)(1 - eps - eta)^2) on the squared overlap with the
// ideal state when a decoder errs with probability <= eps and leaks at most
// eta of the mass outside the decodable set. Arguments must lie in [0, 1].
double fidelity_bound(double eps, double eta);

// Writes <path_base>.f64 (raw doubles, rank order) and <path_base>.json
// (instance, ell, w, norm2, entry count, data file name).
void save_state_table(const DqiStateTable& state, const std::string& path_base);
DqiStateTable load_state_table(const std::string& path_base);

} // namespace dqi
