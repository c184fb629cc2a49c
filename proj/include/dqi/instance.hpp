// Constraint-satisfaction instances: a system of m linear constraints over
// F_p in n variables, where constraint i asks that b_i . x land in an allowed
// set (a single target value v_i when p = 2). Includes three generator
// families, evaluation, and a JSON interchange format.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqi/bitvec.hpp"
#include "dqi/field.hpp"

namespace dqi {

struct InstanceMeta {
    std::string generator;            // which generator family produced this
    uint64_t seed = 0;
    std::optional<FpVector> planted_x; // a solution satisfying all constraints
};

struct MaxLinsatInstance {
    uint32_t p = 2;
    size_t m = 0; // constraints
    size_t n = 0; // variables
    // Sparse rows of the m x n constraint matrix: (column, value) pairs with
    // strictly ascending columns and values in [1, p-1].
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> rows;
    // p = 2: target bit per constraint. Empty otherwise.
    std::vector<uint8_t> v;
    // p > 2: sorted unique allowed values per constraint. Empty for p = 2.
    std::vector<std::vector<uint32_t>> f_sets;
    InstanceMeta meta;

    bool binary() const { return p == 2; }
    FieldCtx field() const { return FieldCtx(p); }

    // b_i . x mod p over the sparse row.
    uint32_t row_dot(size_t i, const FpVector& x) const;
    bool row_satisfied(size_t i, uint32_t dot_value) const;

    size_t max_constraint_degree() const;
    size_t max_variable_degree() const;
};

// Structural checks (shapes, sortedness, planted solution if present).
// Throws a parameter error on violation.
void validate_instance(const MaxLinsatInstance& inst);

// Number of satisfied constraints; x must have n entries in [0, p).
size_t satisfied_count(const MaxLinsatInstance& inst, const FpVector& x);

// Balanced objective 2*satisfied - m.
long long objective_value(const MaxLinsatInstance& inst, const FpVector& x);

// Smallest generator of F_p^* (1 for p = 2).
uint32_t primitive_element(uint32_t p);

// Dense views. bit_* require p = 2.
FpMatrix dense_b(const MaxLinsatInstance& inst);        // m x n
BitMatrix bit_b(const MaxLinsatInstance& inst);         // m x n
BitMatrix bit_b_transpose(const MaxLinsatInstance& inst); // n x m

// ---- generator families ----------------------------------------------------

// Parity-check ensemble with regular degrees: the n x m transpose of the
// constraint matrix is built from k stacked layers, each a horizontal run of
// D identity blocks of size b with its b*D columns permuted uniformly at
// random. Result: n = b*k variables of degree D, m = b*D constraints of
// degree k. Targets v are uniform, or consistent with a planted solution.
MaxLinsatInstance gen_gallager(uint32_t k, uint32_t D, size_t b, uint64_t seed,
                               bool plant = false);

struct DegreeDistribution {
    std::map<uint32_t, double> variable;   // degree -> fraction of variables
    std::map<uint32_t, double> constraint; // degree -> fraction of constraints
};

// Checks each side sums to 1 within 1e-12 and degrees are >= 1.
void validate_distribution(const DegreeDistribution& dist);

DegreeDistribution distribution_from_json_string(const std::string& text);
std::string distribution_to_json_string(const DegreeDistribution& dist);
DegreeDistribution load_distribution(const std::string& path);

// The exact integer degree sequences a sampled instance must realize:
// largest-remainder rounding of each side, then the residual edge-count
// mismatch is repaired one unit at a time on the variable side, moving
// entities out of the highest occupied degree bucket. Both outputs are
// sorted descending. Throws when the sequence cannot be balanced.
struct DegreeSequences {
    std::vector<uint32_t> constraint_degrees; // size m
    std::vector<uint32_t> variable_degrees;   // size n
};
DegreeSequences integer_degree_sequences(size_t m, size_t n, const DegreeDistribution& dist);

// Bipartite configuration-model sample realizing the integer degree
// sequences exactly, with duplicate edges removed by endpoint swaps
// (capped at 1000 passes). Targets v are uniform. p = 2.
MaxLinsatInstance gen_irregular(size_t m, size_t n, const DegreeDistribution& dist,
                                uint64_t seed);

// Structured instance over an odd prime p with m = p-1 constraints whose
// matrix rows are geometric progressions gamma^(i*j) in the smallest
// primitive element gamma; each allowed set is a uniform subset of F_p of
// size floor(p/2), optionally forced to contain a planted solution's value.
MaxLinsatInstance gen_opi(uint32_t p, size_t n, uint64_t seed, bool plant = false);

// ---- serialization ---------------------------------------------------------

std::string instance_to_json_string(const MaxLinsatInstance& inst);
MaxLinsatInstance instance_from_json_string(const std::string& text);
void save_instance(const MaxLinsatInstance& inst, const std::string& path);
MaxLinsatInstance load_instance(const std::string& path);

} // namespace dqi
