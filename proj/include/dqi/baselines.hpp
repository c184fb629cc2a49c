// Classical competitor algorithms for max-LINSAT / max-XORSAT: simulated
// annealing, greedy descent, the linear-algebra truncation heuristic, the
// fix-and-propagate AdvRand family, degree-weighted (irregular) annealing,
// and the first-moment ceiling for local search.
//
// Conventions shared by all solvers here:
//  - The Metropolis objective is the balanced sum f(x) = 2*satisfied - m
//    (each constraint contributes +1 when satisfied, -1 otherwise), so a
//    single satisfied-count change of ds moves f by 2*ds.
//  - Improving or neutral moves are always accepted; a move that decreases
//    the objective by d is accepted with probability exp(-beta * d).
//  - All randomness flows from named substreams of the caller's seed; with a
//    fixed seed every run is bit-reproducible. The two annealers draw from
//    the same stream layout, so equal seeds give paired trajectories for
//    head-to-head comparisons.
//  - RunResult.phi is recomputed from the returned assignment at report
//    time; the incremental bookkeeping inside the loops is re-validated
//    against a full recount at termination (and each sweep in debug builds).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqi/field.hpp"
#include "dqi/instance.hpp"

namespace dqi {

struct AnnealSchedule {
    size_t sweeps = 5000;
    double beta_start = 0.0;
    double beta_end = 3.0;
};

// Validates sweeps >= 1 and 0 <= beta_start <= beta_end (finite).
void validate_schedule(const AnnealSchedule& sched);

struct RunResult {
    std::string algorithm;
    FpVector x;                     // best assignment found
    double phi = 0.0;               // satisfied_count(x) / m, recomputed at the end
    std::vector<double> trajectory; // best-so-far phi after each sweep / pass / trial
    uint64_t seed = 0;
    size_t sweeps = 0;              // sweeps, passes, trials, or grid points executed
    double wallclock_ms = 0.0;
};

// Metropolis annealing with single-variable moves (bit flips when p = 2,
// uniform re-draws of one symbol otherwise). Each sweep proposes x_1..x_n in
// order; beta moves linearly from beta_start to beta_end across sweeps
// (inclusive endpoints). Returns the best assignment ever visited.
RunResult simulated_annealing(const MaxLinsatInstance& inst, const AnnealSchedule& sched,
                              uint64_t seed);

// Strictly-improving single-variable descent from a random start; terminates
// at a local optimum, i.e. no single-variable change raises the satisfied
// count. One trajectory entry per pass over the variables.
RunResult greedy(const MaxLinsatInstance& inst, uint64_t seed);

// Per trial: randomly order the constraints (for p > 2, most-restrictive
// allowed sets first), keep a maximal linearly independent subset of their
// left-hand sides, solve that subsystem exactly with random free variables,
// and count. Every trial satisfies at least rank(B) constraints by
// construction (checked). Returns the best of `trials` attempts.
RunResult truncation(const MaxLinsatInstance& inst, size_t trials, uint64_t seed);

// Fix-and-propagate baseline (p = 2 only). For each grid fraction R: fix
// round(R*n) random variables to random bits, repeatedly satisfy any
// constraint with exactly one unassigned variable (queued in constraint
// order), fill the rest randomly, then flip every bit independently with
// probability flip_prob. Keeps the best assignment across the grid. An empty
// grid means the exhaustive one: R = 0/n, 1/n, ..., n/n.
RunResult advrand(const MaxLinsatInstance& inst, double flip_prob,
                  const std::vector<double>& r_grid, uint64_t seed);

// Annealing on the degree-weighted objective sum_i w_i(beta) * (+-1), with
// w_i(beta) = max(0, 1 - exp(-beta / d_i)) and d_i the number of variables
// in constraint i. Acceptance uses the weighted objective; the returned
// assignment and trajectory track the true (unweighted) satisfied fraction.
RunResult irregular_annealing(const MaxLinsatInstance& inst, const AnnealSchedule& sched,
                              uint64_t seed);

// Largest satisfied fraction a local search making total_moves moves can
// reach with constant success probability, for degree-D instances:
// 1/2 + sqrt((ln(total_moves) + ln 2) / (2 D)).
double local_search_ceiling(double total_moves, double degree);

} // namespace dqi
