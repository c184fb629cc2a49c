#include "dqi/baselines.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <utility>

#include "dqi/bitvec.hpp"
#include "dqi/errors.hpp"
#include "dqi/rng.hpp"

namespace dqi {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::vector<std::pair<uint32_t, uint32_t>>>
variable_adjacency(const MaxLinsatInstance& inst) {
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj(inst.n);
    for (size_t r = 0; r < inst.m; ++r)
        for (const auto& [col, coeff] : inst.rows[r])
            adj[col].emplace_back(static_cast<uint32_t>(r), coeff);
    return adj;
}

// Incremental satisfied-count bookkeeping for single-variable moves.
struct MoveState {
    const MaxLinsatInstance& inst;
    FieldCtx F;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> var_adj;
    FpVector x;
    std::vector<uint32_t> dots; // b_i . x per constraint
    std::vector<uint8_t> sat;
    size_t satisfied = 0;

    MoveState(const MaxLinsatInstance& i, FpVector start)
        : inst(i), F(i.p), var_adj(variable_adjacency(i)), x(std::move(start)) {
        dots.assign(inst.m, 0);
        sat.assign(inst.m, 0);
        recount();
    }

    void recount() {
        satisfied = 0;
        for (size_t r = 0; r < inst.m; ++r) {
            dots[r] = inst.row_dot(r, x);
            sat[r] = inst.row_satisfied(r, dots[r]) ? 1 : 0;
            satisfied += sat[r];
        }
    }

    struct Probe {
        long long ds = 0; // change in satisfied count
        double dw = 0.0;  // change in the weighted +-1 objective
    };

    Probe probe(size_t j, uint32_t val, const std::vector<double>* weights) const {
        Probe pr;
        const uint32_t delta = F.sub(val, x[j]);
        for (const auto& [r, coeff] : var_adj[j]) {
            const uint32_t nd = F.add(dots[r], F.mul(coeff, delta));
            const int change = (inst.row_satisfied(r, nd) ? 1 : 0) - sat[r];
            pr.ds += change;
            if (weights) pr.dw += 2.0 * (*weights)[r] * change;
        }
        return pr;
    }

    void apply(size_t j, uint32_t val) {
        const uint32_t delta = F.sub(val, x[j]);
        for (const auto& [r, coeff] : var_adj[j]) {
            dots[r] = F.add(dots[r], F.mul(coeff, delta));
            const uint8_t s = inst.row_satisfied(r, dots[r]) ? 1 : 0;
            satisfied += s - sat[r];
            sat[r] = s;
        }
        x[j] = val;
    }
};

FpVector random_assignment(Rng& rng, size_t n, uint32_t p) {
    FpVector x(n);
    for (auto& v : x) v = static_cast<uint32_t>(rng.below(p));
    return x;
}

void finalize(RunResult& out, const MaxLinsatInstance& inst, Clock::time_point t0) {
    out.phi = static_cast<double>(satisfied_count(inst, out.x)) /
              static_cast<double>(inst.m);
    out.wallclock_ms = elapsed_ms(t0);
}

// Shared Metropolis loop. Both annealers use the stream name "anneal" so a
// matched seed yields a paired comparison (same start, same proposal draws).
RunResult anneal_core(const MaxLinsatInstance& inst, const AnnealSchedule& sched,
                      uint64_t seed, bool weighted, const char* name) {
    validate_schedule(sched);
    require(inst.m >= 1 && inst.n >= 1, ErrorKind::parameter, "empty instance");
    const auto t0 = Clock::now();
    Rng rng = Rng::substream(seed, "anneal", 0);
    MoveState st(inst, random_assignment(rng, inst.n, inst.p));

    std::vector<double> weights;
    if (weighted) weights.assign(inst.m, 0.0);

    FpVector best_x = st.x;
    size_t best_s = st.satisfied;
    RunResult out;
    out.algorithm = name;
    out.seed = seed;
    out.sweeps = sched.sweeps;
    out.trajectory.reserve(sched.sweeps);

    for (size_t t = 0; t < sched.sweeps; ++t) {
        const double frac = sched.sweeps == 1
                                ? 0.0
                                : static_cast<double>(t) / static_cast<double>(sched.sweeps - 1);
        const double beta = sched.beta_start + (sched.beta_end - sched.beta_start) * frac;
        if (weighted) {
            for (size_t r = 0; r < inst.m; ++r) {
                const double d = static_cast<double>(inst.rows[r].size());
                weights[r] = d > 0 ? std::max(0.0, 1.0 - std::exp(-beta / d)) : 0.0;
            }
        }
        for (size_t j = 0; j < inst.n; ++j) {
            uint32_t val;
            if (inst.p == 2)
                val = 1u - st.x[j];
            else
                val = static_cast<uint32_t>(
                    (st.x[j] + 1 + rng.below(inst.p - 1)) % inst.p);
            const MoveState::Probe pr = st.probe(j, val, weighted ? &weights : nullptr);
            const double drop = weighted ? -pr.dw : -2.0 * static_cast<double>(pr.ds);
            const bool accept =
                drop <= 0.0 || rng.next_double() < std::exp(-beta * drop);
            if (accept) {
                st.apply(j, val);
                if (st.satisfied > best_s) {
                    best_s = st.satisfied;
                    best_x = st.x;
                }
            }
        }
        out.trajectory.push_back(static_cast<double>(best_s) /
                                 static_cast<double>(inst.m));
#ifndef NDEBUG
        {
            const size_t live = st.satisfied;
            st.recount();
            assert(st.satisfied == live);
        }
#endif
    }

    const size_t tracked = st.satisfied;
    st.recount();
    require(tracked == st.satisfied, ErrorKind::validation,
            "incremental satisfied-count drifted from a full recount");

    out.x = std::move(best_x);
    finalize(out, inst, t0);
    return out;
}

} // namespace

void validate_schedule(const AnnealSchedule& sched) {
    require(sched.sweeps >= 1, ErrorKind::parameter, "schedule needs at least one sweep");
    require(std::isfinite(sched.beta_start) && std::isfinite(sched.beta_end),
            ErrorKind::parameter, "schedule temperatures must be finite");
    require(sched.beta_start >= 0.0 && sched.beta_end >= sched.beta_start,
            ErrorKind::parameter, "schedule needs 0 <= beta_start <= beta_end");
}

RunResult simulated_annealing(const MaxLinsatInstance& inst, const AnnealSchedule& sched,
                              uint64_t seed) {
    return anneal_core(inst, sched, seed, false, "sa");
}

RunResult irregular_annealing(const MaxLinsatInstance& inst, const AnnealSchedule& sched,
                              uint64_t seed) {
    return anneal_core(inst, sched, seed, true, "ia");
}

RunResult greedy(const MaxLinsatInstance& inst, uint64_t seed) {
    require(inst.m >= 1 && inst.n >= 1, ErrorKind::parameter, "empty instance");
    const auto t0 = Clock::now();
    Rng rng = Rng::substream(seed, "greedy", 0);
    MoveState st(inst, random_assignment(rng, inst.n, inst.p));

    RunResult out;
    out.algorithm = "greedy";
    out.seed = seed;

    bool changed = true;
    size_t passes = 0;
    while (changed) {
        changed = false;
        ++passes;
        for (size_t j = 0; j < inst.n; ++j) {
            long long best_ds = 0;
            uint32_t best_val = st.x[j];
            for (uint32_t step = 1; step < inst.p; ++step) {
                const uint32_t val = static_cast<uint32_t>((st.x[j] + step) % inst.p);
                const long long ds = st.probe(j, val, nullptr).ds;
                if (ds > best_ds) {
                    best_ds = ds;
                    best_val = val;
                }
            }
            if (best_ds > 0) {
                st.apply(j, best_val);
                changed = true;
            }
        }
        out.trajectory.push_back(static_cast<double>(st.satisfied) /
                                 static_cast<double>(inst.m));
    }
    out.sweeps = passes;

    const size_t tracked = st.satisfied;
    st.recount();
    require(tracked == st.satisfied, ErrorKind::validation,
            "incremental satisfied-count drifted from a full recount");

    out.x = st.x;
    finalize(out, inst, t0);
    return out;
}

namespace {

// One truncation attempt: returns the assignment and the subsystem rank.
std::pair<FpVector, size_t> truncation_trial(const MaxLinsatInstance& inst, Rng rng) {
    const size_t m = inst.m;
    const size_t n = inst.n;

    std::vector<size_t> order(m);
    for (size_t i = 0; i < m; ++i) order[i] = i;
    rng.shuffle(order);
    if (inst.p > 2) {
        // Most restrictive first: fewer allowed values means less chance of
        // being satisfied for free, so those rows earn their forced slot.
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return inst.f_sets[a].size() < inst.f_sets[b].size();
        });
    }

    FpVector x(n, 0);
    size_t rank = 0;

    if (inst.p == 2) {
        std::vector<BitVector> basis(n);
        std::vector<uint8_t> basis_t(n, 0);
        std::vector<uint8_t> has(n, 0);
        for (size_t idx : order) {
            if (rank == n) break;
            BitVector row(n);
            for (const auto& [col, val] : inst.rows[idx])
                if (val) row.set(col, true);
            uint8_t t = inst.v[idx];
            for (;;) {
                size_t c = n;
                const auto& ws = row.words();
                for (size_t w = 0; w < ws.size(); ++w) {
                    if (ws[w]) {
                        c = (w << 6) + static_cast<size_t>(__builtin_ctzll(ws[w]));
                        break;
                    }
                }
                if (c >= n) break; // dependent row, nothing to force
                if (has[c]) {
                    row.xor_with(basis[c]);
                    t ^= basis_t[c];
                } else {
                    basis[c] = std::move(row);
                    basis_t[c] = t;
                    has[c] = 1;
                    ++rank;
                    break;
                }
            }
        }
        for (size_t j = 0; j < n; ++j) x[j] = static_cast<uint32_t>(rng.below(2));
        for (size_t c = n; c-- > 0;) {
            if (!has[c]) continue;
            x[c] = 0;
            BitVector xb(n);
            for (size_t j = c + 1; j < n; ++j)
                if (x[j]) xb.set(j, true);
            x[c] = basis_t[c] ^ (basis[c].parity_and(xb) ? 1u : 0u);
        }
    } else {
        const FieldCtx F(inst.p);
        std::vector<FpVector> basis(n);
        FpVector basis_t(n, 0);
        std::vector<uint8_t> has(n, 0);
        for (size_t idx : order) {
            if (rank == n) break;
            FpVector row(n, 0);
            for (const auto& [col, val] : inst.rows[idx]) row[col] = val;
            require(!inst.f_sets[idx].empty(), ErrorKind::parameter,
                    "constraint with empty allowed set");
            uint32_t t = inst.f_sets[idx][0]; // smallest allowed value
            for (size_t c = 0; c < n; ++c) {
                if (row[c] == 0) continue;
                if (has[c]) {
                    const uint32_t f = row[c];
                    for (size_t j = c; j < n; ++j)
                        row[j] = F.sub(row[j], F.mul(f, basis[c][j]));
                    t = F.sub(t, F.mul(f, basis_t[c]));
                } else {
                    const uint32_t inv = F.inv(row[c]);
                    for (size_t j = c; j < n; ++j) row[j] = F.mul(row[j], inv);
                    t = F.mul(t, inv);
                    basis[c] = std::move(row);
                    basis_t[c] = t;
                    has[c] = 1;
                    ++rank;
                    break;
                }
            }
        }
        for (size_t j = 0; j < n; ++j) x[j] = static_cast<uint32_t>(rng.below(inst.p));
        for (size_t c = n; c-- > 0;) {
            if (!has[c]) continue;
            uint32_t acc = basis_t[c];
            for (size_t j = c + 1; j < n; ++j)
                acc = F.sub(acc, F.mul(basis[c][j], x[j]));
            x[c] = acc;
        }
    }

    return {std::move(x), rank};
}

} // namespace

RunResult truncation(const MaxLinsatInstance& inst, size_t trials, uint64_t seed) {
    require(trials >= 1, ErrorKind::parameter, "need at least one trial");
    require(inst.m >= 1 && inst.n >= 1, ErrorKind::parameter, "empty instance");
    const auto t0 = Clock::now();

    std::vector<FpVector> xs(trials);
    std::vector<size_t> sats(trials, 0);
#pragma omp parallel for schedule(dynamic)
    for (int64_t trial = 0; trial < static_cast<int64_t>(trials); ++trial) {
        auto [x, rank] = truncation_trial(
            inst, Rng::substream(seed, "truncation", static_cast<uint64_t>(trial)));
        const size_t s = satisfied_count(inst, x);
        require(s >= rank, ErrorKind::validation,
                "truncation produced fewer satisfied constraints than the solved rank");
        xs[trial] = std::move(x);
        sats[trial] = s;
    }

    RunResult out;
    out.algorithm = "truncation";
    out.seed = seed;
    out.sweeps = trials;
    size_t best = 0;
    for (size_t trial = 0; trial < trials; ++trial) {
        if (sats[trial] > sats[best]) best = trial;
        out.trajectory.push_back(static_cast<double>(sats[best]) /
                                 static_cast<double>(inst.m));
    }
    out.x = xs[best];
    finalize(out, inst, t0);
    return out;
}

RunResult advrand(const MaxLinsatInstance& inst, double flip_prob,
                  const std::vector<double>& r_grid, uint64_t seed) {
    require(inst.p == 2, ErrorKind::parameter, "fix-and-propagate requires modulus 2");
    require(inst.m >= 1 && inst.n >= 1, ErrorKind::parameter, "empty instance");
    require(flip_prob >= 0.0 && flip_prob <= 1.0, ErrorKind::parameter,
            "flip probability must lie in [0, 1]");
    const auto t0 = Clock::now();
    const size_t n = inst.n;

    std::vector<size_t> fix_counts;
    if (r_grid.empty()) {
        fix_counts.resize(n + 1);
        for (size_t k = 0; k <= n; ++k) fix_counts[k] = k;
    } else {
        for (double r : r_grid) {
            require(r >= 0.0 && r <= 1.0, ErrorKind::parameter,
                    "grid fractions must lie in [0, 1]");
            fix_counts.push_back(std::min<size_t>(
                n, static_cast<size_t>(std::llround(r * static_cast<double>(n)))));
        }
    }

    const auto var_adj = variable_adjacency(inst);

    RunResult out;
    out.algorithm = "advrand";
    out.seed = seed;
    out.sweeps = fix_counts.size();
    size_t best_s = 0;
    bool have_best = false;

    for (size_t g = 0; g < fix_counts.size(); ++g) {
        Rng rng = Rng::substream(seed, "advrand", g);
        FpVector x(n, 0);
        std::vector<uint8_t> assigned(n, 0);
        for (size_t j : rng.sample_without_replacement(n, fix_counts[g])) {
            x[j] = static_cast<uint32_t>(rng.below(2));
            assigned[j] = 1;
        }

        std::vector<uint32_t> unfixed(inst.m, 0);
        std::vector<uint8_t> partial(inst.m, 0);
        for (size_t i = 0; i < inst.m; ++i) {
            for (const auto& [col, val] : inst.rows[i]) {
                if (assigned[col])
                    partial[i] ^= static_cast<uint8_t>(val & x[col]);
                else
                    ++unfixed[i];
            }
        }
        std::vector<uint32_t> queue;
        for (size_t i = 0; i < inst.m; ++i)
            if (unfixed[i] == 1) queue.push_back(static_cast<uint32_t>(i));
        for (size_t head = 0; head < queue.size(); ++head) {
            const uint32_t i = queue[head];
            if (unfixed[i] != 1) continue; // became determined meanwhile
            uint32_t j = UINT32_MAX;
            for (const auto& [col, val] : inst.rows[i]) {
                if (!assigned[col]) {
                    j = col;
                    break;
                }
            }
            x[j] = inst.v[i] ^ partial[i];
            assigned[j] = 1;
            for (const auto& [r, coeff] : var_adj[j]) {
                partial[r] ^= static_cast<uint8_t>(coeff & x[j]);
                if (--unfixed[r] == 1) queue.push_back(r);
            }
        }

        for (size_t j = 0; j < n; ++j)
            if (!assigned[j]) x[j] = static_cast<uint32_t>(rng.below(2));
        if (flip_prob > 0.0)
            for (size_t j = 0; j < n; ++j)
                if (rng.bernoulli(flip_prob)) x[j] ^= 1u;

        const size_t s = satisfied_count(inst, x);
        if (!have_best || s > best_s) {
            best_s = s;
            out.x = std::move(x);
            have_best = true;
        }
        out.trajectory.push_back(static_cast<double>(best_s) /
                                 static_cast<double>(inst.m));
    }

    finalize(out, inst, t0);
    return out;
}

double local_search_ceiling(double total_moves, double degree) {
    require(std::isfinite(total_moves) && total_moves >= 1.0, ErrorKind::parameter,
            "total_moves must be >= 1");
    require(std::isfinite(degree) && degree >= 1.0, ErrorKind::parameter,
            "degree must be >= 1");
    return 0.5 + std::sqrt((std::log(total_moves) + std::log(2.0)) / (2.0 * degree));
}

} // namespace dqi
